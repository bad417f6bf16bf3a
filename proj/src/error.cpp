#include "wgquant/error.hpp"

namespace wgquant {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidGeometry: return "InvalidGeometry";
    case ErrorCode::InvalidMode: return "InvalidMode";
    case ErrorCode::InvalidFrame: return "InvalidFrame";
    case ErrorCode::OutOfCrossSection: return "OutOfCrossSection";
    case ErrorCode::UndefinedElectrode: return "UndefinedElectrode";
    case ErrorCode::StencilOutOfBounds: return "StencilOutOfBounds";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::DegenerateWavevector: return "DegenerateWavevector";
    case ErrorCode::DegenerateScale: return "DegenerateScale";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace wgquant
