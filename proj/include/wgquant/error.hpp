#pragma once

#include <stdexcept>
#include <string>

namespace wgquant {

enum class ErrorCode {
  InvalidGeometry,
  InvalidMode,
  InvalidFrame,
  OutOfCrossSection,
  UndefinedElectrode,
  StencilOutOfBounds,
  GridTooCoarse,
  DegenerateWavevector,
  DegenerateScale,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace wgquant
