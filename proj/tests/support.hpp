#pragma once

#include "doctest.h"
#include "random_modes.hpp"
#include "wgquant/error.hpp"

namespace wgtest {

using namespace wgquant;

template <typename F>
ErrorCode code_of(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidMode;
}

}  // namespace wgtest
