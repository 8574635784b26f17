#pragma once

#include <doctest.h>

#include <functional>

#include "confocal/error.hpp"

namespace confocal::testutil {

/// Asserts that fn throws Error with exactly the given code.
inline void expect_errc(Errc code, const std::function<void()>& fn) {
  bool threw = false;
  try {
    fn();
  } catch (const Error& e) {
    threw = true;
    CHECK(e.code() == code);
  }
  CHECK_MESSAGE(threw, "expected Error(" << to_string(code) << ")");
}

}  // namespace confocal::testutil
