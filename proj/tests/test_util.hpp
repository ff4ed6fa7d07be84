#pragma once

#include <optional>

#include "doctest.h"
#include "layerpot/error.hpp"

/// Kind of the layerpot::Error raised by f, or nullopt if none was thrown.
template <typename F>
std::optional<layerpot::ErrorKind> error_kind(F&& f) {
  try {
    f();
  } catch (const layerpot::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

#define CHECK_ERROR_KIND(expr, kind) \
  CHECK(error_kind([&] { (void)(expr); }) == std::optional<layerpot::ErrorKind>(kind))
