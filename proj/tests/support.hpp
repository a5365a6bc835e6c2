#pragma once

#include <functional>
#include <string>

#include <gtest/gtest.h>

#include "picard/errors.hpp"

#include "picard/plane_lemma.hpp"
#include "picard/surface.hpp"

#ifndef PICARD_FIXTURE_DIR
#define PICARD_FIXTURE_DIR "fixtures"
#endif

namespace picard::testing {

inline SurfaceModel surface(const std::string& name) {
  return load_surface_file(std::string(PICARD_FIXTURE_DIR) + "/surfaces/" + name + ".json");
}

inline PlaneCurve curve(const std::string& name) {
  return load_curve_file(std::string(PICARD_FIXTURE_DIR) + "/curves/" + name + ".json");
}

inline Polynomial poly3(const std::string& text, const Field& field = Field::rationals()) {
  return parse_polynomial(text, field, 3);
}

inline Polynomial poly4(const std::string& text, const Field& field = Field::rationals()) {
  return parse_polynomial(text, field, 4);
}

inline ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::AssertionFailure;
}

}  // namespace picard::testing
