#pragma once

// Prescribed mean curvature H as a small arithmetic expression over the
// ambient coordinates. Supported: numbers, x, y, z, r2 (= x^2 + y^2),
// + - * / ^, exp, sin, cos, sqrt. Expressions written in r2 and z only are
// tagged rotationally symmetric; pure numbers are tagged constant.

#include <memory>
#include <string>

#include "conemc/lorentz.hpp"

namespace conemc {

class PrescribedCurvature {
  public:
    enum class Kind { constant, rotationally_symmetric, general };

    PrescribedCurvature();  // H = 1

    static PrescribedCurvature constant(double value);
    // Parses `text`; throws std::invalid_argument with a position on bad input.
    static PrescribedCurvature expression(const std::string& text);

    double operator()(const LVec3& p) const;
    Kind kind() const { return kind_; }
    bool is_rotationally_symmetric() const { return kind_ != Kind::general; }
    const std::string& text() const { return text_; }

    struct Node;  // expression tree node, defined in curvature.cpp

  private:
    std::shared_ptr<const Node> root_;
    Kind kind_ = Kind::constant;
    std::string text_;
};

}  // namespace conemc
