#pragma once

#include "pgn/templates/template.hpp"

#include <utility>
#include <vector>

namespace pgn {

// Continuous piecewise-linear scalar function through (t_k, v_k).
struct PiecewiseLinear {
  RVec t, v;

  Rational operator()(const Rational& x) const;
  // exact maximum and the first time attaining it
  std::pair<Rational, Rational> max() const;
  // Lebesgue measure of {x : lo <= f(x) <= hi}
  Rational measure_between(const Rational& lo, const Rational& hi) const;
};

struct WeightedTemplate {
  const Template* L;
  Rational a;
};

// min_i L^i_coord(a_i t) on [A, B]; coord is 0-based
PiecewiseLinear min_envelope(const std::vector<WeightedTemplate>& parts, int coord,
                             const Rational& A, const Rational& B);

}  // namespace pgn
