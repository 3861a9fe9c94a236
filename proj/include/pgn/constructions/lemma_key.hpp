#pragma once

#include "pgn/core/rational.hpp"

#include <functional>
#include <vector>

namespace pgn {

struct BoundedFunction {
  std::function<Rational(const Rational&)> eval;  // nonnegative
  Rational sup;                                  // declared upper bound
};

// Right-continuous step function: values[0] on (-inf, cuts[0]),
// values[k] on [cuts[k-1], cuts[k]), values.back() from cuts.back() on.
struct StepFunction {
  std::vector<Rational> cuts;
  std::vector<Rational> values;
  Rational operator()(const Rational& t) const;
  Rational max() const;
};

BoundedFunction bounded(StepFunction f, Rational sup);
BoundedFunction bounded(StepFunction f);  // sup = max value

// Finds t >= t0 with sum_i f_i(t) <= eps + sum_i f_i(sigma_i t), where
// sigma_1 = 1 >= sigma_2 >= ... >= sigma_s > 0. Throws SupViolated when an
// evaluation exceeds its declared sup.
Rational lemma_key_solve(const std::vector<BoundedFunction>& f, const std::vector<Rational>& sigma,
                         const Rational& eps, const Rational& t0);

// eps + sum f_i(sigma_i t) - sum f_i(t)
Rational lemma_key_slack(const std::vector<BoundedFunction>& f, const std::vector<Rational>& sigma,
                         const Rational& eps, const Rational& t);

}  // namespace pgn
