#include "pgn/constructions/lemma_key.hpp"

#include "pgn/core/errors.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

namespace pgn {

Rational StepFunction::operator()(const Rational& t) const {
  auto it = std::upper_bound(cuts.begin(), cuts.end(), t);
  return values[static_cast<std::size_t>(it - cuts.begin())];
}

Rational StepFunction::max() const {
  return *std::max_element(values.begin(), values.end());
}

namespace {

void check_step(const StepFunction& f) {
  if (f.values.size() != f.cuts.size() + 1)
    throw std::invalid_argument("step function needs one more value than cuts");
  for (std::size_t k = 1; k < f.cuts.size(); ++k)
    if (!(f.cuts[k] > f.cuts[k - 1])) throw std::invalid_argument("cuts must increase");
  for (const auto& v : f.values)
    if (v < 0) throw std::invalid_argument("step function values must be nonnegative");
}

// evaluation guarded by the declared sup
Rational checked(const BoundedFunction& f, const Rational& t) {
  Rational v = f.eval(t);
  if (v > f.sup)
    throw SupViolated("value " + to_string(v) + " at t = " + to_string(t) +
                      " exceeds declared sup " + to_string(f.sup));
  return v;
}

}  // namespace

BoundedFunction bounded(StepFunction f, Rational sup) {
  check_step(f);
  auto p = std::make_shared<StepFunction>(std::move(f));
  return {[p](const Rational& t) { return (*p)(t); }, std::move(sup)};
}

BoundedFunction bounded(StepFunction f) {
  check_step(f);
  Rational sup = f.max();
  return bounded(std::move(f), std::move(sup));
}

Rational lemma_key_slack(const std::vector<BoundedFunction>& f, const std::vector<Rational>& sigma,
                         const Rational& eps, const Rational& t) {
  Rational acc = eps;
  for (std::size_t i = 0; i < f.size(); ++i) acc += checked(f[i], sigma[i] * t) - checked(f[i], t);
  return acc;
}

Rational lemma_key_solve(const std::vector<BoundedFunction>& f, const std::vector<Rational>& sigma,
                         const Rational& eps, const Rational& t0) {
  const std::size_t s = f.size();
  if (s == 0 || sigma.size() != s) throw std::invalid_argument("need one sigma per function");
  if (sigma[0] != 1) throw std::invalid_argument("sigma_1 must be 1");
  for (std::size_t i = 1; i < s; ++i)
    if (!(sigma[i] > 0 && sigma[i] <= sigma[i - 1]))
      throw std::invalid_argument("sigma must be nonincreasing and positive");
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  if (!(t0 > 0)) throw std::invalid_argument("t0 must be positive");
  for (const auto& fi : f)
    if (fi.sup < 0) throw std::invalid_argument("declared sups must be nonnegative");
  if (s == 1) return t0;

  const Rational& ss = sigma[s - 1];
  const long Q = ceil_rational(f[s - 1].sup / eps).get_num().get_si();
  const Rational inv = 1 / ss;

  // g_i(t) = sum_{q=0}^{Q} f_i(sigma_s^{-q} t), i < s
  std::vector<BoundedFunction> g;
  g.reserve(s - 1);
  for (std::size_t i = 0; i + 1 < s; ++i) {
    const BoundedFunction fi = f[i];
    g.push_back({[fi, inv, Q](const Rational& t) {
                   Rational acc = 0, x = t;
                   for (long q = 0; q <= Q; ++q) {
                     acc += checked(fi, x);
                     x *= inv;
                   }
                   return acc;
                 },
                 Rational((Q + 1) * fi.sup)});
  }
  std::vector<Rational> sg(sigma.begin(), sigma.end() - 1);
  const Rational t1 = lemma_key_solve(g, sg, eps, t0);

  Rational x = t1;
  for (long q = 0; q <= Q; ++q) {
    if (lemma_key_slack(f, sigma, eps, x) >= 0) return x;
    x *= inv;
  }
  throw SupViolated("no q in [0, Q] qualified; some declared sup must be wrong");
}

}  // namespace pgn
