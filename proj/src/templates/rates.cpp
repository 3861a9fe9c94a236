#include "pgn/templates/rates.hpp"

#include "pgn/core/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace pgn {

SlopeClassDecomposition class_decomposition(const Template& L, std::size_t seg) {
  if (seg >= L.segments()) throw std::out_of_range("segment index");
  const int m = L.m(), n = L.n(), d = L.dim();
  const auto &a = L.knot(seg), &b = L.knot(seg + 1);
  const auto& s = L.slopes(seg);
  SlopeClassDecomposition out;
  int first = 0;
  for (int j = 0; j < d; ++j) {
    bool tied_up = j + 1 < d && a[j] == a[j + 1] && b[j] == b[j + 1];
    if (tied_up) continue;
    SlopeClass c;
    c.first = first;
    c.last = j;
    c.slope_sum = 0;
    for (int i = first; i <= j; ++i) c.slope_sum += s[i];
    const int size = j - first + 1;
    // k1/m - k2/n = sigma with k1 + k2 = size  =>  k1 = (sigma + size/n) mn/(m+n)
    Rational k1 = (c.slope_sum + frac(size, n)) * frac(m * n, m + n);
    if (k1.get_den() != 1 || k1 < 0 || k1 > size)
      throw NonIntegerClassSlope("segment " + std::to_string(seg) + ", coordinates " +
                                 std::to_string(first + 1) + ".." + std::to_string(j + 1) +
                                 ": slope sum " + to_string(c.slope_sum) +
                                 " gives k1 = " + to_string(k1));
    c.k1 = static_cast<int>(k1.get_num().get_si());
    c.k2 = size - c.k1;
    out.push_back(c);
    first = j + 1;
  }
  int sk1 = 0, sk2 = 0;
  for (const auto& c : out) {
    sk1 += c.k1;
    sk2 += c.k2;
  }
  if (sk1 != m || sk2 != n)
    throw NonIntegerClassSlope("segment " + std::to_string(seg) + ": class sizes sum to (" +
                               std::to_string(sk1) + "," + std::to_string(sk2) + ")");
  return out;
}

int class_rate(const SlopeClassDecomposition& classes) {
  int acc = 0, k1_below = 0;
  for (const auto& c : classes) {
    k1_below += c.k1;
    acc += c.k2 * k1_below;
  }
  return acc;
}

RateProfile contraction_rate(const Template& L) {
  RateProfile p;
  const std::size_t N = L.segments();
  p.delta.resize(N);
  p.lengths.resize(N);
  p.cumulative.resize(N + 1);
  p.cumulative[0] = 0;
  for (std::size_t k = 0; k < N; ++k) {
    p.delta[k] = class_rate(class_decomposition(L, k));
    p.lengths[k] = L.breakpoints()[k + 1] - L.breakpoints()[k];
    p.cumulative[k + 1] = p.cumulative[k] + p.delta[k] * p.lengths[k];
  }
  return p;
}

namespace {

// integral of delta from the start to t
Rational integral_to(const Template& L, const RateProfile& p, const Rational& t) {
  auto k = L.segment_of(t);
  return p.cumulative[k] + p.delta[k] * (t - L.breakpoints()[k]);
}

}  // namespace

Rational average_contraction(const Template& L, const RateProfile& prof, const Rational& T1,
                             const Rational& T2) {
  if (!(T1 < T2)) throw std::invalid_argument("window must have positive length");
  if (T1 < L.start() || T2 > L.end()) throw std::invalid_argument("window outside the domain");
  return (integral_to(L, prof, T2) - integral_to(L, prof, T1)) / (T2 - T1);
}

Rational average_contraction(const Template& L, const Rational& T1, const Rational& T2) {
  return average_contraction(L, contraction_rate(L), T1, T2);
}

LowerAverage lower_average_estimate(const Template& L, const Rational& T, const Rational& phi) {
  if (!(phi > 0 && phi < 1)) throw std::invalid_argument("tail fraction must lie in (0,1)");
  if (T > L.end() || !(T > L.start())) throw std::invalid_argument("horizon outside the domain");
  const Rational lo = std::max(Rational(phi * T), L.start());
  auto prof = contraction_rate(L);
  LowerAverage out;
  if (lo > L.start()) out.grid.push_back(lo);
  for (const auto& b : L.breakpoints())
    if (b > lo && b < T) out.grid.push_back(b);
  out.grid.push_back(T);
  bool first = true;
  for (const auto& t : out.grid) {
    if (t == L.start()) continue;
    Rational v = average_contraction(L, prof, L.start(), t);
    if (first || v < out.value) {
      out.value = v;
      out.argmin = t;
      first = false;
    }
  }
  return out;
}

}  // namespace pgn
