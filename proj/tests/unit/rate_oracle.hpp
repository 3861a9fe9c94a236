#pragma once
// Window average of the contraction rate recomputed from template values:
// coordinates tied at the segment midpoint with equal slopes form a class,
// and each class gets (k1, k2) from its slope sum.

#include "pgn/templates/template.hpp"

#include <stdexcept>

namespace oracle {

inline int segment_rate(const pgn::Template& L, std::size_t seg) {
  using pgn::Rational;
  const int m = L.m(), n = L.n(), d = m + n;
  Rational mid = (L.breakpoints()[seg] + L.breakpoints()[seg + 1]) / 2;
  auto vals = L.values(mid);
  const auto& sl = L.slopes(seg);
  int rate = 0, k1_run = 0;
  int i = 0;
  while (i < d) {
    int j = i;
    Rational sum = sl[i];
    while (j + 1 < d && vals[j + 1] == vals[i] && sl[j + 1] == sl[i]) {
      ++j;
      sum += sl[j];
    }
    int size = j - i + 1;
    // sum = k1/m - k2/n with k1 + k2 = size
    Rational k1 = (sum + Rational(size, n)) * m * n / (m + n);
    if (k1.get_den() != 1) throw std::logic_error("non-integer class");
    int a = static_cast<int>(k1.get_num().get_si());
    int b = size - a;
    k1_run += a;
    rate += b * k1_run;
    i = j + 1;
  }
  return rate;
}

inline pgn::Rational window_average(const pgn::Template& L, const pgn::Rational& A,
                                   const pgn::Rational& B) {
  pgn::Rational acc = 0;
  const auto& bp = L.breakpoints();
  for (std::size_t s = 0; s < L.segments(); ++s) {
    pgn::Rational lo = std::max(A, bp[s]), hi = std::min(B, bp[s + 1]);
    if (hi > lo) acc += (hi - lo) * segment_rate(L, s);
  }
  return acc / (B - A);
}

}  // namespace oracle
