#pragma once

#include "pgn/templates/template.hpp"

#include <vector>

namespace pgn {

struct SlopeClass {
  int first = 0, last = 0;  // 0-based coordinate range, inclusive
  Rational slope_sum;
  int k1 = 0, k2 = 0;
};

using SlopeClassDecomposition = std::vector<SlopeClass>;

// Coordinates whose values coincide over the whole segment form one class.
SlopeClassDecomposition class_decomposition(const Template& L, std::size_t segment);

// sum_q k2(I_q) * sum_{q' <= q} k1(I_q')
int class_rate(const SlopeClassDecomposition& classes);

struct RateProfile {
  std::vector<int> delta;  // per segment, in [0, mn]
  RVec lengths;            // per segment
  RVec cumulative;         // integral of delta from the start to breakpoint k
};

RateProfile contraction_rate(const Template& L);

// exact average of delta over [T1, T2] inside the domain
Rational average_contraction(const Template& L, const Rational& T1, const Rational& T2);
Rational average_contraction(const Template& L, const RateProfile& prof, const Rational& T1,
                             const Rational& T2);

struct LowerAverage {
  Rational value;  // min over the grid of Delta(L, [t_0, T'])
  Rational argmin;
  RVec grid;
};

// finite-horizon proxy for liminf Delta(L, T): minimum over breakpoint-aligned
// T' in [phi T, T]
LowerAverage lower_average_estimate(const Template& L, const Rational& T, const Rational& phi);

}  // namespace pgn
