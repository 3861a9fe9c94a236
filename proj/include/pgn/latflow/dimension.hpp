#pragma once

#include "pgn/latflow/shape.hpp"

#include <vector>

namespace pgn {

struct DimensionReport {
  Rational delta;
  Rational dim_M;       // sum m_i n_i
  Rational dim_X;       // sum ((m_i + n_i)^2 - 1)
  Rational min_b;
  Rational dim_D;       // = dim D^e
  Rational dim_D_delta; // = dim D^e_delta
  Rational dim_X_D;     // homogeneous-space analogue of dim_D
  Rational dim_X_D_delta;
  std::vector<Rational> sing;          // per factor m_i n_i - b_i
  std::vector<Rational> sing_y;        // per factor dim Y_{m+n} - b_i
  std::vector<Rational> sing_y_delta;  // per factor dim Y_{m+n} - delta b_i
};

// delta in (0,1]
DimensionReport dimension_report(const SystemShape& shape, const Rational& delta);

}  // namespace pgn
