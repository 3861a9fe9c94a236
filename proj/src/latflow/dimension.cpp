#include "pgn/latflow/dimension.hpp"

#include <stdexcept>

namespace pgn {

DimensionReport dimension_report(const SystemShape& shape, const Rational& delta) {
  if (!(delta > 0 && delta <= 1)) throw std::invalid_argument("delta must lie in (0,1]");
  DimensionReport r;
  r.delta = delta;
  r.dim_M = 0;
  r.dim_X = 0;
  for (int i = 0; i < shape.s(); ++i) {
    const auto& p = shape.pair(i);
    const int d = p.m + p.n;
    r.dim_M += p.m * p.n;
    r.dim_X += d * d - 1;
    Rational b = shape.b(i);
    // the rationals (m = n = 1) are the only 1x1 singular numbers
    if (p.m == 1 && p.n == 1)
      r.sing.emplace_back(0);
    else
      r.sing.emplace_back(Rational(p.m * p.n) - b);
    r.sing_y.emplace_back(Rational(d * d - 1) - b);
    r.sing_y_delta.emplace_back(Rational(d * d - 1) - delta * b);
  }
  r.min_b = shape.min_b();
  r.dim_D = r.dim_M - r.min_b;
  r.dim_D_delta = r.dim_M - delta * r.min_b;
  r.dim_X_D = r.dim_X - r.min_b;
  r.dim_X_D_delta = r.dim_X - delta * r.min_b;
  return r;
}

}  // namespace pgn
