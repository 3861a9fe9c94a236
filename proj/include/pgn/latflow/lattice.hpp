#pragma once

#include "pgn/latflow/shape.hpp"

#include <cstdint>
#include <vector>

namespace pgn {

inline constexpr double kDefaultBudget = 1e8;

// diag(e^{t/m} I_m, e^{-t/n} I_n)
Matrix flow_matrix(int m, int n, double t);

// [[I_m, theta], [0, I_n]]
Matrix embed_theta(const Matrix& theta);

// Columns are diag(scale) * core. Keeping the diagonal flow apart from the
// unipotent part lets lattice vectors be evaluated without the cancellation
// that e^{t} * (p + theta q) suffers when formed from a pre-multiplied basis.
class LatticeBasis {
 public:
  explicit LatticeBasis(const Matrix& columns);
  LatticeBasis(const Vector& scale, const Matrix& core);

  int dim() const { return static_cast<int>(core_.rows()); }
  Matrix columns() const { return scale_.asDiagonal() * core_; }
  const Vector& scale() const { return scale_; }
  const Matrix& core() const { return core_; }

  Vector vector(const std::vector<std::int64_t>& coeffs) const;
  double sup_norm(const std::int64_t* coeffs) const;

 private:
  Vector scale_;
  Matrix core_;
};

// g_t u_theta Z^{m+n}
LatticeBasis flowed_basis(const Matrix& theta, double t);

struct MinimaResult {
  std::vector<double> lambda;                      // lambda_1 <= ... <= lambda_d
  std::vector<std::vector<std::int64_t>> coeffs;   // integer coordinates attaining each
};

MinimaResult successive_minima(const LatticeBasis& basis, double budget = kDefaultBudget);

// lambda_1 only
double first_minimum(const LatticeBasis& basis, double budget = kDefaultBudget);

// true iff some nonzero lattice vector has sup norm < r
bool has_vector_below(const LatticeBasis& basis, double r, double budget = kDefaultBudget);

}  // namespace pgn
