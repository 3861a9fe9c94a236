#pragma once

#include "pgn/latflow/lattice.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace pgn {

struct QWitness {
  int factor = 0;  // 0-based
  std::vector<std::int64_t> p, q;
  double error = 0;   // ||theta q - p||
  std::int64_t qnorm = 0;
};

// Searches all q with 0 < ||q||^n <= Q (p = nearest integers to theta q) for
// ||theta q - p||^m < eps / Q. Returns the best witness: smallest error, then
// smallest ||q||.
std::optional<QWitness> scan_Q(const Matrix& theta, double eps, double Q,
                               double budget = kDefaultBudget);

struct OccupationGrid {
  double T = 0;
  double step = 0.01;
  // left Riemann points t_k = k step, k < round(T / step)
  std::vector<double> points() const;
};

// 1 where e^{t} lies in the union over i != exclude of Q_eps(theta_i)^{1/a_i}
std::vector<char> occupation_indicators(const MatrixTuple& theta, const SystemShape& shape,
                                        double eps, const OccupationGrid& grid,
                                        std::optional<int> exclude = std::nullopt,
                                        double budget = kDefaultBudget);
std::vector<char> occupation_indicators_serial(const MatrixTuple& theta, const SystemShape& shape,
                                               double eps, const OccupationGrid& grid,
                                               std::optional<int> exclude = std::nullopt,
                                               double budget = kDefaultBudget);

double occupation_joint(const MatrixTuple& theta, const SystemShape& shape, double eps,
                        const OccupationGrid& grid, std::optional<int> exclude = std::nullopt,
                        double budget = kDefaultBudget);
double occupation_joint_serial(const MatrixTuple& theta, const SystemShape& shape, double eps,
                               const OccupationGrid& grid,
                               std::optional<int> exclude = std::nullopt,
                               double budget = kDefaultBudget);

// fraction of grid times with lambda_1(g_t u_theta Z^d) < r
double cusp_occupation(const Matrix& theta, double r, const OccupationGrid& grid,
                       double budget = kDefaultBudget);
double cusp_occupation_serial(const Matrix& theta, double r, const OccupationGrid& grid,
                              double budget = kDefaultBudget);

double fraction(const std::vector<char>& ind);

}  // namespace pgn
