#include "pgn/latflow/trajectory.hpp"

#include "pgn/core/errors.hpp"
#include "pgn/core/format.hpp"

#include <cmath>
#include <exception>
#include <stdexcept>

namespace pgn {

namespace {

void check_grid(const std::vector<double>& grid) {
  for (std::size_t k = 1; k < grid.size(); ++k)
    if (!(grid[k] > grid[k - 1])) throw std::invalid_argument("grid must be increasing");
}

std::vector<double> row_at(const Matrix& theta, double t, double budget) {
  try {
    auto res = successive_minima(flowed_basis(theta, t), budget);
    std::vector<double> h(res.lambda.size());
    for (std::size_t k = 0; k < h.size(); ++k) h[k] = std::log(res.lambda[k]);
    return h;
  } catch (const BudgetExceeded& e) {
    throw BudgetExceeded(std::string(e.what()) + " at t = " + format_double(t), t);
  }
}

}  // namespace

MinimaTrajectory h_trajectory_serial(const Matrix& theta, const std::vector<double>& grid,
                                     double budget) {
  check_grid(grid);
  MinimaTrajectory out{grid, {}};
  out.rows.reserve(grid.size());
  for (double t : grid) out.rows.push_back(row_at(theta, t, budget));
  return out;
}

MinimaTrajectory h_trajectory(const Matrix& theta, const std::vector<double>& grid,
                              double budget) {
  check_grid(grid);
  const long N = static_cast<long>(grid.size());
  MinimaTrajectory out{grid, std::vector<std::vector<double>>(grid.size())};
  std::vector<std::exception_ptr> errs(grid.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long k = 0; k < N; ++k) {
    try {
      out.rows[k] = row_at(theta, grid[k], budget);
    } catch (...) {
      errs[k] = std::current_exception();
    }
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<double> make_grid(double start, double stop, double step) {
  if (!(step > 0)) throw std::invalid_argument("grid step must be positive");
  if (stop < start) throw std::invalid_argument("grid stop before start");
  auto n = static_cast<long>(std::floor((stop - start) / step + 0.5));
  std::vector<double> g;
  g.reserve(n + 1);
  for (long k = 0; k <= n; ++k) g.push_back(start + static_cast<double>(k) * step);
  return g;
}

void write_trajectory_csv(std::ostream& os, const MinimaTrajectory& traj) {
  std::size_t d = traj.rows.empty() ? 0 : traj.rows.front().size();
  os << "t";
  for (std::size_t k = 1; k <= d; ++k) os << ",h_" << k;
  os << "\n";
  for (std::size_t i = 0; i < traj.grid.size(); ++i) {
    os << format_double(traj.grid[i]);
    for (double h : traj.rows[i]) os << "," << format_double(h);
    os << "\n";
  }
}

}  // namespace pgn
