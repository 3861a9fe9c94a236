#pragma once

#include "pgn/latflow/lattice.hpp"

#include <ostream>
#include <vector>

namespace pgn {

struct MinimaTrajectory {
  std::vector<double> grid;
  std::vector<std::vector<double>> rows;  // rows[k] = (h_1, ..., h_d) at grid[k]
};

// OpenMP over grid points; BudgetExceeded reports the earliest failing time.
MinimaTrajectory h_trajectory(const Matrix& theta, const std::vector<double>& grid,
                              double budget = kDefaultBudget);
MinimaTrajectory h_trajectory_serial(const Matrix& theta, const std::vector<double>& grid,
                                     double budget = kDefaultBudget);

// start, start+step, ... up to stop (inclusive within half a step)
std::vector<double> make_grid(double start, double stop, double step);

// columns t,h_1..h_d
void write_trajectory_csv(std::ostream& os, const MinimaTrajectory& traj);

}  // namespace pgn
