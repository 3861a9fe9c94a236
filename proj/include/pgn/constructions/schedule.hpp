#pragma once

#include "pgn/latflow/shape.hpp"

#include <vector>

namespace pgn {

enum class Mode { I, II };

// T_0 = 1, T_{k+1} = T_k + sqrt(T_k), l_k = floor(T_k^{1/3}),
// gamma_k = sqrt(T_k) / l_k, t_{k,l} = T_k + l gamma_k.
class Schedule {
 public:
  Schedule(const SystemShape& shape, int kmax, Mode mode, std::vector<Rational> deltas = {});

  const SystemShape& shape() const { return shape_; }
  Mode mode() const { return mode_; }
  int kmax() const { return kmax_; }
  int k0() const { return k0_; }
  const std::vector<Rational>& deltas() const { return deltas_; }

  double T(int k) const { return T_.at(k); }
  long l(int k) const;
  double gamma(int k) const;
  double log_gamma(int k) const;
  // t_{k,l}; t_{k,l_k} is T_{k+1} exactly
  double t(int k, long l) const;
  // q_k^j for j = 0..s (mode II)
  std::vector<long> q(int k) const;

  bool valid(int k) const;
  // first k with T_k >= x
  int first_k_at(double x) const;

 private:
  SystemShape shape_;
  int kmax_;
  Mode mode_;
  std::vector<Rational> deltas_;
  std::vector<double> T_;
  int k0_ = -1;
};

}  // namespace pgn
