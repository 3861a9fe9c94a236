#pragma once

#include "pgn/core/rational.hpp"

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace pgn {

struct FactorPair {
  int m = 1;
  int n = 1;
};

// s factors with sizes (m_i, n_i) and time weights a_i.
class SystemShape {
 public:
  SystemShape() = default;
  SystemShape(std::vector<FactorPair> pairs, std::vector<Rational> weights);
  // all weights 1
  explicit SystemShape(std::vector<FactorPair> pairs);

  int s() const { return static_cast<int>(pairs_.size()); }
  const FactorPair& pair(int i) const { return pairs_.at(i); }
  const std::vector<FactorPair>& pairs() const { return pairs_; }
  const Rational& weight(int i) const { return weights_.at(i); }
  const std::vector<Rational>& weights() const { return weights_; }

  // b_i = m_i n_i / (m_i + n_i)
  Rational b(int i) const;
  Rational min_b() const;

 private:
  std::vector<FactorPair> pairs_;
  std::vector<Rational> weights_;
};

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// one real m_i x n_i matrix per factor
using MatrixTuple = std::vector<Matrix>;

void check_tuple(const MatrixTuple& theta, const SystemShape& shape);

}  // namespace pgn
