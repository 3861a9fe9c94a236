#include "pgn/latflow/shape.hpp"

#include <stdexcept>
#include <string>

namespace pgn {

SystemShape::SystemShape(std::vector<FactorPair> pairs, std::vector<Rational> weights)
    : pairs_(std::move(pairs)), weights_(std::move(weights)) {
  if (pairs_.empty()) throw std::invalid_argument("shape needs at least one factor");
  if (weights_.size() != pairs_.size())
    throw std::invalid_argument("shape has " + std::to_string(pairs_.size()) + " pairs but " +
                                std::to_string(weights_.size()) + " weights");
  for (const auto& p : pairs_)
    if (p.m < 1 || p.n < 1) throw std::invalid_argument("factor sizes must be positive");
  for (const auto& a : weights_)
    if (a <= 0) throw std::invalid_argument("weights must be positive");
}

SystemShape::SystemShape(std::vector<FactorPair> pairs)
    : SystemShape(pairs, std::vector<Rational>(pairs.size(), Rational(1))) {}

Rational SystemShape::b(int i) const {
  const auto& p = pair(i);
  Rational r(p.m * p.n, p.m + p.n);
  r.canonicalize();
  return r;
}

Rational SystemShape::min_b() const {
  Rational best = b(0);
  for (int i = 1; i < s(); ++i) best = std::min(best, b(i));
  return best;
}

void check_tuple(const MatrixTuple& theta, const SystemShape& shape) {
  if (static_cast<int>(theta.size()) != shape.s())
    throw std::invalid_argument("matrix tuple has wrong number of factors");
  for (int i = 0; i < shape.s(); ++i)
    if (theta[i].rows() != shape.pair(i).m || theta[i].cols() != shape.pair(i).n)
      throw std::invalid_argument("factor " + std::to_string(i + 1) + " has wrong shape");
}

}  // namespace pgn
