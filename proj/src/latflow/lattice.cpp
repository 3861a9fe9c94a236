#include "pgn/latflow/lattice.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pgn {

Matrix flow_matrix(int m, int n, double t) {
  if (m < 1 || n < 1) throw std::invalid_argument("m and n must be positive");
  Vector d(m + n);
  d.head(m).setConstant(std::exp(t / m));
  d.tail(n).setConstant(std::exp(-t / n));
  return d.asDiagonal();
}

Matrix embed_theta(const Matrix& theta) {
  const auto m = theta.rows(), n = theta.cols();
  if (m < 1 || n < 1) throw std::invalid_argument("theta must be nonempty");
  Matrix u = Matrix::Identity(m + n, m + n);
  u.topRightCorner(m, n) = theta;
  return u;
}

namespace {

void check_unimodular(const Vector& scale, const Matrix& core) {
  if (core.rows() != core.cols() || core.rows() < 1)
    throw std::invalid_argument("basis must be square");
  if (scale.size() != core.rows()) throw std::invalid_argument("scale has wrong size");
  double det = scale.prod() * core.determinant();
  if (!(std::abs(det - 1.0) <= 1e-9))
    throw std::invalid_argument("basis is not unimodular (det = " + std::to_string(det) + ")");
}

// Dot product evaluated as if in twice the working precision.
double dot2(const double* a, std::ptrdiff_t stride, const std::int64_t* c, int d) {
  double s = 0.0, err = 0.0;
  for (int j = 0; j < d; ++j) {
    double x = a[j * stride];
    double y = static_cast<double>(c[j]);
    double p = x * y;
    double pe = std::fma(x, y, -p);
    double t = s + p;
    double z = t - s;
    double se = (s - (t - z)) + (p - z);
    s = t;
    err += pe + se;
  }
  return s + err;
}

}  // namespace

LatticeBasis::LatticeBasis(const Matrix& columns)
    : scale_(Vector::Ones(columns.rows())), core_(columns) {
  check_unimodular(scale_, core_);
}

LatticeBasis::LatticeBasis(const Vector& scale, const Matrix& core) : scale_(scale), core_(core) {
  check_unimodular(scale_, core_);
}

Vector LatticeBasis::vector(const std::vector<std::int64_t>& coeffs) const {
  const int d = dim();
  if (static_cast<int>(coeffs.size()) != d) throw std::invalid_argument("coefficient length");
  Vector v(d);
  for (int i = 0; i < d; ++i)
    v[i] = scale_[i] * dot2(core_.data() + i, core_.rows(), coeffs.data(), d);
  return v;
}

double LatticeBasis::sup_norm(const std::int64_t* coeffs) const {
  const int d = dim();
  double best = 0.0;
  for (int i = 0; i < d; ++i) {
    double x = std::abs(scale_[i] * dot2(core_.data() + i, core_.rows(), coeffs, d));
    if (x > best) best = x;
  }
  return best;
}

LatticeBasis flowed_basis(const Matrix& theta, double t) {
  const int m = static_cast<int>(theta.rows()), n = static_cast<int>(theta.cols());
  Vector scale = flow_matrix(m, n, t).diagonal();
  return LatticeBasis(scale, embed_theta(theta));
}

}  // namespace pgn
