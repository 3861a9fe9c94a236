#pragma once
// Independent reference computations used to freeze expected values.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

// Successive minima of the 2-d lattice spanned by the columns of
// [[a, b], [c, d]] by brute force. Both columns have norm at most R, so every
// vector reaching lambda_2 has coefficients bounded by R times the row-sum
// norm of the inverse.
inline std::vector<double> minima_2d(double a, double b, double c, double d) {
  double det = a * d - b * c;
  double R = std::max(std::max(std::abs(a), std::abs(c)), std::max(std::abs(b), std::abs(d)));
  double inv = std::max(std::abs(d) + std::abs(b), std::abs(c) + std::abs(a)) / std::abs(det);
  long box = static_cast<long>(std::ceil(R * inv)) + 1;
  struct V {
    double norm;
    long x, y;
  };
  std::vector<V> vs;
  for (long x = -box; x <= box; ++x)
    for (long y = -box; y <= box; ++y) {
      if (x == 0 && y == 0) continue;
      double u = a * x + b * y, v = c * x + d * y;
      vs.push_back({std::max(std::abs(u), std::abs(v)), x, y});
    }
  std::sort(vs.begin(), vs.end(), [](const V& p, const V& q) { return p.norm < q.norm; });
  double l1 = vs.front().norm;
  long x1 = vs.front().x, y1 = vs.front().y;
  for (const auto& w : vs)
    if (w.x * y1 - w.y * x1 != 0) return {l1, w.norm};
  return {l1, NAN};
}

// Continued-fraction convergents p/q of x with q <= qmax.
inline std::vector<std::pair<long long, long long>> convergents(double x, long long qmax) {
  std::vector<std::pair<long long, long long>> out;
  long long p0 = 1, q0 = 0, p1 = static_cast<long long>(std::floor(x)), q1 = 1;
  double r = x - std::floor(x);
  out.push_back({p1, q1});
  while (r > 1e-15) {
    double inv = 1.0 / r;
    long long a = static_cast<long long>(std::floor(inv));
    r = inv - a;
    long long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > qmax) break;
    out.push_back({p2, q2});
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  return out;
}

// h_1(t) for 1x1 theta from convergents: the shortest vector of g_t u_theta Z^2
// comes from a best approximation, or from (1, 0).
inline double h1_convergents(double theta, double t) {
  long double th = theta, et = std::exp(static_cast<long double>(t));
  long double best = et;
  for (auto [p, q] : convergents(theta, static_cast<long long>(4 * std::exp(t)) + 10)) {
    long double u = et * std::abs(th * q - p);
    long double v = q / et;
    best = std::min(best, std::max(u, v));
  }
  return static_cast<double>(std::log(best));
}

}  // namespace oracle
