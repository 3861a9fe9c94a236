#include "pgn/templates/standard.hpp"

#include "pgn/core/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace pgn {

AdmissibilityVerdict check_admissible(const Point& p1, const Point& p2, int m, int n) {
  if (m < 1 || n < 1) throw std::invalid_argument("m and n must be positive");
  if (!(p2.t > p1.t)) throw std::invalid_argument("need t'' > t'");
  if (p1.eps < 0 || p2.eps < 0) throw std::invalid_argument("heights must be nonnegative");
  AdmissibilityVerdict v;
  const Rational dt = p2.t - p1.t, de = p2.eps - p1.eps;
  const int d = m + n;

  v.st1 = -dt / m <= de && de <= dt / n;

  v.st2 = true;
  v.st3 = true;
  // both conditions degenerate for 1x1; only condST1 constrains the pair
  if (d > 2) {
    if (m == 1) v.st2 = v.st2 && de >= -frac(n - 1, 2 * n) * dt;
    if (n == 1) v.st2 = v.st2 && de <= frac(m - 1, 2 * m) * dt;
    v.st3 = (n - 1) * (dt / n - de) >= d * p1.eps || (m - 1) * (dt / m + de) >= d * p2.eps;
  }
  v.by_ladm = dt >= d * d * std::max(p1.eps, p2.eps);
  v.admissible = v.st1 && v.st2 && v.st3;
  if (!v.st1)
    v.reason = "condST1 fails: need -dt/m <= deps <= dt/n";
  else if (!v.st2)
    v.reason = "condST2 fails";
  else if (!v.st3)
    v.reason = "condST3 fails";
  return v;
}

namespace {

struct Piece {
  Rational len;
  Rational s1, s2;  // slopes of g1, g2
};

}  // namespace

Template standard_template(const Point& p1, const Point& p2, int m, int n) {
  auto v = check_admissible(p1, p2, m, n);
  if (!v.admissible)
    throw InadmissiblePair("pair ((" + to_string(p1.t) + "," + to_string(p1.eps) + "),(" +
                           to_string(p2.t) + "," + to_string(p2.eps) + ")) is inadmissible: " +
                           v.reason);
  const int d = m + n;
  const Rational dt = p2.t - p1.t, de = p2.eps - p1.eps;
  const Rational up(1, m), down(-1, n);
  // g1 falls for d1 then rises for d2; g2 rises for d2 then falls for d1
  Rational d2 = (dt / n - de) * Rational(m * n, d);
  d2.canonicalize();
  const Rational d1 = dt - d2;

  // local times where either slope changes
  RVec cuts{Rational(0), d1, d2, dt};
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto g1 = [&](const Rational& tau) -> Rational {
    if (tau <= d1) return -p1.eps + down * tau;
    return -p1.eps + down * d1 + up * (tau - d1);
  };
  auto g2 = [&](const Rational& tau) -> Rational {
    if (tau <= d2) return -p1.eps + up * tau;
    return -p1.eps + up * d2 + down * (tau - d2);
  };
  // h = g2 - g3; the g3 branch holds where h <= 0
  auto h = [&](const Rational& tau) -> Rational {
    Rational a = g1(tau), b = g2(tau);
    return b + (a + b) / (d - 2);
  };

  if (d > 2) {
    RVec refined{cuts.front()};
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const auto &a = cuts[k], &b = cuts[k + 1];
      Rational ha = h(a), hb = h(b);
      if ((ha < 0 && hb > 0) || (ha > 0 && hb < 0)) refined.push_back(a + (b - a) * ha / (ha - hb));
      refined.push_back(b);
    }
    cuts = std::move(refined);
  }

  RVec bp;
  std::vector<RVec> slopes;
  bp.reserve(cuts.size());
  for (const auto& c : cuts) bp.push_back(p1.t + c);
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    Rational mid = (cuts[k] + cuts[k + 1]) / 2;
    Rational s1 = mid < d1 ? down : up;
    Rational s2 = mid < d2 ? up : down;
    RVec row(d);
    row[0] = s1;
    if (d > 2 && h(mid) <= 0) {
      row[1] = s2;
      Rational s3 = -(s1 + s2) / (d - 2);
      for (int j = 2; j < d; ++j) row[j] = s3;
    } else {
      Rational s = -s1 / (d - 1);
      for (int j = 1; j < d; ++j) row[j] = s;
    }
    slopes.push_back(std::move(row));
  }

  RVec start(d);
  start[0] = -p1.eps;
  if (d > 2 && h(Rational(0)) <= 0) {
    start[1] = -p1.eps;
    Rational v3 = 2 * p1.eps / (d - 2);
    for (int j = 2; j < d; ++j) start[j] = v3;
  } else {
    Rational v = p1.eps / (d - 1);
    for (int j = 1; j < d; ++j) start[j] = v;
  }
  return Template(m, n, std::move(bp), std::move(start), std::move(slopes));
}

Template standard_template_seq(const PointSequence& pts, int m, int n) {
  if (pts.size() < 2) throw std::invalid_argument("need at least two points");
  std::vector<Template> pieces;
  pieces.reserve(pts.size() - 1);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    try {
      pieces.push_back(standard_template(pts[i], pts[i + 1], m, n));
    } catch (const InadmissiblePair& e) {
      throw InadmissiblePair("pair " + std::to_string(i) + ": " + e.what(), i);
    }
  }
  if (pieces.size() == 1) return pieces.front();
  return concatenate(pieces);
}

}  // namespace pgn
