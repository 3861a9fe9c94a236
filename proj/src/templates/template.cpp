#include "pgn/templates/template.hpp"

#include "pgn/core/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace pgn {

Template::Template(int m, int n, RVec breakpoints, RVec start_values, std::vector<RVec> slopes)
    : m_(m), n_(n), bp_(std::move(breakpoints)), slopes_(std::move(slopes)) {
  if (m < 1 || n < 1) throw std::invalid_argument("m and n must be positive");
  const auto d = static_cast<std::size_t>(m + n);
  if (bp_.size() < 2) throw std::invalid_argument("template needs at least one segment");
  if (slopes_.size() + 1 != bp_.size())
    throw std::invalid_argument("need one slope row per segment");
  if (start_values.size() != d) throw std::invalid_argument("startValues must have m+n entries");
  for (std::size_t k = 1; k < bp_.size(); ++k)
    if (!(bp_[k] > bp_[k - 1])) throw std::invalid_argument("breakpoints must increase strictly");
  for (const auto& row : slopes_)
    if (row.size() != d) throw std::invalid_argument("slope rows must have m+n entries");
  knots_.reserve(bp_.size());
  knots_.push_back(std::move(start_values));
  for (std::size_t k = 0; k < slopes_.size(); ++k) {
    Rational dt = bp_[k + 1] - bp_[k];
    RVec next(d);
    for (std::size_t j = 0; j < d; ++j) next[j] = knots_[k][j] + slopes_[k][j] * dt;
    knots_.push_back(std::move(next));
  }
}

std::size_t Template::segment_of(const Rational& t) const {
  auto it = std::upper_bound(bp_.begin(), bp_.end(), t);
  std::size_t k = it == bp_.begin() ? 0 : static_cast<std::size_t>(it - bp_.begin()) - 1;
  return std::min(k, segments() - 1);
}

Rational Template::value(const Rational& t, int coord) const {
  if (t < start() || t > end()) throw std::out_of_range("time outside template domain");
  auto k = segment_of(t);
  return knots_[k][coord] + slopes_[k][coord] * (t - bp_[k]);
}

RVec Template::values(const Rational& t) const {
  RVec out(dim());
  for (int j = 0; j < dim(); ++j) out[j] = value(t, j);
  return out;
}

Template trivial_template(int m, int n, const Rational& t0, const Rational& t1) {
  const auto d = static_cast<std::size_t>(m + n);
  return Template(m, n, {t0, t1}, RVec(d, Rational(0)), {RVec(d, Rational(0))});
}

Template trivial_template(int m, int n, const Rational& T) {
  if (!(T > 0)) throw std::invalid_argument("horizon must be positive");
  return trivial_template(m, n, Rational(0), T);
}

Template concatenate(const std::vector<Template>& pieces) {
  if (pieces.empty()) throw std::invalid_argument("nothing to concatenate");
  const int m = pieces.front().m(), n = pieces.front().n();
  std::size_t total = 0;
  for (const auto& p : pieces) total += p.segments();
  RVec bp;
  std::vector<RVec> slopes;
  bp.reserve(total + 1);
  slopes.reserve(total);
  bp.push_back(pieces.front().start());
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& p = pieces[i];
    if (p.m() != m || p.n() != n) throw std::invalid_argument("pieces have different (m,n)");
    if (i > 0) {
      const auto& prev = pieces[i - 1];
      if (p.start() != prev.end())
        throw TemplateDiscontinuity("piece " + std::to_string(i) + " does not abut its predecessor");
      if (p.start_values() != prev.knot(prev.segments()))
        throw TemplateDiscontinuity("values jump at the junction before piece " +
                                    std::to_string(i) + " (t = " + to_string(p.start()) + ")");
    }
    for (std::size_t k = 0; k < p.segments(); ++k) {
      bp.push_back(p.breakpoints()[k + 1]);
      slopes.push_back(p.slopes(k));
    }
  }
  return Template(m, n, std::move(bp), pieces.front().start_values(), std::move(slopes));
}

Template restrict_to(const Template& L, const Rational& a, const Rational& b) {
  if (!(a < b) || a < L.start() || b > L.end())
    throw std::invalid_argument("restriction window outside the domain");
  RVec bp{a};
  std::vector<RVec> slopes;
  std::size_t k = L.segment_of(a);
  for (; k < L.segments(); ++k) {
    slopes.push_back(L.slopes(k));
    const auto& right = L.breakpoints()[k + 1];
    if (right >= b) {
      bp.push_back(b);
      break;
    }
    bp.push_back(right);
  }
  return Template(L.m(), L.n(), std::move(bp), L.values(a), std::move(slopes));
}

RVec z_set(int m, int n, int j) {
  if (j < 1 || j > m + n) throw std::invalid_argument("j must lie in [1, m+n]");
  RVec z;
  for (int k1 = 0; k1 <= m; ++k1) {
    int k2 = j - k1;
    if (k2 < 0 || k2 > n) continue;
    z.push_back(frac(k1, m) - frac(k2, n));
  }
  std::sort(z.begin(), z.end());
  z.erase(std::unique(z.begin(), z.end()), z.end());
  return z;
}

const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::UnorderedValues: return "UnorderedValues";
    case ViolationKind::SlopeOutOfRange: return "SlopeOutOfRange";
    case ViolationKind::FjSlopeNotInZ: return "FjSlopeNotInZ";
    case ViolationKind::FjNotConvex: return "FjNotConvex";
    case ViolationKind::SumNotConstant: return "SumNotConstant";
  }
  return "?";
}

ValidationReport validate_template(const Template& L) {
  ValidationReport rep;
  const int d = L.dim();
  const std::size_t N = L.segments();
  const Rational lo(-1, L.n()), hi(1, L.m());

  for (std::size_t k = 0; k <= N; ++k)
    for (int j = 0; j + 1 < d; ++j)
      if (L.knot(k)[j] > L.knot(k)[j + 1])
        rep.violations.push_back({ViolationKind::UnorderedValues, k, j + 1,
                                  "L_" + std::to_string(j + 1) + " > L_" + std::to_string(j + 2) +
                                      " at t = " + to_string(L.breakpoints()[k])});

  for (std::size_t k = 0; k < N; ++k) {
    Rational sum = 0;
    for (int j = 0; j < d; ++j) {
      const auto& s = L.slopes(k)[j];
      sum += s;
      if (s < lo || s > hi)
        rep.violations.push_back({ViolationKind::SlopeOutOfRange, k, j + 1,
                                  "slope " + to_string(s) + " outside [-1/n, 1/m]"});
    }
    if (sum != 0)
      rep.violations.push_back(
          {ViolationKind::SumNotConstant, k, 0, "slope sum " + to_string(sum) + " is not 0"});
  }

  // F_j = L_1 + ... + L_j on maximal runs where L_j < L_{j+1}
  for (int j = 1; j < d; ++j) {
    const RVec Z = z_set(L.m(), L.n(), j);
    bool in_run = false;
    Rational prev;
    for (std::size_t k = 0; k < N; ++k) {
      Rational gl = L.knot(k)[j] - L.knot(k)[j - 1];
      Rational gr = L.knot(k + 1)[j] - L.knot(k + 1)[j - 1];
      bool separated = gl > 0 || gr > 0;
      if (!separated || gl == 0) in_run = false;
      if (!separated) continue;
      Rational f = 0;
      for (int i = 0; i < j; ++i) f += L.slopes(k)[i];
      if (!std::binary_search(Z.begin(), Z.end(), f))
        rep.violations.push_back({ViolationKind::FjSlopeNotInZ, k, j,
                                  "F_" + std::to_string(j) + " slope " + to_string(f) +
                                      " not in Z(" + std::to_string(j) + ")"});
      if (in_run && f < prev)
        rep.violations.push_back({ViolationKind::FjNotConvex, k, j,
                                  "F_" + std::to_string(j) + " slope drops from " +
                                      to_string(prev) + " to " + to_string(f)});
      prev = f;
      in_run = gr > 0;
    }
  }
  return rep;
}

}  // namespace pgn
