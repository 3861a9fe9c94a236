#include "pgn/templates/envelope.hpp"

#include <algorithm>
#include <stdexcept>

namespace pgn {

Rational PiecewiseLinear::operator()(const Rational& x) const {
  if (t.empty() || x < t.front() || x > t.back()) throw std::out_of_range("outside envelope domain");
  auto it = std::upper_bound(t.begin(), t.end(), x);
  std::size_t k = it == t.begin() ? 0 : static_cast<std::size_t>(it - t.begin()) - 1;
  if (k + 1 >= t.size()) return v.back();
  return v[k] + (v[k + 1] - v[k]) * (x - t[k]) / (t[k + 1] - t[k]);
}

std::pair<Rational, Rational> PiecewiseLinear::max() const {
  if (t.empty()) throw std::logic_error("empty envelope");
  std::size_t best = 0;
  for (std::size_t k = 1; k < v.size(); ++k)
    if (v[k] > v[best]) best = k;
  return {v[best], t[best]};
}

Rational PiecewiseLinear::measure_between(const Rational& lo, const Rational& hi) const {
  Rational total = 0;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    const Rational &a = t[k], &b = t[k + 1], &fa = v[k], &fb = v[k + 1];
    const Rational len = b - a;
    if (fa == fb) {
      if (fa >= lo && fa <= hi) total += len;
      continue;
    }
    // f(x) = fa + (fb - fa) u, u in [0,1]; solve lo <= f <= hi for u
    Rational u0 = (lo - fa) / (fb - fa), u1 = (hi - fa) / (fb - fa);
    if (u0 > u1) std::swap(u0, u1);
    u0 = std::max(u0, Rational(0));
    u1 = std::min(u1, Rational(1));
    if (u1 > u0) total += (u1 - u0) * len;
  }
  return total;
}

namespace {

// Values of one rescaled coordinate at sorted times, walking segments once.
RVec sample(const Template& L, const Rational& a, int coord, const RVec& ts) {
  RVec out(ts.size());
  std::size_t k = 0;
  const auto& bp = L.breakpoints();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    Rational tau = a * ts[i];
    while (k + 1 < L.segments() && bp[k + 1] <= tau) ++k;
    out[i] = L.knot(k)[coord] + L.slopes(k)[coord] * (tau - bp[k]);
  }
  return out;
}

}  // namespace

PiecewiseLinear min_envelope(const std::vector<WeightedTemplate>& parts, int coord,
                             const Rational& A, const Rational& B) {
  if (parts.empty()) throw std::invalid_argument("no templates");
  if (!(A < B)) throw std::invalid_argument("empty window");
  for (const auto& p : parts) {
    if (!(p.a > 0)) throw std::invalid_argument("weights must be positive");
    if (coord < 0 || coord >= p.L->dim()) throw std::out_of_range("coordinate index");
    if (p.a * A < p.L->start() || p.a * B > p.L->end())
      throw std::invalid_argument("window outside a rescaled template domain");
  }
  RVec ts{A, B};
  for (const auto& p : parts)
    for (const auto& b : p.L->breakpoints()) {
      Rational x = b / p.a;
      if (x > A && x < B) ts.push_back(x);
    }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  const std::size_t s = parts.size();
  std::vector<RVec> vals(s);
  for (std::size_t i = 0; i < s; ++i) vals[i] = sample(*parts[i].L, parts[i].a, coord, ts);

  // every f_i is linear between consecutive grid times; add pairwise crossings
  PiecewiseLinear env;
  auto min_at = [&](std::size_t k) {
    Rational m = vals[0][k];
    for (std::size_t i = 1; i < s; ++i) m = std::min(m, vals[i][k]);
    return m;
  };
  env.t.push_back(ts[0]);
  env.v.push_back(min_at(0));
  for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
    const Rational &a = ts[k], &b = ts[k + 1];
    RVec cross;
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = i + 1; j < s; ++j) {
        Rational da = vals[i][k] - vals[j][k], db = vals[i][k + 1] - vals[j][k + 1];
        if ((da < 0 && db > 0) || (da > 0 && db < 0)) cross.push_back(a + (b - a) * da / (da - db));
      }
    std::sort(cross.begin(), cross.end());
    cross.erase(std::unique(cross.begin(), cross.end()), cross.end());
    for (const auto& x : cross) {
      Rational u = (x - a) / (b - a);
      Rational m;
      for (std::size_t i = 0; i < s; ++i) {
        Rational f = vals[i][k] + (vals[i][k + 1] - vals[i][k]) * u;
        if (i == 0 || f < m) m = f;
      }
      env.t.push_back(x);
      env.v.push_back(m);
    }
    env.t.push_back(b);
    env.v.push_back(min_at(k + 1));
  }
  return env;
}

}  // namespace pgn
