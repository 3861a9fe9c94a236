#include "pgn/constructions/construction.hpp"

#include "pgn/core/errors.hpp"
#include "pgn/templates/standard.hpp"

#include <stdexcept>
#include <string>

namespace pgn {

namespace {

Rational R(double x) { return from_double(x); }

void check_range(const Schedule& sched, int k_first, int k_last) {
  if (sched.k0() < 0) throw NoValidK0("schedule has no k0");
  if (k_first < sched.k0() || k_last > sched.kmax() || k_first > k_last)
    throw std::invalid_argument("window range [" + std::to_string(k_first) + ", " +
                                std::to_string(k_last) + "] must lie in [k0, kmax] = [" +
                                std::to_string(sched.k0()) + ", " +
                                std::to_string(sched.kmax()) + "]");
}

// Builds [a t_{k,from}, a t_{k,to}] from heights at consecutive grid indices,
// padding with trivial pieces up to the window ends.
Template excursion_window(const Schedule& sched, int i, int k, long from, long to,
                          const std::vector<Rational>& heights) {
  const auto& p = sched.shape().pair(i);
  const Rational& a = sched.shape().weight(i);
  const long lk = sched.l(k);
  std::vector<Template> parts;
  if (from > 0) parts.push_back(trivial_template(p.m, p.n, a * R(sched.T(k)), a * R(sched.t(k, from))));
  PointSequence pts;
  for (long l = from; l <= to; ++l) pts.push_back({a * R(sched.t(k, l)), heights[l - from]});
  try {
    parts.push_back(standard_template_seq(pts, p.m, p.n));
  } catch (const InadmissiblePair& e) {
    throw InadmissiblePair("window k = " + std::to_string(k) + ", factor " +
                           std::to_string(i + 1) + ": " + e.what());
  }
  if (to < lk) parts.push_back(trivial_template(p.m, p.n, a * R(sched.t(k, to)), a * R(sched.T(k + 1))));
  return parts.size() == 1 ? parts.front() : concatenate(parts);
}

}  // namespace

Template window_I(const Schedule& sched, int i, int k) {
  const int s = sched.shape().s();
  const Rational h = R(sched.log_gamma(k));
  if (i == 0) {
    // dips to 0 at t_{k,4l+2} for l <= s-2, level log gamma_k elsewhere,
    // ending at log gamma_{k+1}
    const long lk = sched.l(k);
    std::vector<Rational> hs(lk + 1, h);
    for (int l = 0; l <= s - 2; ++l) hs[4 * l + 2] = 0;
    hs[lk] = R(sched.log_gamma(k + 1));
    return excursion_window(sched, 0, k, 0, lk, hs);
  }
  const long from = 4L * (i + 1) - 8;
  return excursion_window(sched, i, k, from, from + 4, {Rational(0), h, h, h, Rational(0)});
}

Template window_II(const Schedule& sched, int i, int k) {
  const auto q = sched.q(k);
  const long from = q[i], to = q[i + 1];
  std::vector<Rational> hs(to - from + 1, R(sched.log_gamma(k)));
  hs.front() = 0;
  hs.back() = 0;
  return excursion_window(sched, i, k, from, to, hs);
}

namespace {

TemplateTuple build(const Schedule& sched, int k_first, int k_last, Mode mode) {
  if (sched.mode() != mode) throw std::invalid_argument("schedule was built for the other mode");
  check_range(sched, k_first, k_last);
  const auto& shape = sched.shape();
  TemplateTuple out{shape, k_first, k_last, {}};
  const int k0 = sched.k0();
  for (int i = 0; i < shape.s(); ++i) {
    const auto& p = shape.pair(i);
    const Rational& a = shape.weight(i);
    std::vector<Template> parts;
    int k = k_first;
    if (k_first == k0) {
      parts.push_back(trivial_template(p.m, p.n, Rational(0), a * R(sched.T(k0))));
      if (mode == Mode::I) {
        const Rational b0 = a * R(sched.T(k0)), b1 = a * R(sched.T(k0 + 1));
        if (i == 0)
          parts.push_back(standard_template({b0, Rational(0)}, {b1, R(sched.log_gamma(k0 + 1))}, p.m, p.n));
        else
          parts.push_back(trivial_template(p.m, p.n, b0, b1));
        ++k;
      }
    }
    for (; k <= k_last; ++k) parts.push_back(mode == Mode::I ? window_I(sched, i, k) : window_II(sched, i, k));
    out.components.push_back(parts.size() == 1 ? parts.front() : concatenate(parts));
  }
  return out;
}

}  // namespace

TemplateTuple construction_I(const Schedule& sched, int k_first, int k_last) {
  return build(sched, k_first, k_last, Mode::I);
}

TemplateTuple construction_II(const Schedule& sched, int k_first, int k_last) {
  return build(sched, k_first, k_last, Mode::II);
}

}  // namespace pgn
