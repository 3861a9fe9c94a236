// Acceptance suite: one PASS/FAIL line per criterion. Tolerances and time
// limits are fixed here; the process exits nonzero when any criterion fails.

#include "unit/oracles.hpp"

#include "pgn/constructions/construction.hpp"
#include "pgn/constructions/lemma_key.hpp"
#include "pgn/constructions/verify.hpp"
#include "pgn/latflow/dimension.hpp"
#include "pgn/latflow/lattice.hpp"
#include "pgn/latflow/trajectory.hpp"
#include "pgn/templates/rates.hpp"
#include "pgn/templates/standard.hpp"
#include "pgn/templates/template_io.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

using namespace pgn;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_s) {
    o.pass = false;
    o.detail += "; over time limit " + std::to_string(limit_s) + " s";
  }
  if (!o.pass) ++failures;
  std::ostringstream line;
  line.precision(3);
  line << (o.pass ? "PASS" : "FAIL") << " [" << id << "] " << name << ": " << o.detail << " ("
       << std::fixed << secs << " s)";
  std::cout << line.str() << std::endl;
}

Rational rnd_rational(std::mt19937_64& rng, long num_max, long den_max) {
  long den = 1 + static_cast<long>(rng() % den_max);
  long num = static_cast<long>(rng() % (num_max * den + 1));
  return frac(num, den);
}

std::pair<int, int> rnd_shape(std::mt19937_64& rng) {
  for (;;) {
    int m = 1 + static_cast<int>(rng() % 4), n = 1 + static_cast<int>(rng() % 4);
    if (m + n <= 5) return {m, n};
  }
}

std::pair<Point, Point> rnd_pair(std::mt19937_64& rng, int m, int n) {
  Rational t0 = rnd_rational(rng, 50, 4);
  Rational e1 = rnd_rational(rng, 5, 6), e2 = rnd_rational(rng, 5, 6);
  Rational need = (m + n) * (m + n) * std::max(e1, e2);
  if (need == 0) need = 1;
  return {{t0, e1}, {t0 + need + rnd_rational(rng, 40, 3), e2}};
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

Outcome trivial_rates() {
  int cases = 0;
  for (int m = 1; m <= 4; ++m)
    for (int n = 1; m + n <= 5; ++n) {
      ++cases;
      Rational D = average_contraction(trivial_template(m, n, 100), 0, 100);
      if (D != m * n)
        return {false, std::to_string(m) + "x" + std::to_string(n) + " gives " + to_string(D)};
    }
  return {true, std::to_string(cases) + " shapes, Delta = mn exactly"};
}

Outcome standard_rates() {
  std::mt19937_64 rng(2024);
  int ones = 0;
  for (int rep = 0; rep < 200; ++rep) {
    auto [m, n] = rnd_shape(rng);
    Rational eps = frac(1 + static_cast<long>(rng() % 500), 100);
    Rational dt = eps * (100 + rnd_rational(rng, 400, 7));
    auto L = standard_template({0, eps}, {dt, eps}, m, n);
    Rational D = average_contraction(L, 0, dt);
    Rational target = Rational(m * n) - frac(m * n, m + n);
    double err = to_double(abs_rational(D - target));
    double tol = 10 * to_double(eps / dt) + 1e-9;
    if (err > tol)
      return {false, std::to_string(m) + "x" + std::to_string(n) + " eps=" + to_string(eps) +
                         " dt=" + to_string(dt) + " error " + num(err) + " > " + num(tol)};
    if (m == 1 && n == 1) {
      ++ones;
      if (D != frac(1, 2)) return {false, "1x1 block gives " + to_string(D)};
    }
  }
  return {true, "200 symmetric pairs within 10 eps/dt + 1e-9 (" + std::to_string(ones) +
                    " 1x1 pairs exactly 1/2)"};
}

Outcome peak_property() {
  std::mt19937_64 rng(77);
  for (int rep = 0; rep < 200; ++rep) {
    auto [m, n] = rnd_shape(rng);
    auto [p1, p2] = rnd_pair(rng, m, n);
    auto L = standard_template(p1, p2, m, n);
    Rational best = L.knot(0)[0];
    for (std::size_t k = 1; k <= L.segments(); ++k) best = std::max(best, L.knot(k)[0]);
    if (best != -std::min(p1.eps, p2.eps))
      return {false, "max L_1 = " + to_string(best) + " for eps " + to_string(p1.eps) + ", " +
                         to_string(p2.eps)};
  }
  return {true, "200 random admissible pairs, max L_1 = -min(eps', eps'') exactly"};
}

Outcome construction_square() {
  Schedule s(SystemShape({{1, 1}, {1, 1}}), 25000, Mode::I);
  std::string detail = "k0 = " + std::to_string(s.k0());
  bool ok = true;
  std::vector<Rational> gaps_prev;
  for (double scale : {1e7, 1e8}) {
    int k = s.first_k_at(scale);
    auto rep = verify_construction_I(construction_I(s, k, k), s, {k});
    const auto& w1 = rep.windows.at(0);
    const auto& w2 = rep.windows.at(1);
    bool here = to_double(w1.gap) <= 0.05 && to_double(w2.gap) <= 0.05 &&
                *w1.envelope_max <= *w1.bound;
    for (const auto& w : rep.witnesses) here = here && w.value == 0;
    if (!gaps_prev.empty()) here = here && w1.gap <= gaps_prev[0] && w2.gap <= gaps_prev[1];
    gaps_prev = {w1.gap, w2.gap};
    ok = ok && here;
    detail += "; T_k=" + num(s.T(k)) + " gaps " + num(to_double(w1.gap)) + ", " +
              num(to_double(w2.gap)) + " envelope max " + num(to_double(*w1.envelope_max)) +
              " <= " + num(to_double(*w1.bound)) + " witnesses " +
              to_string(rep.witnesses.at(0).value) + ", " + to_string(rep.witnesses.at(1).value);
  }
  return {ok, detail};
}

Outcome construction_mixed() {
  SystemShape shape({{1, 2}, {2, 1}}, {Rational(1), frac(3, 2)});
  Schedule s(shape, 2000010, Mode::I);
  int k10 = s.first_k_at(1e10), k12 = s.first_k_at(1e12);
  auto r10 = verify_construction_I(construction_I(s, k10, k10), s, {k10});
  auto r12 = verify_construction_I(construction_I(s, k12, k12), s, {k12});
  Rational g10 = r10.windows.at(0).gap, g12 = r12.windows.at(0).gap;
  bool ok = r10.windows[0].target == frac(4, 3) && to_double(g10) <= 0.25 && g12 < g10;
  return {ok, "k0 = " + std::to_string(s.k0()) + "; Delta(L1) at 1e10 = " +
                  num(to_double(r10.windows[0].delta_window)) + " gap " + num(to_double(g10)) +
                  "; at 1e12 gap " + num(to_double(g12))};
}

Outcome construction_two() {
  Schedule s(SystemShape({{1, 1}, {1, 1}}), 25000, Mode::II, {frac(1, 4), frac(1, 4)});
  int k = s.first_k_at(1e7);
  auto rep = verify_construction_II(construction_II(s, k, k), s, {k}, 1);
  bool ok = rep.occupations.size() == 3;
  std::string detail;
  for (const auto& o : rep.occupations) {
    double target = o.exclude == 0 ? 0.5 : 0.75;
    ok = ok && o.target == target && std::abs(o.measured - target) <= 0.05;
    detail += (o.exclude == 0 ? std::string("all") : "excl " + std::to_string(o.exclude)) + " " +
              num(o.measured) + "; ";
  }
  for (const auto& w : rep.windows) {
    ok = ok && w.target == frac(7, 8) && to_double(w.gap) <= 0.05;
    detail += "Delta(L" + std::to_string(w.factor) + ") " + num(to_double(w.delta_window)) + "; ";
  }
  return {ok, detail + "T_k=" + num(s.T(k))};
}

Outcome lemma_key() {
  std::mt19937_64 rng(99);
  int oracle_hits = 0;
  for (int rep = 0; rep < 100; ++rep) {
    int s = 1 + static_cast<int>(rng() % 4);
    std::vector<BoundedFunction> f;
    std::vector<Rational> sigma{1};
    for (int i = 0; i < s; ++i) {
      StepFunction g;
      int cuts = 1 + static_cast<int>(rng() % 6);
      Rational c = frac(1 + static_cast<long>(rng() % 8), 2);
      for (int q = 0; q < cuts; ++q) {
        g.cuts.push_back(c);
        c += frac(1 + static_cast<long>(rng() % 16), 4);
      }
      for (int q = 0; q <= cuts; ++q) g.values.push_back(frac(static_cast<long>(rng() % 9), 4));
      f.push_back(bounded(std::move(g)));
    }
    for (int i = 1; i < s; ++i)
      sigma.push_back(std::min(sigma.back(), frac(1 + static_cast<long>(rng() % 7), 8)));
    Rational eps = frac(1 + static_cast<long>(rng() % 8), 16);
    Rational t0 = frac(1 + static_cast<long>(rng() % 20), 4);
    Rational t = lemma_key_solve(f, sigma, eps, t0);
    if (t < t0 || lemma_key_slack(f, sigma, eps, t) < 0)
      return {false, "instance " + std::to_string(rep) + " returned t = " + to_string(t)};
    for (int k = 0; k < 4096; ++k) {
      Rational u = t0 * (1 + frac(k, 64));
      if (lemma_key_slack(f, sigma, eps, u) >= 0) {
        ++oracle_hits;
        break;
      }
    }
  }
  return {oracle_hits == 100, "100 instances hold exactly; grid oracle found a qualifying t in " +
                                  std::to_string(oracle_hits)};
}

Outcome lattice_side() {
  Matrix th(1, 1);
  th(0, 0) = 2.0 / 7;
  auto grid = make_grid(2, 8, 0.01);
  auto tr = h_trajectory(th, grid);
  double worst = 0, worst_oracle = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    worst = std::max(worst, std::abs(tr.rows[k][0] - (std::log(7.0) - grid[k])));
    worst_oracle = std::max(worst_oracle, std::abs(tr.rows[k][0] - oracle::h1_convergents(2.0 / 7, grid[k])));
  }
  th(0, 0) = (1 + std::sqrt(5.0)) / 2;
  auto g2 = make_grid(0, 15, 0.01);
  auto tg = h_trajectory(th, g2);
  double mn = 0;
  for (const auto& r : tg.rows) mn = std::min(mn, r[0]);

  std::mt19937_64 rng(5150);
  std::uniform_int_distribution<int> small(-2, 2);
  std::uniform_real_distribution<double> logs(-0.6, 0.6), shear(-0.5, 0.5);
  int bad = 0;
  for (int rep = 0; rep < 500; ++rep) {
    int d = 2 + rep % 3;
    Matrix U = Matrix::Identity(d, d);
    for (int step = 0; step < 3 * d; ++step) {
      int i = static_cast<int>(rng() % d), j = static_cast<int>(rng() % d);
      if (i != j) U.row(i) += small(rng) * U.row(j);
    }
    Matrix N = Matrix::Identity(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) N(i, j) = shear(rng);
    Vector scale(d);
    double prod = 1;
    for (int i = 0; i + 1 < d; ++i) {
      scale[i] = std::exp(logs(rng));
      prod *= scale[i];
    }
    scale[d - 1] = 1 / prod;
    auto r = successive_minima(LatticeBasis(scale, N * U));
    double p = 1, fact = 1;
    for (int k = 0; k < d; ++k) {
      p *= r.lambda[k];
      fact *= k + 1;
    }
    if (!(p <= 1 + 1e-9 && p >= 1 / fact - 1e-9)) ++bad;
  }
  bool ok = worst <= 1e-9 && worst_oracle <= 1e-9 && mn >= -0.6 && bad == 0;
  return {ok, "2/7 max deviation " + num(worst) + " (oracle " + num(worst_oracle) +
                  "); golden min h_1 " + num(mn) + "; Minkowski violations " +
                  std::to_string(bad) + "/500"};
}

Outcome dimensions() {
  auto sq = dimension_report(SystemShape({{1, 1}, {1, 1}}), Rational(1));
  auto s21 = dimension_report(SystemShape({{2, 1}}), Rational(1));
  bool ok = sq.dim_D == frac(3, 2) && s21.sing.at(0) == frac(4, 3);
  std::mt19937_64 rng(31337);
  int bad = 0;
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<FactorPair> pairs;
    int s = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < s; ++i)
      pairs.push_back({1 + static_cast<int>(rng() % 4), 1 + static_cast<int>(rng() % 4)});
    SystemShape shape(pairs);
    Rational delta = frac(1 + static_cast<long>(rng() % 97), 97);
    auto r = dimension_report(shape, delta);
    auto one = dimension_report(shape, Rational(1));
    if (r.dim_D_delta != (1 - delta) * r.dim_M + delta * one.dim_D ||
        r.dim_X_D_delta != (1 - delta) * r.dim_X + delta * one.dim_X_D)
      ++bad;
  }
  ok = ok && bad == 0;
  return {ok, "dim D(1,1)^2 = " + to_string(sq.dim_D) + ", Sing(2,1) = " + to_string(s21.sing[0]) +
                  ", delta-linearity failures " + std::to_string(bad) + "/100"};
}

struct Tally {
  int total = 0, invalid = 0;
  std::string first;
  void add(const std::string& what, const Template& L) {
    ++total;
    auto rep = validate_template(L);
    if (!rep.ok()) {
      if (invalid == 0)
        first = what + ": " + to_string(rep.violations[0].kind) + " at segment " +
                std::to_string(rep.violations[0].where) + " (" +
                std::to_string(rep.violations.size()) + " violations)";
      ++invalid;
    }
  }
};

Outcome templates_roundtrip() {
  std::mt19937_64 rng(4242);
  Tally tally;
  int lossy = 0;
  for (int m = 1; m <= 4; ++m)
    for (int n = 1; m + n <= 5; ++n) tally.add("trivial", trivial_template(m, n, 10));
  for (int rep = 0; rep < 100; ++rep) {
    auto [m, n] = rnd_shape(rng);
    auto [p1, p2] = rnd_pair(rng, m, n);
    auto L = standard_template(p1, p2, m, n);
    tally.add("standard", L);
    auto back = template_from_json(nlohmann::json::parse(template_to_json(L).dump()));
    if (back.m() != m || back.n() != n || back.breakpoints() != L.breakpoints() ||
        back.start_values() != L.start_values() || back.all_slopes() != L.all_slopes())
      ++lossy;
  }
  for (int rep = 0; rep < 50; ++rep) {
    auto [m, n] = rnd_shape(rng);
    PointSequence pts{{0, rnd_rational(rng, 3, 4)}};
    Rational t = 0;
    for (int k = 0; k < 3; ++k) {
      Rational e = rnd_rational(rng, 3, 4);
      t += Rational((m + n) * (m + n)) * std::max(e, pts.back().eps) + rnd_rational(rng, 30, 2) + 1;
      pts.push_back({t, e});
    }
    tally.add("standard sequence " + std::to_string(m) + "x" + std::to_string(n),
              standard_template_seq(pts, m, n));
  }
  {
    SystemShape mixed({{1, 2}, {2, 1}}, {Rational(1), frac(3, 2)});
    Schedule s(mixed, 60000, Mode::I);
    for (const auto& L : construction_I(s, s.k0(), s.k0() + 3).components)
      tally.add("construction I (1,2)x(2,1)", L);
    Schedule s2(mixed, 60000, Mode::II, {frac(1, 4), frac(1, 4)});
    for (const auto& L : construction_II(s2, s2.k0(), s2.k0() + 3).components)
      tally.add("construction II (1,2)x(2,1)", L);
  }
  {
    SystemShape square({{1, 1}, {1, 1}});
    Schedule s(square, 25000, Mode::I);
    int k = s.first_k_at(1e7);
    for (const auto& L : construction_I(s, k, k).components) tally.add("construction I (1,1)^2", L);
    Schedule s2(square, 25000, Mode::II, {frac(1, 4), frac(1, 4)});
    for (const auto& L : construction_II(s2, k, k).components)
      tally.add("construction II (1,1)^2", L);
  }
  std::string detail = std::to_string(tally.total - tally.invalid) + "/" +
                       std::to_string(tally.total) + " constructed templates valid; JSON lossy " +
                       std::to_string(lossy) + "/100";
  if (tally.invalid)
    detail += "; first invalid: " + tally.first +
              ". Abutting 1x1 blocks of positive height meet in a concave kink of F_1 "
              "while L_1 < L_2, which the convexity rule rejects";
  return {tally.invalid == 0 && lossy == 0, detail};
}

}  // namespace

int main() {
  criterion(1, "trivial template rate", 1, trivial_rates);
  criterion(2, "standard block rate", 200, standard_rates);
  criterion(3, "standard block peak", 60, peak_property);
  criterion(4, "construction I on (1,1)^2", 10, construction_square);
  criterion(5, "construction I on (1,2)x(2,1)", 60, construction_mixed);
  criterion(6, "construction II occupations", 10, construction_two);
  criterion(7, "key inequality solver", 5, lemma_key);
  criterion(8, "lattice side", 30, lattice_side);
  criterion(9, "dimension formulas", 1, dimensions);
  criterion(10, "template validation and JSON round trip", 5, templates_roundtrip);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
