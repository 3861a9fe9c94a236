#include "pgn/constructions/construction.hpp"
#include "pgn/constructions/verify.hpp"
#include "pgn/core/errors.hpp"
#include "pgn/templates/envelope.hpp"
#include "pgn/templates/rates.hpp"

#include <doctest.h>

#include <sstream>

using namespace pgn;

namespace {

Rational R(double x) { return from_double(x); }

const Schedule& square_I() {
  static const Schedule s(SystemShape({{1, 1}, {1, 1}}), 25000, Mode::I);
  return s;
}

const Schedule& square_II() {
  static const Schedule s(SystemShape({{1, 1}, {1, 1}}), 25000, Mode::II,
                          {Rational(1, 4), Rational(1, 4)});
  return s;
}

const Schedule& mixed_I() {
  static const Schedule s(SystemShape({{1, 2}, {2, 1}}, {Rational(1), Rational(3, 2)}), 60000,
                          Mode::I);
  return s;
}

bool only_junction_kinks(const ValidationReport& r) {
  for (const auto& v : r.violations)
    if (v.kind != ViolationKind::FjNotConvex) return false;
  return true;
}

}  // namespace

TEST_CASE("mixed shape windows validate") {
  const auto& s = mixed_I();
  for (int k : {s.k0(), s.k0() + 1, s.k0() + 500, 60000}) {
    for (int i = 0; i < 2; ++i) {
      auto r = validate_template(window_I(s, i, k));
      CHECK(r.ok());
    }
  }
  auto tup = construction_I(s, s.k0(), s.k0() + 2);
  REQUIRE(tup.components.size() == 2);
  CHECK(tup.components[0].start() == 0);
  for (const auto& L : tup.components) CHECK(validate_template(L).ok());
}

TEST_CASE("1x1 windows fail only through convexity at block junctions") {
  const auto& s = square_I();
  int k = s.first_k_at(1e7);
  auto r = validate_template(window_I(s, 0, k));
  CHECK_FALSE(r.ok());
  CHECK(only_junction_kinks(r));
  auto q = validate_template(window_I(s, 1, k));
  CHECK(only_junction_kinks(q));
}

TEST_CASE("construction I structure on the square") {
  const auto& s = square_I();
  int k = s.first_k_at(1e7);
  auto tup = construction_I(s, k, k);
  const auto& L1 = tup.components[0];
  const auto& L2 = tup.components[1];
  Rational lg = R(s.log_gamma(k));
  // dip of L^1 at t_{k,2}; L^2 is in its excursion there
  CHECK(L1.value(R(s.t(k, 2)), 0) == 0);
  CHECK(L2.value(R(s.t(k, 2)), 0) <= -lg);
  // witness time t_{k,4s}: every other component is 0
  CHECK(L2.value(R(s.t(k, 8)), 0) == 0);
  // L^1 stays below -log gamma away from its dips
  for (long l = 3; l <= s.l(k); ++l) CHECK(L1.value(R(s.t(k, l)), 0) <= -lg);
  // L^2 is below -log gamma on [t_{k,1}, t_{k,3}]
  for (long l = 1; l <= 3; ++l) CHECK(L2.value(R(s.t(k, l)), 0) <= -lg);
  auto env = min_envelope({{&L1, 1}, {&L2, 1}}, 0, R(s.T(k)), R(s.T(k + 1)));
  CHECK(env.max().first <= -lg);
}

TEST_CASE("construction I verification on the square") {
  const auto& s = square_I();
  int k7 = s.first_k_at(1e7);
  auto tup = construction_I(s, k7, k7);
  auto rep = verify_construction_I(tup, s, {k7});
  REQUIRE(rep.windows.size() == 2);
  CHECK(rep.windows[0].target == Rational(1, 2));
  CHECK(rep.windows[1].target == 1);
  CHECK(to_double(rep.windows[0].gap) <= 0.05);
  CHECK(to_double(rep.windows[1].gap) <= 0.05);
  REQUIRE(rep.windows[0].envelope_max);
  CHECK(*rep.windows[0].envelope_max <= *rep.windows[0].bound);
  REQUIRE(rep.witnesses.size() == 2);
  for (const auto& w : rep.witnesses) CHECK(w.value == 0);

  // frozen window values at T_k ~ 1e7
  CHECK(k7 == 6327);
  CHECK(to_double(rep.windows[0].gap) == doctest::Approx(2.5e-8).epsilon(0.05));

  int k6 = s.first_k_at(1e6), k8 = s.first_k_at(1e8);
  auto r6 = verify_construction_I(construction_I(s, k6, k6), s, {k6});
  auto r8 = verify_construction_I(construction_I(s, k8, k8), s, {k8});
  CHECK(r8.windows[0].gap <= r6.windows[0].gap);
  CHECK(r8.windows[1].gap <= r6.windows[1].gap);
}

TEST_CASE("construction I from k0 starts at time zero") {
  const auto& s = square_I();
  auto tup = construction_I(s, s.k0(), s.k0() + 1);
  for (const auto& L : tup.components) {
    CHECK(L.start() == 0);
    CHECK(L.end() == R(s.T(s.k0() + 2)));
    CHECK(L.value(R(s.T(s.k0()) / 2), 0) == 0);
  }
}

TEST_CASE("construction II structure and occupations") {
  const auto& s = square_II();
  int k = s.first_k_at(1e7);
  auto tup = construction_II(s, k, k);
  auto q = s.q(k);
  Rational lg = R(s.log_gamma(k));
  for (int i = 0; i < 2; ++i) {
    const auto& L = tup.components[i];
    for (long l = q[i + 1] + 1; l <= s.l(k); ++l) CHECK(L.value(R(s.t(k, l)), 0) == 0);
    for (long l = q[i] + 1; l <= q[i + 1] - 1; ++l) CHECK(L.value(R(s.t(k, l)), 0) <= -lg);
    for (long l = 0; l <= q[i]; ++l) CHECK(L.value(R(s.t(k, l)), 0) == 0);
  }
  CHECK(q[0] < q[1]);
  CHECK(q[1] < q[2]);

  auto rep = verify_construction_II(tup, s, {k}, 1);
  REQUIRE(rep.occupations.size() == 3);
  for (const auto& o : rep.occupations) {
    CHECK(o.gap <= 0.05);
    CHECK(o.target == (o.exclude == 0 ? 0.5 : 0.75));
  }
  for (const auto& w : rep.windows) {
    CHECK(w.target == Rational(7, 8));
    CHECK(to_double(w.gap) <= 0.05);
  }
  CHECK_THROWS_AS(verify_construction_II(tup, s, {k}, 10), BandTooWide);
}

TEST_CASE("report serialisation") {
  const auto& s = square_I();
  int k = s.first_k_at(1e7);
  auto rep = verify_construction_I(construction_I(s, k, k), s, {k});
  auto j = report_to_json(rep);
  CHECK(j.contains("windows"));
  CHECK(j["windows"].size() == 2);
  std::ostringstream os;
  write_report_csv(os, rep);
  auto text = os.str();
  CHECK(text.rfind("k,T_k,gamma_k,factor,delta_window,target,gap,envelope_max,bound\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);

  std::ostringstream again;
  write_report_csv(again, verify_construction_I(construction_I(s, k, k), s, {k}));
  CHECK(again.str() == text);
}
