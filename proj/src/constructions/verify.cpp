#include "pgn/constructions/verify.hpp"

#include "pgn/core/errors.hpp"
#include "pgn/core/format.hpp"
#include "pgn/templates/envelope.hpp"
#include "pgn/templates/rates.hpp"
#include "pgn/templates/template_io.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pgn {

namespace {

Rational R(double x) { return from_double(x); }

void check_ks(const TemplateTuple& tuple, const std::vector<int>& ks) {
  for (int k : ks)
    if (k < tuple.k_first || k > tuple.k_last)
      throw std::invalid_argument("k = " + std::to_string(k) + " lies outside the generated range");
}

std::vector<WeightedTemplate> parts_except(const TemplateTuple& tuple, int skip) {
  std::vector<WeightedTemplate> parts;
  for (int i = 0; i < tuple.shape.s(); ++i)
    if (i != skip) parts.push_back({&tuple.components[i], tuple.shape.weight(i)});
  return parts;
}

Rational min_first_coord(const TemplateTuple& tuple, int skip, const Rational& t) {
  bool first = true;
  Rational best;
  for (int i = 0; i < tuple.shape.s(); ++i) {
    if (i == skip) continue;
    Rational v = tuple.components[i].value(tuple.shape.weight(i) * t, 0);
    if (first || v < best) best = v;
    first = false;
  }
  return best;
}

}  // namespace

VerificationReport verify_construction_I(const TemplateTuple& tuple, const Schedule& sched,
                                         const std::vector<int>& ks) {
  check_ks(tuple, ks);
  const auto& shape = tuple.shape;
  const int s = shape.s();
  VerificationReport rep;
  rep.mode = Mode::I;
  std::vector<RateProfile> prof;
  for (const auto& L : tuple.components) prof.push_back(contraction_rate(L));
  auto all = parts_except(tuple, -1);
  for (int k : ks) {
    const Rational Tk = R(sched.T(k)), Tk1 = R(sched.T(k + 1));
    auto env = min_envelope(all, 0, Tk, Tk1);
    const Rational emax = env.max().first;
    const Rational bound = -R(sched.log_gamma(k));
    for (int i = 0; i < s; ++i) {
      const auto& p = shape.pair(i);
      const Rational& a = shape.weight(i);
      WindowRow row;
      row.k = k;
      row.T_k = sched.T(k);
      row.gamma_k = sched.gamma(k);
      row.factor = i + 1;
      row.delta_window = average_contraction(tuple.components[i], prof[i], a * Tk, a * Tk1);
      row.target = i == 0 ? Rational(p.m * p.n) - shape.b(0) : Rational(p.m * p.n);
      row.gap = abs_rational(row.delta_window - row.target);
      row.envelope_max = emax;
      row.bound = bound;
      rep.windows.push_back(row);
    }
    // the points where each factor in turn is the only one allowed to be low
    for (int j = 0; j < s; ++j) {
      const long l = j == 0 ? 4L * s : 4L * (j + 1) - 6;
      WitnessRow w;
      w.k = k;
      w.j = j + 1;
      w.time = R(sched.t(k, l));
      w.value = min_first_coord(tuple, j, w.time);
      rep.witnesses.push_back(w);
    }
  }
  return rep;
}

VerificationReport verify_construction_II(const TemplateTuple& tuple, const Schedule& sched,
                                          const std::vector<int>& ks, const Rational& C) {
  check_ks(tuple, ks);
  if (!(C > 0)) throw std::invalid_argument("band C must be positive");
  for (int k : ks)
    if (C >= R(sched.log_gamma(k)))
      throw BandTooWide("C = " + to_string(C) + " is not below log gamma_k = " +
                        format_double(sched.log_gamma(k)) + " at k = " + std::to_string(k));
  const auto& shape = tuple.shape;
  const int s = shape.s();
  const auto& deltas = sched.deltas();
  Rational dsum = 0;
  for (const auto& d : deltas) dsum += d;
  VerificationReport rep;
  rep.mode = Mode::II;
  rep.band = C;
  std::vector<RateProfile> prof;
  for (const auto& L : tuple.components) prof.push_back(contraction_rate(L));
  for (int k : ks) {
    const Rational Tk = R(sched.T(k)), Tk1 = R(sched.T(k + 1));
    const double norm = std::sqrt(sched.T(k));
    for (int j = 0; j < s; ++j) {
      const auto& p = shape.pair(j);
      const Rational& a = shape.weight(j);
      WindowRow row;
      row.k = k;
      row.T_k = sched.T(k);
      row.gamma_k = sched.gamma(k);
      row.factor = j + 1;
      row.delta_window = average_contraction(tuple.components[j], prof[j], a * Tk, a * Tk1);
      row.target = Rational(p.m * p.n) - deltas[j] * shape.b(j);
      row.gap = abs_rational(row.delta_window - row.target);
      rep.windows.push_back(row);
    }
    for (int j = -1; j < s; ++j) {
      auto parts = parts_except(tuple, j);
      auto env = min_envelope(parts, 0, Tk, Tk1);
      OccupationRow o;
      o.k = k;
      o.exclude = j + 1;
      o.measured = to_double(env.measure_between(-C, C)) / norm;
      o.target = to_double(1 - (j < 0 ? dsum : Rational(dsum - deltas[j])));
      o.gap = std::abs(o.measured - o.target);
      rep.occupations.push_back(o);
    }
  }
  return rep;
}

nlohmann::json report_to_json(const VerificationReport& rep) {
  nlohmann::json j;
  j["mode"] = rep.mode == Mode::I ? "I" : "II";
  if (rep.band) j["band"] = to_string(*rep.band);
  auto& w = j["windows"] = nlohmann::json::array();
  for (const auto& r : rep.windows) {
    nlohmann::json x{{"k", r.k},
                     {"T_k", r.T_k},
                     {"gamma_k", r.gamma_k},
                     {"factor", r.factor},
                     {"delta_window", to_double(r.delta_window)},
                     {"delta_window_exact", to_string(r.delta_window)},
                     {"target", to_string(r.target)},
                     {"gap", to_double(r.gap)}};
    if (r.envelope_max) {
      x["envelope_max"] = to_double(*r.envelope_max);
      x["bound"] = to_double(*r.bound);
      x["envelope_within_bound"] = *r.envelope_max <= *r.bound;
    }
    w.push_back(std::move(x));
  }
  auto& wit = j["witnesses"] = nlohmann::json::array();
  for (const auto& r : rep.witnesses)
    wit.push_back({{"k", r.k},
                   {"j", r.j},
                   {"t", rational_to_json(r.time)},
                   {"value", to_string(r.value)},
                   {"holds", r.value == 0}});
  auto& occ = j["occupations"] = nlohmann::json::array();
  for (const auto& r : rep.occupations)
    occ.push_back({{"k", r.k},
                   {"exclude", r.exclude},
                   {"occupation", r.measured},
                   {"target", r.target},
                   {"gap", r.gap}});
  return j;
}

void write_report_csv(std::ostream& os, const VerificationReport& rep) {
  os << "k,T_k,gamma_k,factor,delta_window,target,gap,envelope_max,bound\n";
  for (const auto& r : rep.windows) {
    os << r.k << "," << format_double(r.T_k) << "," << format_double(r.gamma_k) << ","
       << r.factor << "," << format_double(to_double(r.delta_window)) << ","
       << to_string(r.target) << "," << format_double(to_double(r.gap)) << ",";
    if (r.envelope_max)
      os << format_double(to_double(*r.envelope_max)) << "," << format_double(to_double(*r.bound));
    else
      os << ",";
    os << "\n";
  }
}

void write_occupation_csv(std::ostream& os, const VerificationReport& rep) {
  os << "k,exclude,occupation,target,gap\n";
  for (const auto& r : rep.occupations)
    os << r.k << "," << r.exclude << "," << format_double(r.measured) << ","
       << format_double(r.target) << "," << format_double(r.gap) << "\n";
}

}  // namespace pgn
