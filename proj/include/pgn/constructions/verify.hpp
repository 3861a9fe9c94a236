#pragma once

#include "pgn/constructions/construction.hpp"

#include <json.hpp>

#include <optional>
#include <ostream>
#include <vector>

namespace pgn {

struct WindowRow {
  int k = 0;
  double T_k = 0, gamma_k = 0;
  int factor = 0;  // 1-based
  Rational delta_window, target, gap;
  // mode I: exact max over [T_k, T_{k+1}] of min_i L^i_1(a_i t) and -log gamma_k
  std::optional<Rational> envelope_max, bound;
};

struct WitnessRow {
  int k = 0;
  int j = 0;          // 1-based factor left out of the minimum
  Rational time;      // t_{k,4s} for j = 1, t_{k,4j-6} otherwise
  Rational value;     // min_{i != j} L^i_1(a_i time); the claim is == 0
};

struct OccupationRow {
  int k = 0;
  int exclude = 0;    // 1-based factor left out, 0 for all factors
  double measured = 0, target = 0, gap = 0;
};

struct VerificationReport {
  Mode mode = Mode::I;
  std::vector<WindowRow> windows;
  std::vector<WitnessRow> witnesses;
  std::vector<OccupationRow> occupations;
  std::optional<Rational> band;  // C for mode II
};

VerificationReport verify_construction_I(const TemplateTuple& tuple, const Schedule& sched,
                                         const std::vector<int>& ks);
VerificationReport verify_construction_II(const TemplateTuple& tuple, const Schedule& sched,
                                          const std::vector<int>& ks, const Rational& C);

nlohmann::json report_to_json(const VerificationReport& rep);
// k, T_k, gamma_k, factor, delta_window, target, gap, envelope_max, bound
void write_report_csv(std::ostream& os, const VerificationReport& rep);
// k, exclude, occupation, target, gap
void write_occupation_csv(std::ostream& os, const VerificationReport& rep);

}  // namespace pgn
