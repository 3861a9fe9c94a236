#pragma once

#include "pgn/constructions/schedule.hpp"
#include "pgn/templates/template.hpp"

#include <vector>

namespace pgn {

struct TemplateTuple {
  SystemShape shape;
  int k_first = 0, k_last = 0;
  // component i lives on [a_i * start, a_i * T_{k_last + 1}]
  std::vector<Template> components;
};

// Windows k_first..k_last. Starting at k0 also emits the trivial prefix
// [0, T_{k0}] and the bridge window (mode I) so the tuple starts at time 0.
TemplateTuple construction_I(const Schedule& sched, int k_first, int k_last);
TemplateTuple construction_II(const Schedule& sched, int k_first, int k_last);

// One window [a_i T_k, a_i T_{k+1}] of component i (0-based).
Template window_I(const Schedule& sched, int i, int k);
Template window_II(const Schedule& sched, int i, int k);

}  // namespace pgn
