#pragma once

#include "pgn/templates/template.hpp"

#include <string>
#include <vector>

namespace pgn {

struct Point {
  Rational t;
  Rational eps;  // >= 0
};

using PointSequence = std::vector<Point>;

struct AdmissibilityVerdict {
  bool admissible = false;
  bool by_ladm = false;  // (t''-t') >= (m+n)^2 max(eps', eps'')
  bool st1 = false, st2 = false, st3 = false;
  std::string reason;    // first failing condition when not admissible
};

AdmissibilityVerdict check_admissible(const Point& p1, const Point& p2, int m, int n);

// g1 down-then-up, g2 up-then-down, the rest filled by g3 = -(g1+g2)/(m+n-2)
// where g2 <= g3, otherwise L_2 = ... = L_{m+n} = -g1/(m+n-1).
Template standard_template(const Point& p1, const Point& p2, int m, int n);

Template standard_template_seq(const PointSequence& pts, int m, int n);

}  // namespace pgn
