#pragma once

#include "pgn/core/rational.hpp"

#include <string>
#include <vector>

namespace pgn {

using RVec = std::vector<Rational>;

// Continuous piecewise-linear map [t_0, t_N] -> R^{m+n}, held exactly.
// Coordinates are 0-based here; reports print them 1-based.
class Template {
 public:
  Template(int m, int n, RVec breakpoints, RVec start_values, std::vector<RVec> slopes);

  int m() const { return m_; }
  int n() const { return n_; }
  int dim() const { return m_ + n_; }
  std::size_t segments() const { return slopes_.size(); }

  const RVec& breakpoints() const { return bp_; }
  const RVec& start_values() const { return knots_.front(); }
  const RVec& slopes(std::size_t seg) const { return slopes_[seg]; }
  const std::vector<RVec>& all_slopes() const { return slopes_; }
  // values at breakpoint k
  const RVec& knot(std::size_t k) const { return knots_[k]; }

  const Rational& start() const { return bp_.front(); }
  const Rational& end() const { return bp_.back(); }

  // segment containing t (the right one at interior breakpoints)
  std::size_t segment_of(const Rational& t) const;
  Rational value(const Rational& t, int coord) const;
  RVec values(const Rational& t) const;

 private:
  int m_, n_;
  RVec bp_;
  std::vector<RVec> slopes_;
  std::vector<RVec> knots_;
};

Template trivial_template(int m, int n, const Rational& T);
Template trivial_template(int m, int n, const Rational& t0, const Rational& t1);

// Glues pieces whose domains abut; throws TemplateDiscontinuity when values
// differ at a junction.
Template concatenate(const std::vector<Template>& pieces);

// Restriction to [a, b] inside the domain
Template restrict_to(const Template& L, const Rational& a, const Rational& b);

// Z(j) = {k1/m - k2/n : 0<=k1<=m, 0<=k2<=n, k1+k2=j}, sorted ascending
RVec z_set(int m, int n, int j);

enum class ViolationKind { UnorderedValues, SlopeOutOfRange, FjSlopeNotInZ, FjNotConvex, SumNotConstant };

const char* to_string(ViolationKind k);

struct Violation {
  ViolationKind kind;
  std::size_t where;  // breakpoint index for UnorderedValues, segment index otherwise
  int coord;          // 1-based j; 0 when not tied to a coordinate
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_template(const Template& L);

}  // namespace pgn
