#include "pgn/core/errors.hpp"
#include "pgn/latflow/lattice.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pgn {

namespace {

constexpr int kMaxDim = 8;

struct Candidate {
  double norm;
  std::array<std::int64_t, kMaxDim> c;
};

// Fincke-Pohst over the R factor of a QR decomposition of an LLL-reduced basis.
// The euclidean ball of radius sqrt(d) r contains the sup ball of radius r, so
// every vector with sup norm <= r is visited; the sup filter is applied at the
// leaves. The budget caps the number of enumeration nodes.
class Enumerator {
 public:
  Enumerator(const LatticeBasis& basis, double budget) : basis_(basis), budget_(budget) {
    d_ = basis.dim();
    if (d_ > kMaxDim) throw std::invalid_argument("dimension too large for enumeration");
    reduce();
    for (int i = 0; i < d_; ++i)
      if (R_(i, i) == 0.0) throw std::invalid_argument("singular basis");
  }


  // Visits every primitive, sign-normalised coefficient vector with sup norm
  // <= r (or < r when strict). The visitor returns false to stop early.
  template <class Visit>
  void run(double r, bool strict, Visit&& visit) {
    rho_ = std::sqrt(static_cast<double>(d_)) * r * (1.0 + 1e-9) + 1e-300;
    nodes_ = 0;
    r_ = r;
    strict_ = strict;
    c_.fill(0);
    stop_ = false;
    descend(d_ - 1, 0.0, true, visit);
  }

 private:
  // Coordinates above i all zero (upper) means x and -x give the same vector
  // up to sign, so only x >= 0 is visited; at the last level only x = 1 can
  // be primitive.
  template <class Visit>
  void descend(int i, double partial, bool upper, Visit& visit) {
    double center = 0.0;
    for (int j = i + 1; j < d_; ++j) center -= R_(i, j) * static_cast<double>(c_[j]);
    center /= R_(i, i);
    double rem = rho_ * rho_ - partial;
    if (rem < 0) return;
    double w = std::sqrt(rem) / std::abs(R_(i, i));
    auto lo = static_cast<std::int64_t>(std::ceil(center - w));
    auto hi = static_cast<std::int64_t>(std::floor(center + w));
    if (upper) {
      lo = std::max<std::int64_t>(lo, i == 0 ? 1 : 0);
      if (i == 0) hi = std::min<std::int64_t>(hi, 1);
    }
    if (hi >= lo && static_cast<double>(hi - lo + 1) + nodes_ > budget_) over_budget();
    for (std::int64_t x = lo; x <= hi && !stop_; ++x) {
      ++nodes_;
      c_[i] = x;
      double y = R_(i, i) * (static_cast<double>(x) - center);
      double p = partial + y * y;
      if (i == 0)
        leaf(visit);
      else
        descend(i - 1, p, upper && x == 0, visit);
    }
    c_[i] = 0;
  }

  [[noreturn]] void over_budget() const {
    std::ostringstream os;
    os << "lattice enumeration exceeds budget of " << budget_ << " nodes at radius " << r_;
    throw BudgetExceeded(os.str());
  }

  // Column k of the reduced basis, evaluated from its integer coordinates.
  Vector reduced_column(int k) const {
    std::vector<std::int64_t> u(d_);
    for (int i = 0; i < d_; ++i) u[i] = U_[i][k];
    return basis_.vector(u);
  }

  void refresh_r(const Matrix& M) {
    Eigen::HouseholderQR<Matrix> qr(M);
    R_ = qr.matrixQR().triangularView<Eigen::Upper>();
  }

  // LLL with delta = 0.99 tracking the unimodular transform U. Only the
  // enumeration geometry depends on it; leaves are mapped back through U
  // and measured on the original basis.
  void reduce() {
    U_.assign(d_, std::vector<std::int64_t>(d_, 0));
    for (int i = 0; i < d_; ++i) U_[i][i] = 1;
    Matrix M(d_, d_);
    for (int k = 0; k < d_; ++k) M.col(k) = reduced_column(k);
    refresh_r(M);
    constexpr double delta = 0.99;
    constexpr std::int64_t kLimit = std::int64_t{1} << 40;
    int k = 1, steps = 0;
    while (k < d_ && steps++ < 4000) {
      bool bounded = true;
      for (int j = k - 1; j >= 0; --j) {
        double mu = R_(j, k) / R_(j, j);
        if (std::abs(mu) <= 0.5) continue;
        double q = std::round(mu);
        if (!(std::abs(q) < static_cast<double>(kLimit))) {
          bounded = false;
          break;
        }
        auto qi = static_cast<std::int64_t>(q);
        for (int i = 0; i < d_; ++i) U_[i][k] -= qi * U_[i][j];
        M.col(k) = reduced_column(k);
        refresh_r(M);
      }
      if (!bounded) break;
      double a = R_(k - 1, k), b = R_(k, k), c = R_(k - 1, k - 1);
      if (a * a + b * b >= delta * c * c) {
        ++k;
      } else {
        for (int i = 0; i < d_; ++i) std::swap(U_[i][k], U_[i][k - 1]);
        M.col(k).swap(M.col(k - 1));
        refresh_r(M);
        k = std::max(k - 1, 1);
      }
    }
  }

  template <class Visit>
  void leaf(Visit& visit) {
    std::array<std::int64_t, kMaxDim> c{};
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < d_; ++j) c[i] += U_[i][j] * c_[j];
    int first = -1;
    std::int64_t g = 0;
    for (int j = 0; j < d_; ++j) {
      if (c[j] != 0 && first < 0) first = j;
      g = std::gcd(g, c[j] < 0 ? -c[j] : c[j]);
    }
    if (first < 0 || g != 1) return;
    if (c[first] < 0)
      for (int j = 0; j < d_; ++j) c[j] = -c[j];
    double nrm = basis_.sup_norm(c.data());
    bool inside = strict_ ? nrm < r_ : nrm <= r_;
    if (!inside) return;
    if (!visit(Candidate{nrm, c})) stop_ = true;
  }

  const LatticeBasis& basis_;
  double budget_;
  int d_ = 0;
  Matrix R_;
  std::vector<std::vector<std::int64_t>> U_;
  double rho_ = 0, r_ = 0, nodes_ = 0;
  bool strict_ = false, stop_ = false;
  std::array<std::int64_t, kMaxDim> c_{};
};

// Fraction-free row echelon form over Z, grown one vector at a time.
class RankTracker {
 public:
  explicit RankTracker(int d) : d_(d) {}
  int rank() const { return static_cast<int>(rows_.size()); }

  bool add_if_independent(const std::int64_t* c) {
    std::vector<mpz_class> v(d_);
    for (int j = 0; j < d_; ++j) v[j] = static_cast<long>(c[j]);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      int p = pivots_[r];
      if (v[p] == 0) continue;
      mpz_class a = rows_[r][p], b = v[p];
      for (int j = 0; j < d_; ++j) v[j] = v[j] * a - rows_[r][j] * b;
      normalise(v);
    }
    for (int j = 0; j < d_; ++j)
      if (v[j] != 0) {
        rows_.push_back(std::move(v));
        pivots_.push_back(j);
        return true;
      }
    return false;
  }

 private:
  static void normalise(std::vector<mpz_class>& v) {
    mpz_class g = 0;
    for (auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
      for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }

  int d_;
  std::vector<std::vector<mpz_class>> rows_;
  std::vector<int> pivots_;
};

bool candidate_less(const Candidate& a, const Candidate& b, int d) {
  if (a.norm != b.norm) return a.norm < b.norm;
  return std::lexicographical_compare(a.c.begin(), a.c.begin() + d, b.c.begin(), b.c.begin() + d);
}

}  // namespace

MinimaResult successive_minima(const LatticeBasis& basis, double budget) {
  const int d = basis.dim();
  Enumerator en(basis, budget);

  double col_cap = 0.0;
  {
    std::vector<std::int64_t> e(d, 0);
    for (int j = 0; j < d; ++j) {
      e.assign(d, 0);
      e[j] = 1;
      col_cap = std::max(col_cap, basis.sup_norm(e.data()));
    }
  }

  double r = std::min(1.0, col_cap);
  std::vector<Candidate> cands;
  for (int round = 0; round < 200; ++round) {
    cands.clear();
    en.run(r, false, [&](const Candidate& c) {
      cands.push_back(c);
      return true;
    });
    std::sort(cands.begin(), cands.end(),
              [d](const Candidate& a, const Candidate& b) { return candidate_less(a, b, d); });
    RankTracker rt(d);
    MinimaResult res;
    for (const auto& c : cands) {
      if (rt.add_if_independent(c.c.data())) {
        res.lambda.push_back(c.norm);
        res.coeffs.emplace_back(c.c.begin(), c.c.begin() + d);
        if (rt.rank() == d) return res;
      }
    }
    // Everything within r is known, so lambda_{k+1}, ..., lambda_d > r and
    // the second theorem of Minkowski (product <= 1) caps lambda_d.
    double cap = col_cap;
    if (!res.lambda.empty()) {
      double prod = 1.0;
      for (double l : res.lambda) prod *= l;
      int missing = d - static_cast<int>(res.lambda.size());
      cap = std::min(cap, 1.0 / (prod * std::pow(r, missing - 1)));
    }
    cap *= 1.0 + 1e-9;
    double next = std::min(2.0 * r, cap);
    if (!(next > r)) next = std::max(2.0 * r, col_cap * (1.0 + 1e-9));
    r = next;
  }
  throw std::runtime_error("successive minima did not converge");
}

double first_minimum(const LatticeBasis& basis, double budget) {
  Enumerator en(basis, budget);
  double best = std::numeric_limits<double>::infinity();
  // lambda_1 <= 1 for a unimodular lattice in the sup norm
  en.run(1.0, false, [&](const Candidate& c) {
    best = std::min(best, c.norm);
    return true;
  });
  if (!std::isfinite(best)) throw std::runtime_error("no vector of sup norm <= 1 found");
  return best;
}

bool has_vector_below(const LatticeBasis& basis, double r, double budget) {
  Enumerator en(basis, budget);
  bool found = false;
  en.run(r, true, [&](const Candidate&) {
    found = true;
    return false;
  });
  return found;
}

}  // namespace pgn
