#include "pgn/latflow/diophantine.hpp"

#include "pgn/core/errors.hpp"
#include "pgn/core/format.hpp"

#include <cmath>
#include <exception>
#include <sstream>
#include <stdexcept>

namespace pgn {

namespace {

// largest B >= 0 with B^n <= Q
std::int64_t root_floor(double Q, int n) {
  auto B = static_cast<std::int64_t>(std::floor(std::pow(Q, 1.0 / n)));
  auto pw = [n](std::int64_t b) {
    double r = 1;
    for (int k = 0; k < n; ++k) r *= static_cast<double>(b);
    return r;
  };
  while (B > 0 && pw(B) > Q) --B;
  while (pw(B + 1) <= Q) ++B;
  return B;
}

double twice_dot(const Matrix& theta, int row, const std::vector<std::int64_t>& q,
                 double& lo_part) {
  double s = 0.0, err = 0.0;
  for (int j = 0; j < static_cast<int>(q.size()); ++j) {
    double x = theta(row, j), y = static_cast<double>(q[j]);
    double p = x * y;
    double pe = std::fma(x, y, -p);
    double t = s + p;
    double z = t - s;
    err += pe + ((s - (t - z)) + (p - z));
    s = t;
  }
  lo_part = err;
  return s;
}

bool better(const QWitness& a, const QWitness& b) {
  if (a.error != b.error) return a.error < b.error;
  return a.qnorm < b.qnorm;
}

void check_step(const OccupationGrid& g) {
  if (!(g.step > 0) || g.step > 0.1) throw std::invalid_argument("step must lie in (0, 0.1]");
  if (!(g.T > 0)) throw std::invalid_argument("horizon T must be positive");
}

char indicator_at(const MatrixTuple& theta, const SystemShape& shape, double eps, double t,
                  std::optional<int> exclude, double budget) {
  for (int i = 0; i < shape.s(); ++i) {
    if (exclude && *exclude == i) continue;
    double Q = std::exp(to_double(shape.weight(i)) * t);
    if (scan_Q(theta[i], eps, Q, budget)) return 1;
  }
  return 0;
}

template <class F>
std::vector<char> collect_parallel(const std::vector<double>& pts, F&& f) {
  const long N = static_cast<long>(pts.size());
  std::vector<char> ind(pts.size(), 0);
  std::vector<std::exception_ptr> errs(pts.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long k = 0; k < N; ++k) {
    try {
      ind[k] = f(pts[k]);
    } catch (...) {
      errs[k] = std::current_exception();
    }
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return ind;
}

template <class F>
std::vector<char> collect_serial(const std::vector<double>& pts, F&& f) {
  std::vector<char> ind;
  ind.reserve(pts.size());
  for (double t : pts) ind.push_back(f(t));
  return ind;
}

}  // namespace

std::optional<QWitness> scan_Q(const Matrix& theta, double eps, double Q, double budget) {
  const int m = static_cast<int>(theta.rows()), n = static_cast<int>(theta.cols());
  if (m < 1 || n < 1) throw std::invalid_argument("theta must be nonempty");
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  if (!(Q >= 1)) throw std::invalid_argument("Q must be >= 1");
  const std::int64_t B = root_floor(Q, n);
  double cells = std::pow(2.0 * static_cast<double>(B) + 1.0, n);
  if (!(cells <= budget)) {
    std::ostringstream os;
    os << "q-box of " << cells << " cells exceeds budget " << budget;
    throw BudgetExceeded(os.str());
  }
  const double bound = eps / Q;

  std::optional<QWitness> best;
  std::vector<std::int64_t> q(n, -B);
  std::vector<std::int64_t> p(m);
  for (;;) {
    int first = -1;
    std::int64_t qn = 0;
    for (int j = 0; j < n; ++j) {
      if (q[j] != 0 && first < 0) first = j;
      qn = std::max<std::int64_t>(qn, q[j] < 0 ? -q[j] : q[j]);
    }
    if (first >= 0 && q[first] > 0) {
      double err = 0.0;
      for (int i = 0; i < m; ++i) {
        double lo = 0.0;
        double hi = twice_dot(theta, i, q, lo);
        double r = std::nearbyint(hi);
        double e = (hi - r) + lo;
        // the low part can move theta q across a half-integer
        if (e > 0.5) {
          r += 1;
          e -= 1;
        } else if (e < -0.5) {
          r -= 1;
          e += 1;
        }
        p[i] = static_cast<std::int64_t>(r);
        err = std::max(err, std::abs(e));
      }
      if (std::pow(err, m) < bound) {
        QWitness w{0, p, q, err, qn};
        if (!best || better(w, *best)) best = w;
      }
    }
    int j = n - 1;
    while (j >= 0 && q[j] == B) q[j--] = -B;
    if (j < 0) break;
    ++q[j];
  }
  return best;
}

std::vector<double> OccupationGrid::points() const {
  auto N = static_cast<long>(std::llround(T / step));
  std::vector<double> pts(N);
  for (long k = 0; k < N; ++k) pts[k] = static_cast<double>(k) * step;
  return pts;
}

std::vector<char> occupation_indicators(const MatrixTuple& theta, const SystemShape& shape,
                                        double eps, const OccupationGrid& grid,
                                        std::optional<int> exclude, double budget) {
  check_tuple(theta, shape);
  check_step(grid);
  return collect_parallel(grid.points(), [&](double t) {
    return indicator_at(theta, shape, eps, t, exclude, budget);
  });
}

std::vector<char> occupation_indicators_serial(const MatrixTuple& theta, const SystemShape& shape,
                                               double eps, const OccupationGrid& grid,
                                               std::optional<int> exclude, double budget) {
  check_tuple(theta, shape);
  check_step(grid);
  return collect_serial(grid.points(), [&](double t) {
    return indicator_at(theta, shape, eps, t, exclude, budget);
  });
}

double fraction(const std::vector<char>& ind) {
  if (ind.empty()) return 0.0;
  long cnt = 0;
  for (char c : ind) cnt += c;
  return static_cast<double>(cnt) / static_cast<double>(ind.size());
}

double occupation_joint(const MatrixTuple& theta, const SystemShape& shape, double eps,
                        const OccupationGrid& grid, std::optional<int> exclude, double budget) {
  return fraction(occupation_indicators(theta, shape, eps, grid, exclude, budget));
}

double occupation_joint_serial(const MatrixTuple& theta, const SystemShape& shape, double eps,
                               const OccupationGrid& grid, std::optional<int> exclude,
                               double budget) {
  return fraction(occupation_indicators_serial(theta, shape, eps, grid, exclude, budget));
}

namespace {

char cusp_at(const Matrix& theta, double r, double t, double budget) {
  try {
    return has_vector_below(flowed_basis(theta, t), r, budget) ? 1 : 0;
  } catch (const BudgetExceeded& e) {
    throw BudgetExceeded(std::string(e.what()) + " at t = " + format_double(t), t);
  }
}

void check_r(double r) {
  if (!(r > 0 && r < 1)) throw std::invalid_argument("threshold r must lie in (0,1)");
}

}  // namespace

double cusp_occupation(const Matrix& theta, double r, const OccupationGrid& grid, double budget) {
  check_r(r);
  check_step(grid);
  return fraction(
      collect_parallel(grid.points(), [&](double t) { return cusp_at(theta, r, t, budget); }));
}

double cusp_occupation_serial(const Matrix& theta, double r, const OccupationGrid& grid,
                              double budget) {
  check_r(r);
  check_step(grid);
  return fraction(
      collect_serial(grid.points(), [&](double t) { return cusp_at(theta, r, t, budget); }));
}

}  // namespace pgn
