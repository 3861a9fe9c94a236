#include "pgn/constructions/schedule.hpp"

#include "pgn/core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pgn {

Schedule::Schedule(const SystemShape& shape, int kmax, Mode mode, std::vector<Rational> deltas)
    : shape_(shape), kmax_(kmax), mode_(mode), deltas_(std::move(deltas)) {
  if (kmax < 1) throw std::invalid_argument("kmax must be positive");
  if (shape.s() < 2) throw std::invalid_argument("constructions need s >= 2 factors");
  if (mode == Mode::II) {
    if (static_cast<int>(deltas_.size()) != shape.s())
      throw std::invalid_argument("mode II needs one delta per factor");
    Rational total = 0;
    for (const auto& d : deltas_) {
      if (!(d > 0)) throw std::invalid_argument("deltas must be positive");
      total += d;
    }
    for (const auto& d : deltas_)
      if (!(d < total)) throw std::invalid_argument("each delta_i must be below their sum");
    if (total > 1) throw std::invalid_argument("deltas must sum to at most 1");
  } else if (!deltas_.empty()) {
    throw std::invalid_argument("deltas only apply to mode II");
  }

  T_.resize(static_cast<std::size_t>(kmax) + 2);
  T_[0] = 1.0;
  for (std::size_t k = 0; k + 1 < T_.size(); ++k) T_[k + 1] = T_[k] + std::sqrt(T_[k]);

  // least k with every k' in [k, kmax] valid
  int k = kmax;
  if (!valid(k)) throw NoValidK0("no valid k0 up to kmax = " + std::to_string(kmax));
  while (k > 0 && valid(k - 1)) --k;
  k0_ = k;
}

long Schedule::l(int k) const {
  double T = T_.at(k);
  auto l = static_cast<long>(std::cbrt(T));
  auto cube = [](long x) { return static_cast<double>(x) * x * x; };
  while (l > 0 && cube(l) > T) --l;
  while (cube(l + 1) <= T) ++l;
  return l;
}

double Schedule::gamma(int k) const { return std::sqrt(T_.at(k)) / static_cast<double>(l(k)); }

double Schedule::log_gamma(int k) const { return std::log(gamma(k)); }

double Schedule::t(int k, long l) const {
  const long lk = this->l(k);
  if (l < 0 || l > lk) throw std::out_of_range("t_{k,l} index out of range");
  if (l == lk) return T_.at(k + 1);
  return T_.at(k) + static_cast<double>(l) * gamma(k);
}

std::vector<long> Schedule::q(int k) const {
  if (mode_ != Mode::II) throw std::logic_error("q_k^j only exists in mode II");
  const long lk = l(k);
  std::vector<long> out{0};
  Rational D = 0;
  for (const auto& d : deltas_) {
    D += d;
    // l gamma_k <= D sqrt(T_k)  <=>  l <= D l_k
    Rational x = D * lk;
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    out.push_back(std::min<long>(lk, f.get_si()));
  }
  return out;
}

bool Schedule::valid(int k) const {
  const int s = shape_.s();
  const long lk = l(k);
  if (lk < 1) return false;
  const double g = gamma(k), lg = std::log(g);
  for (int i = 0; i < s; ++i) {
    const auto& p = shape_.pair(i);
    double need = static_cast<double>((p.m + p.n) * (p.m + p.n)) * lg;
    if (!(to_double(shape_.weight(i)) * g >= need)) return false;
  }
  if (mode_ == Mode::I) return lk >= 8L * s;
  auto qs = q(k);
  if (lk - qs.back() < 4) return false;
  for (int j = 0; j < s; ++j)
    if (qs[j + 1] - qs[j] < 4) return false;
  return true;
}

int Schedule::first_k_at(double x) const {
  auto it = std::lower_bound(T_.begin(), T_.begin() + kmax_ + 1, x);
  if (it == T_.begin() + kmax_ + 1)
    throw NoValidK0("T_k never reaches the requested scale within kmax = " + std::to_string(kmax_));
  return static_cast<int>(it - T_.begin());
}

}  // namespace pgn
