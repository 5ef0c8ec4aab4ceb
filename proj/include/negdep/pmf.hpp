#pragma once

// Probability mass functions on {0,1}^d and the basic algebra on them:
// marginal means, the law of the component sum, entropy, Frechet bounds,
// marginalization and the convex-order minimal sum law.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "negdep/outcome.hpp"
#include "negdep/scalar.hpp"

namespace negdep {

/// Marginal means p = (p_1, ..., p_d), each in [0,1].
template <Scalar T>
class MarginalMeans {
 public:
  MarginalMeans() = default;
  explicit MarginalMeans(std::vector<T> p) : p_(std::move(p)) {
    if (p_.empty()) throw invalid_input("marginal means need at least one coordinate");
    if (static_cast<int>(p_.size()) > kMaxDim) throw dimension_error("too many coordinates");
    canonicalize_all(p_);
    for (const T& v : p_)
      if (v < 0 || v > 1) throw invalid_input("marginal mean outside [0,1]");
  }

  int dim() const { return static_cast<int>(p_.size()); }
  const T& operator[](int j) const { return p_[static_cast<std::size_t>(j)]; }
  std::span<const T> values() const { return p_; }

  T bullet() const {
    T s = 0;
    for (const T& v : p_) s += v;
    return s;
  }

  /// True when every p_j lies strictly inside (0,1).
  bool interior() const {
    return std::all_of(p_.begin(), p_.end(), [](const T& v) { return v > 0 && v < 1; });
  }

  bool operator==(const MarginalMeans&) const = default;

 private:
  std::vector<T> p_;
};

/// Law of S = I_1 + ... + I_d on {0,...,d}.
template <Scalar T>
class SumPmf {
 public:
  SumPmf() = default;
  explicit SumPmf(std::vector<T> values) : v_(std::move(values)) {
    if (v_.empty()) throw invalid_input("sum pmf needs at least one value");
    canonicalize_all(v_);
    T total = 0;
    for (const T& x : v_) {
      if (x < 0) throw invalid_input("negative probability in sum pmf");
      total += x;
    }
    if (!nearly_equal(total, T(1))) throw invalid_input("sum pmf does not sum to one");
  }

  /// Largest support point d (values are indexed 0..d).
  int dim() const { return static_cast<int>(v_.size()) - 1; }
  const T& operator[](int y) const { return v_[static_cast<std::size_t>(y)]; }
  T at(int y) const { return (y >= 0 && y <= dim()) ? v_[static_cast<std::size_t>(y)] : T(0); }
  std::span<const T> values() const { return v_; }

  T mean() const {
    T m = 0;
    for (int y = 0; y <= dim(); ++y) m += T(y) * v_[static_cast<std::size_t>(y)];
    return m;
  }

  bool operator==(const SumPmf&) const = default;

 private:
  std::vector<T> v_;
};

/// A pmf on {0,1}^d, stored densely by outcome index (see outcome.hpp).
template <Scalar T>
class Pmf {
 public:
  Pmf() = default;

  Pmf(int d, std::vector<T> probs) : d_(d), probs_(std::move(probs)) {
    if (d < 1) throw invalid_input("pmf dimension must be at least 1");
    if (d > kMaxDim) throw dimension_error("pmf dimension too large");
    if (probs_.size() != (std::size_t{1} << d))
      throw invalid_input("pmf needs 2^d probabilities");
    canonicalize_all(probs_);
    T total = 0;
    for (const T& x : probs_) {
      if (x < 0) throw invalid_input("negative probability");
      total += x;
    }
    if (!nearly_equal(total, T(1))) throw invalid_input("probabilities do not sum to one");
  }

  static Pmf point_mass(int d, Outcome at) {
    std::vector<T> probs(std::size_t{1} << d, T(0));
    probs.at(at.bits()) = 1;
    return Pmf(d, std::move(probs));
  }

  /// Independent coordinates with the given means.
  static Pmf product(const MarginalMeans<T>& p) {
    const int d = p.dim();
    std::vector<T> probs(std::size_t{1} << d);
    for (std::uint32_t b = 0; b < probs.size(); ++b) {
      T v = 1;
      for (int j = 0; j < d; ++j) v *= ((b >> j) & 1u) ? p[j] : T(1 - p[j]);
      probs[b] = v;
    }
    return Pmf(d, std::move(probs));
  }

  static Pmf uniform(int d) {
    std::vector<T> probs(std::size_t{1} << d, T(1) / T(static_cast<long>(std::size_t{1} << d)));
    return Pmf(d, std::move(probs));
  }

  int dim() const { return d_; }
  std::size_t size() const { return probs_.size(); }
  const T& operator[](std::uint32_t index) const { return probs_[index]; }
  const T& operator[](Outcome o) const { return probs_[o.bits()]; }
  std::span<const T> probs() const { return probs_; }

  /// Outcomes with positive mass, in index order.
  std::vector<Outcome> support() const {
    std::vector<Outcome> s;
    for (std::uint32_t b = 0; b < probs_.size(); ++b)
      if (probs_[b] > 0) s.emplace_back(b);
    return s;
  }

  bool operator==(const Pmf&) const = default;

 private:
  int d_ = 0;
  std::vector<T> probs_;
};

template <Scalar T>
bool approx_equal(const Pmf<T>& f, const Pmf<T>& g, double tol = kFloatTol) {
  if (f.dim() != g.dim()) return false;
  for (std::uint32_t b = 0; b < f.size(); ++b)
    if (!nearly_equal(f[b], g[b], tol)) return false;
  return true;
}

template <Scalar T>
bool approx_equal(const MarginalMeans<T>& p, const MarginalMeans<T>& q, double tol = kFloatTol) {
  if (p.dim() != q.dim()) return false;
  for (int j = 0; j < p.dim(); ++j)
    if (!nearly_equal(p[j], q[j], tol)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Conversions between arithmetic modes are always explicit.

inline Pmf<double> to_float(const Pmf<Rational>& f) {
  std::vector<double> probs(f.size());
  for (std::uint32_t b = 0; b < f.size(); ++b) probs[b] = f[b].get_d();
  return Pmf<double>(f.dim(), std::move(probs));
}
inline const Pmf<double>& to_float(const Pmf<double>& f) { return f; }

inline MarginalMeans<double> to_float(const MarginalMeans<Rational>& p) {
  std::vector<double> v;
  for (const auto& x : p.values()) v.push_back(x.get_d());
  return MarginalMeans<double>(std::move(v));
}

/// Rationalizes every entry (denominator <= max_den); throws when the
/// rationalized entries do not sum to exactly one.
inline Pmf<Rational> rationalize(const Pmf<double>& f, long max_den = 1'000'000) {
  std::vector<Rational> probs(f.size());
  for (std::uint32_t b = 0; b < f.size(); ++b) probs[b] = rationalize(f[b], max_den);
  return Pmf<Rational>(f.dim(), std::move(probs));
}

inline MarginalMeans<Rational> rationalize(const MarginalMeans<double>& p, long max_den = 1'000'000) {
  std::vector<Rational> v;
  for (double x : p.values()) v.push_back(rationalize(x, max_den));
  return MarginalMeans<Rational>(std::move(v));
}

// ---------------------------------------------------------------------------
// Core operations.

template <Scalar T>
MarginalMeans<T> marginal_means(const Pmf<T>& f) {
  std::vector<T> p(static_cast<std::size_t>(f.dim()), T(0));
  for (std::uint32_t b = 0; b < f.size(); ++b) {
    if (is_zero(f[b], 0.0)) continue;
    for (int j = 0; j < f.dim(); ++j)
      if ((b >> j) & 1u) p[static_cast<std::size_t>(j)] += f[b];
  }
  if constexpr (!is_exact_v<T>) {
    for (auto& v : p) v = std::clamp(v, 0.0, 1.0);
  }
  return MarginalMeans<T>(std::move(p));
}

template <Scalar T>
SumPmf<T> sum_pmf(const Pmf<T>& f) {
  std::vector<T> s(static_cast<std::size_t>(f.dim()) + 1, T(0));
  for (std::uint32_t b = 0; b < f.size(); ++b) s[static_cast<std::size_t>(std::popcount(b))] += f[b];
  return SumPmf<T>(std::move(s));
}

/// Shannon entropy in nats with 0 ln 0 = 0.
template <Scalar T>
double entropy(const Pmf<T>& f) {
  double h = 0.0;
  for (std::uint32_t b = 0; b < f.size(); ++b) {
    const double v = to_double(f[b]);
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

template <Scalar T>
T expectation(const Pmf<T>& f, std::span<const T> phi) {
  if (phi.size() != f.size()) throw invalid_input("function table has the wrong size");
  T e = 0;
  for (std::uint32_t b = 0; b < f.size(); ++b) e += f[b] * phi[b];
  return e;
}

/// E[phi(I)] for an arbitrary function of the outcome.
template <Scalar T, class Fn>
T expectation_of(const Pmf<T>& f, Fn&& phi) {
  T e = 0;
  for (std::uint32_t b = 0; b < f.size(); ++b) e += f[b] * T(phi(Outcome(b)));
  return e;
}

/// Cov(h1(I), h2(I)) for functions of the outcome.
template <Scalar T, class Fn1, class Fn2>
T covariance_of(const Pmf<T>& f, Fn1&& h1, Fn2&& h2) {
  T e1 = 0, e2 = 0, e12 = 0;
  for (std::uint32_t b = 0; b < f.size(); ++b) {
    const T a = T(h1(Outcome(b)));
    const T c = T(h2(Outcome(b)));
    e1 += f[b] * a;
    e2 += f[b] * c;
    e12 += f[b] * a * c;
  }
  return T(e12 - e1 * e2);
}

template <Scalar T>
T covariance(const Pmf<T>& f, int j1, int j2) {
  T e12 = 0, e1 = 0, e2 = 0;
  const std::uint32_t m1 = 1u << j1, m2 = 1u << j2;
  for (std::uint32_t b = 0; b < f.size(); ++b) {
    if (b & m1) e1 += f[b];
    if (b & m2) e2 += f[b];
    if ((b & m1) && (b & m2)) e12 += f[b];
  }
  return T(e12 - e1 * e2);
}

/// Minimal sum law in convex order for mean p_bullet on {0,...,d}:
/// mass m+1-p_bullet at m and p_bullet-m at m+1, m = floor(p_bullet).
template <Scalar T>
SumPmf<T> s_min(const T& p_bullet, int d) {
  if (d < 1) throw invalid_input("dimension must be at least 1");
  if (!(p_bullet > 0) || !(p_bullet < d)) throw invalid_input("p_bullet must lie in (0, d)");
  long m;
  if constexpr (is_exact_v<T>) {
    mpz_class q = p_bullet.get_num() / p_bullet.get_den();  // floor for positives
    m = q.get_si();
  } else {
    m = static_cast<long>(std::floor(p_bullet));
  }
  std::vector<T> s(static_cast<std::size_t>(d) + 1, T(0));
  s[static_cast<std::size_t>(m)] = T(m + 1) - p_bullet;
  if (m + 1 <= d) s[static_cast<std::size_t>(m + 1)] = p_bullet - T(m);
  return SumPmf<T>(std::move(s));
}

/// floor(p_bullet) as an integer, the lower of the two levels carrying
/// Sigma-countermonotonic mass.
template <Scalar T>
int floor_level(const T& p_bullet) {
  if constexpr (is_exact_v<T>) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), p_bullet.get_num_mpz_t(), p_bullet.get_den_mpz_t());
    return static_cast<int>(q.get_si());
  } else {
    return static_cast<int>(std::floor(p_bullet + 1e-12));
  }
}

/// True iff the lower Frechet bound of B_d(p) is a distribution.
template <Scalar T>
bool frechet_lower_is_pmf(const MarginalMeans<T>& p) {
  const T pb = p.bullet();
  const int d = p.dim();
  if constexpr (is_exact_v<T>) {
    return pb <= 1 || pb >= d - 1;
  } else {
    return pb <= 1 + kFloatTol || pb >= d - 1 - kFloatTol;
  }
}

/// The pmf whose cdf is max(F_1 + ... + F_d - d + 1, 0).
template <Scalar T>
Pmf<T> lower_frechet_pmf(const MarginalMeans<T>& p) {
  if (!frechet_lower_is_pmf(p))
    throw invalid_input("lower Frechet bound is not a distribution (need p_bullet <= 1 or >= d-1)");
  const int d = p.dim();
  const std::uint32_t full = (1u << d) - 1u;
  std::vector<T> probs(std::size_t{1} << d, T(0));
  const T pb = p.bullet();
  const bool low = is_exact_v<T> ? bool(pb <= 1) : bool(to_double(pb) <= 1 + kFloatTol);
  if (low) {
    probs[0] = T(1) - pb;
    for (int j = 0; j < d; ++j) probs[1u << j] += p[j];
  } else {
    // Complementary construction: flip every bit.
    T ones = T(1);
    for (int j = 0; j < d; ++j) ones -= T(1) - p[j];
    probs[full] = ones;
    for (int j = 0; j < d; ++j) probs[full & ~(1u << j)] += T(1) - p[j];
  }
  if constexpr (!is_exact_v<T>) {
    for (auto& v : probs) v = std::max(v, 0.0);
  }
  return Pmf<T>(d, std::move(probs));
}

/// Law of (I_j : j in subset), coordinates in the order given.
template <Scalar T>
Pmf<T> marginalize(const Pmf<T>& f, const std::vector<int>& subset) {
  if (subset.empty()) throw invalid_input("marginalize needs a nonempty subset");
  (void)indices_to_mask(subset, f.dim());  // range and duplicate checks
  const int k = static_cast<int>(subset.size());
  std::vector<T> probs(std::size_t{1} << k, T(0));
  for (std::uint32_t b = 0; b < f.size(); ++b) {
    std::uint32_t c = 0;
    for (int t = 0; t < k; ++t) c |= ((b >> subset[static_cast<std::size_t>(t)]) & 1u) << t;
    probs[c] += f[b];
  }
  return Pmf<T>(k, std::move(probs));
}

/// Sum over j1<j2 of E[I_j1 I_j2], computed as E[S(S-1)]/2.
template <Scalar T>
T cross_moment_sum(const Pmf<T>& f) {
  const SumPmf<T> s = sum_pmf(f);
  T acc = 0;
  for (int y = 2; y <= s.dim(); ++y) acc += T(static_cast<long>(y) * (y - 1)) * s[y];
  return T(acc / 2);
}

/// Mixture (1-alpha) f + alpha g.
template <Scalar T>
Pmf<T> mix(const Pmf<T>& f, const Pmf<T>& g, const T& alpha) {
  if (f.dim() != g.dim()) throw invalid_input("mixture of pmfs with different dimensions");
  if (alpha < 0 || alpha > 1) throw invalid_input("mixture weight outside [0,1]");
  std::vector<T> probs(f.size());
  for (std::uint32_t b = 0; b < f.size(); ++b) probs[b] = (T(1) - alpha) * f[b] + alpha * g[b];
  return Pmf<T>(f.dim(), std::move(probs));
}

/// True when f(i) depends on i only through its level.
template <Scalar T>
bool is_exchangeable(const Pmf<T>& f, double tol = kFloatTol) {
  std::vector<const T*> first(static_cast<std::size_t>(f.dim()) + 1, nullptr);
  for (std::uint32_t b = 0; b < f.size(); ++b) {
    auto& ref = first[static_cast<std::size_t>(std::popcount(b))];
    if (!ref)
      ref = &f[b];
    else if (!nearly_equal(*ref, f[b], tol))
      return false;
  }
  return true;
}

/// True when the support lies in levels {lo, ..., hi}.
template <Scalar T>
bool supported_on_levels(const Pmf<T>& f, int lo, int hi, double tol = 0.0) {
  for (std::uint32_t b = 0; b < f.size(); ++b) {
    const int l = std::popcount(b);
    if ((l < lo || l > hi) && !is_zero(f[b], tol)) return false;
  }
  return true;
}

}  // namespace negdep
