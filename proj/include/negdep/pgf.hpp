#pragma once

// Multi-affine polynomials in z_1..z_d, coefficients indexed like Pmf
// outcomes: coeff[i] multiplies z^i = prod_j z_j^{i_j}.

#include <cstdint>
#include <span>
#include <vector>

#include "negdep/outcome.hpp"
#include "negdep/pmf.hpp"
#include "negdep/scalar.hpp"

namespace negdep {

template <Scalar T>
class MultiAffinePgf {
 public:
  MultiAffinePgf() = default;
  MultiAffinePgf(int d, std::vector<T> coeffs) : d_(d), c_(std::move(coeffs)) {
    if (d < 0 || d > kMaxDim) throw dimension_error("polynomial dimension out of range");
    if (c_.size() != (std::size_t{1} << d)) throw invalid_input("multi-affine polynomial needs 2^d coefficients");
  }
  explicit MultiAffinePgf(const Pmf<T>& f) : d_(f.dim()), c_(f.probs().begin(), f.probs().end()) {}

  int dim() const { return d_; }
  std::size_t size() const { return c_.size(); }
  const T& operator[](std::uint32_t i) const { return c_[i]; }
  T& operator[](std::uint32_t i) { return c_[i]; }
  std::span<const T> coeffs() const { return c_; }

  /// Multi-affine Horner: folds one variable at a time.
  template <Scalar X>
  X evaluate(std::span<const X> x) const {
    if (static_cast<int>(x.size()) != d_) throw invalid_input("evaluation point has the wrong dimension");
    std::vector<X> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = scalar_cast<X>(c_[i]);
    std::size_t n = v.size();
    for (int j = 0; j < d_; ++j) {
      n >>= 1;
      for (std::size_t k = 0; k < n; ++k) v[k] = v[2 * k] + x[static_cast<std::size_t>(j)] * v[2 * k + 1];
    }
    return v[0];
  }

  bool operator==(const MultiAffinePgf&) const = default;

 private:
  int d_ = 0;
  std::vector<T> c_;
};

/// Coefficient shift: [z^i] d_j P = [z^{i + e_j}] P for i_j = 0, zero otherwise.
template <Scalar T>
MultiAffinePgf<T> partial_derivative(const MultiAffinePgf<T>& p, int j) {
  if (j < 0 || j >= p.dim()) throw invalid_input("derivative index out of range");
  std::vector<T> c(p.size(), T(0));
  const std::uint32_t bit = 1u << j;
  for (std::uint32_t i = 0; i < p.size(); ++i)
    if (!(i & bit)) c[i] = p[i | bit];
  return MultiAffinePgf<T>(p.dim(), std::move(c));
}

/// c P(a_1 z_1, ..., a_d z_d) with c = 1.
template <Scalar T>
MultiAffinePgf<T> scale_variables(const MultiAffinePgf<T>& p, std::span<const T> a) {
  if (static_cast<int>(a.size()) != p.dim()) throw invalid_input("scale vector has the wrong dimension");
  for (const T& v : a)
    if (!(v > 0)) throw invalid_input("scale factors must be positive");
  std::vector<T> c(p.size());
  for (std::uint32_t i = 0; i < p.size(); ++i) {
    T v = p[i];
    for (int j = 0; j < p.dim(); ++j)
      if ((i >> j) & 1u) v *= a[static_cast<std::size_t>(j)];
    c[i] = v;
  }
  return MultiAffinePgf<T>(p.dim(), std::move(c));
}

/// Elementary symmetric polynomial E_{d,m} as a coefficient array.
template <Scalar T>
MultiAffinePgf<T> elementary_symmetric(int d, int m) {
  std::vector<T> c(std::size_t{1} << d, T(0));
  for (std::uint32_t i = 0; i < c.size(); ++i)
    if (std::popcount(i) == m) c[i] = 1;
  return MultiAffinePgf<T>(d, std::move(c));
}

/// Checks E_{d,m+1} + z_{d+1} E_{d,m} = E_{d+1,m+1} coefficientwise.
inline bool esp_identity_check(int d, int m) {
  if (d < 0 || m < 0 || m > d || d + 1 > kMaxDim) throw invalid_input("esp identity needs 0 <= m <= d");
  const auto lo = elementary_symmetric<Rational>(d, m + 1);
  const auto hi = elementary_symmetric<Rational>(d, m);
  std::vector<Rational> lhs(std::size_t{1} << (d + 1), Rational(0));
  const std::uint32_t top = 1u << d;
  for (std::uint32_t i = 0; i < lo.size(); ++i) {
    lhs[i] += lo[i];
    lhs[i | top] += hi[i];
  }
  return MultiAffinePgf<Rational>(d + 1, std::move(lhs)) == elementary_symmetric<Rational>(d + 1, m + 1);
}

/// Product of multi-affine polynomials in disjoint variable sets.
template <Scalar T>
MultiAffinePgf<T> disjoint_product(const MultiAffinePgf<T>& p, const MultiAffinePgf<T>& q) {
  if (p.dim() != q.dim()) throw invalid_input("polynomials live in different dimensions");
  std::vector<T> c(p.size(), T(0));
  std::uint32_t vp = 0, vq = 0;  // variables actually used
  for (std::uint32_t i = 0; i < p.size(); ++i)
    if (!is_zero(p[i], 0.0)) vp |= i;
  for (std::uint32_t i = 0; i < q.size(); ++i)
    if (!is_zero(q[i], 0.0)) vq |= i;
  if (vp & vq) throw invalid_input("polynomials share variables");
  for (std::uint32_t i = 0; i < p.size(); ++i) {
    if (is_zero(p[i], 0.0)) continue;
    for (std::uint32_t k = 0; k < q.size(); ++k)
      if (!is_zero(q[k], 0.0)) c[i | k] += p[i] * q[k];
  }
  return MultiAffinePgf<T>(p.dim(), std::move(c));
}

}  // namespace negdep
