#pragma once

// Univariate polynomials: exact Sturm counting over the rationals and a
// companion-matrix root check in floating point.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "negdep/scalar.hpp"

namespace negdep {

/// Coefficients from low to high degree.
using RationalPoly = std::vector<Rational>;

inline void trim(RationalPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

inline int degree(const RationalPoly& p) { return static_cast<int>(p.size()) - 1; }

inline RationalPoly derivative(const RationalPoly& p) {
  RationalPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * Rational(static_cast<long>(k)));
  trim(d);
  return d;
}

/// Polynomial division a = q b + r; returns r (and q through `quot`).
inline RationalPoly poly_divmod(RationalPoly a, const RationalPoly& b, RationalPoly* quot = nullptr) {
  trim(a);
  if (b.empty()) throw invalid_input("division by the zero polynomial");
  RationalPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const Rational f = a.back() / b.back();
    q[shift] = f;
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= f * b[k];
    a.pop_back();
    trim(a);
  }
  if (quot) {
    trim(q);
    *quot = std::move(q);
  }
  return a;
}

inline RationalPoly poly_gcd(RationalPoly a, RationalPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    RationalPoly r = poly_divmod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Rational lc = a.back();
    for (auto& c : a) c /= lc;
  }
  return a;
}

inline RationalPoly squarefree_part(const RationalPoly& p) {
  RationalPoly g = poly_gcd(p, derivative(p));
  RationalPoly q;
  poly_divmod(p, g, &q);
  return q;
}

/// Number of distinct real roots via a Sturm sequence.
inline int distinct_real_roots(const RationalPoly& p_in) {
  RationalPoly p = p_in;
  trim(p);
  if (degree(p) <= 0) return 0;
  std::vector<RationalPoly> seq{p, derivative(p)};
  while (!seq.back().empty()) {
    RationalPoly r = poly_divmod(seq[seq.size() - 2], seq.back());
    for (auto& c : r) c = -c;
    if (r.empty()) break;
    seq.push_back(std::move(r));
  }
  auto changes = [&](bool at_plus) {
    int count = 0, last = 0;
    for (const auto& s : seq) {
      if (s.empty()) continue;
      int sg = sgn(s.back());
      if (!at_plus && (degree(s) % 2 == 1)) sg = -sg;
      if (last != 0 && sg != last) ++count;
      last = sg;
    }
    return count;
  };
  return changes(false) - changes(true);
}

/// True iff every complex root of p is real (exact).
inline bool all_roots_real(const RationalPoly& p_in) {
  RationalPoly p = p_in;
  trim(p);
  if (degree(p) <= 0) return true;
  const RationalPoly sf = squarefree_part(p);
  return distinct_real_roots(sf) == degree(sf);
}

/// Roots from the companion matrix (floating point).
inline std::vector<std::complex<double>> companion_roots(const std::vector<double>& c_in) {
  std::vector<double> c = c_in;
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  std::vector<std::complex<double>> roots;
  std::size_t low = 0;
  while (low < c.size() && c[low] == 0.0) {
    roots.emplace_back(0.0, 0.0);
    ++low;
  }
  c.erase(c.begin(), c.begin() + static_cast<long>(low));
  const int n = static_cast<int>(c.size()) - 1;
  if (n <= 0) return roots;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) m(i, n - 1) = -c[static_cast<std::size_t>(i)] / c[static_cast<std::size_t>(n)];
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  for (int i = 0; i < n; ++i) roots.push_back(es.eigenvalues()[i]);
  return roots;
}

inline double max_imag_part(const std::vector<std::complex<double>>& roots) {
  double m = 0.0;
  for (const auto& r : roots) m = std::max(m, std::abs(r.imag()));
  return m;
}

}  // namespace negdep
