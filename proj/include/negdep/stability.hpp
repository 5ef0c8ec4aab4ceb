#pragma once

// Strongly Rayleigh decisions for multi-affine pgfs.
//
// A multi-affine real polynomial P is real stable iff the Rayleigh gap
//   d_a P(x) d_b P(x) - d_a d_b P(x) P(x)
// is nonnegative for all pairs a, b and all real x. Writing
// P = A + x_a B + x_b C + x_a x_b D (A..D free of x_a, x_b), the gap is
// B C - A D, a function of the other d-2 variables only, quadratic in each.
// That structure drives the falsification search below.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "negdep/maxent.hpp"
#include "negdep/pgf.hpp"
#include "negdep/pmf.hpp"
#include "negdep/poly.hpp"

namespace negdep {

/// Rayleigh gap at x, by four multi-affine evaluations.
template <Scalar T>
T rayleigh_gap(const MultiAffinePgf<T>& p, int j1, int j2, std::span<const T> x) {
  if (j1 == j2) throw invalid_input("rayleigh gap needs two distinct indices");
  const auto da = partial_derivative(p, j1);
  const auto db = partial_derivative(p, j2);
  const auto dab = partial_derivative(da, j2);
  return T(da.evaluate(x) * db.evaluate(x) - dab.evaluate(x) * p.evaluate(x));
}

enum class SRStatus { StableCertified, LikelyStable, NotStable };
enum class SRMethod { None, Linear, SymmetricRealRooted, ConditionalBernoulli, Product };

inline std::string to_string(SRStatus s) {
  switch (s) {
    case SRStatus::StableCertified: return "StableCertified";
    case SRStatus::LikelyStable: return "LikelyStable";
    case SRStatus::NotStable: return "NotStable";
  }
  return "?";
}

inline std::string to_string(SRMethod m) {
  switch (m) {
    case SRMethod::None: return "none";
    case SRMethod::Linear: return "linear";
    case SRMethod::SymmetricRealRooted: return "symmetric-real-rooted";
    case SRMethod::ConditionalBernoulli: return "conditional-bernoulli";
    case SRMethod::Product: return "product";
  }
  return "?";
}

struct SearchBudget {
  std::uint64_t seed = 1;
  int starts = 64;          // per pair
  double radius = 10.0;     // starting box [-R, R]
  double max_abs = 1e3;     // search box for descent and sweep
  double gap_tol = 1e-9;
  long lattice_points = 200000;  // per pair
  int max_sweeps = 100;
};

struct SRStats {
  long samples = 0;        // gap evaluations at start and lattice points
  long local_minima = 0;   // descent runs completed
  double min_gap = std::numeric_limits<double>::infinity();
  int pairs = 0;
  double max_root_imag = 0.0;  // symmetric route only
};

struct SRWitness {
  int j1 = 0, j2 = 0;
  std::vector<double> x;
  double gap = 0.0;
  Rational exact_gap;
};

struct SRVerdict {
  SRStatus status = SRStatus::LikelyStable;
  SRMethod method = SRMethod::None;
  SRStats stats;
  std::optional<SRWitness> witness;
};

namespace detail {

// Coefficients of A, B, C, D over the remaining coordinates.
template <class X>
struct GapParts {
  std::vector<X> a, b, c, dd;
  std::vector<int> rest;
};

template <Scalar T, class X>
GapParts<X> gap_parts(const MultiAffinePgf<T>& p, int j1, int j2) {
  GapParts<X> g;
  const int d = p.dim();
  for (int j = 0; j < d; ++j)
    if (j != j1 && j != j2) g.rest.push_back(j);
  const std::size_t n = std::size_t{1} << g.rest.size();
  g.a.assign(n, X(0));
  g.b.assign(n, X(0));
  g.c.assign(n, X(0));
  g.dd.assign(n, X(0));
  std::uint32_t rest_mask = 0;
  for (int j : g.rest) rest_mask |= 1u << j;
  for (std::uint32_t i = 0; i < p.size(); ++i) {
    const std::uint32_t k = extract_bits(i, rest_mask);
    const bool ba = (i >> j1) & 1u, bb = (i >> j2) & 1u;
    auto& dst = ba ? (bb ? g.dd : g.b) : (bb ? g.c : g.a);
    dst[k] = scalar_cast<X>(p[i]);
  }
  return g;
}

template <class X>
X fold(const std::vector<X>& c, std::span<const X> y, std::vector<X>& buf) {
  buf = c;
  std::size_t n = buf.size();
  for (std::size_t j = 0; j < y.size(); ++j) {
    n >>= 1;
    for (std::size_t k = 0; k < n; ++k) buf[k] = buf[2 * k] + y[j] * buf[2 * k + 1];
  }
  return buf[0];
}

template <class X>
struct GapEval {
  const GapParts<X>& parts;
  mutable std::vector<X> buf;
  X operator()(std::span<const X> y) const {
    const X a = fold(parts.a, y, buf), b = fold(parts.b, y, buf);
    const X c = fold(parts.c, y, buf), dd = fold(parts.dd, y, buf);
    return b * c - a * dd;
  }
};

// Minimizes a quadratic q(t) = a t^2 + b t + c over [-L, L].
inline double argmin_quadratic(double a, double b, double c, double lim) {
  auto q = [&](double t) { return (a * t + b) * t + c; };
  double best = q(-lim) < q(lim) ? -lim : lim;
  if (a > 0) {
    const double t = std::clamp(-b / (2 * a), -lim, lim);
    if (q(t) < q(best)) best = t;
  }
  return best;
}

// Coordinate descent: the gap is quadratic in each coordinate.
inline double descend(const GapEval<double>& g, std::vector<double>& y, const SearchBudget& budget) {
  double cur = g(y);
  for (int sweep = 0; sweep < budget.max_sweeps; ++sweep) {
    const double before = cur;
    for (std::size_t k = 0; k < y.size(); ++k) {
      const double keep = y[k];
      y[k] = -1.0;
      const double gm = g(y);
      y[k] = 0.0;
      const double g0 = g(y);
      y[k] = 1.0;
      const double gp = g(y);
      const double a = 0.5 * (gp + gm) - g0, b = 0.5 * (gp - gm);
      const double t = argmin_quadratic(a, b, g0, budget.max_abs);
      y[k] = t;
      const double v = g(y);
      if (v <= cur) {
        cur = v;
      } else {
        y[k] = keep;
      }
    }
    if (before - cur <= 1e-15 * std::max(1.0, std::abs(cur))) break;
  }
  return cur;
}

inline std::vector<double> lattice_values(int dims, long budget_points) {
  static const std::vector<std::vector<double>> nested = {
      {0.0, -1.0, 1.0, -1000.0, 1000.0},
      {0.0, -1.0, 1.0, -10.0, 10.0, -1000.0, 1000.0},
      {0.0, -1.0, 1.0, -10.0, 10.0, -100.0, 100.0, -1000.0, 1000.0},
      {0.0, -0.1, 0.1, -1.0, 1.0, -10.0, 10.0, -100.0, 100.0, -1000.0, 1000.0},
  };
  std::vector<double> chosen = nested.front();
  for (const auto& v : nested) {
    double count = std::pow(static_cast<double>(v.size()), dims);
    if (count <= static_cast<double>(budget_points)) chosen = v;
  }
  return chosen;
}

template <Scalar T>
Rational exact_gap(const MultiAffinePgf<T>& p, int j1, int j2, const std::vector<double>& y) {
  std::vector<Rational> coeffs(p.size());
  for (std::uint32_t i = 0; i < p.size(); ++i) coeffs[i] = Rational(p[i]);
  const MultiAffinePgf<Rational> q(p.dim(), std::move(coeffs));
  const auto parts = gap_parts<Rational, Rational>(q, j1, j2);
  std::vector<Rational> yy(y.begin(), y.end());
  GapEval<Rational> g{parts, {}};
  return g(std::span<const Rational>(yy));
}

}  // namespace detail

/// Searches every pair for a negative Rayleigh gap.
template <Scalar T>
SRVerdict falsify_stability(const MultiAffinePgf<T>& p, const SearchBudget& budget = {}) {
  SRVerdict v;
  v.status = SRStatus::LikelyStable;
  const int d = p.dim();
  std::mt19937_64 rng(budget.seed);
  std::uniform_real_distribution<double> unif(-budget.radius, budget.radius);
  for (int j1 = 0; j1 < d; ++j1)
    for (int j2 = j1 + 1; j2 < d; ++j2) {
      ++v.stats.pairs;
      const auto parts = detail::gap_parts<T, double>(p, j1, j2);
      detail::GapEval<double> g{parts, {}};
      const int k = static_cast<int>(parts.rest.size());
      std::vector<std::vector<double>> candidates;

      std::vector<double> y(static_cast<std::size_t>(k));
      for (int s = 0; s < budget.starts; ++s) {
        for (auto& t : y) t = unif(rng);
        ++v.stats.samples;
        const double val = detail::descend(g, y, budget);
        ++v.stats.local_minima;
        v.stats.min_gap = std::min(v.stats.min_gap, val);
        if (val < -budget.gap_tol) candidates.push_back(y);
        if (k == 0) break;
      }
      if (k > 0 && candidates.empty()) {
        // Lattice sweep over nested magnitude sets.
        const auto vals = detail::lattice_values(k, budget.lattice_points);
        std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
        double best = std::numeric_limits<double>::infinity();
        std::vector<double> best_y;
        for (;;) {
          for (int t = 0; t < k; ++t) y[static_cast<std::size_t>(t)] = vals[idx[static_cast<std::size_t>(t)]];
          ++v.stats.samples;
          const double val = g(y);
          if (val < best) {
            best = val;
            best_y = y;
          }
          int t = 0;
          while (t < k && ++idx[static_cast<std::size_t>(t)] == vals.size()) idx[static_cast<std::size_t>(t++)] = 0;
          if (t == k) break;
        }
        const double val = detail::descend(g, best_y, budget);
        ++v.stats.local_minima;
        v.stats.min_gap = std::min({v.stats.min_gap, best, val});
        if (val < -budget.gap_tol) candidates.push_back(best_y);
      }
      for (const auto& cand : candidates) {
        const Rational ex = detail::exact_gap(p, j1, j2, cand);
        if (ex < Rational(-budget.gap_tol)) {
          SRWitness w;
          w.j1 = j1;
          w.j2 = j2;
          w.x.assign(static_cast<std::size_t>(d), 0.0);
          for (int t = 0; t < k; ++t)
            w.x[static_cast<std::size_t>(parts.rest[static_cast<std::size_t>(t)])] = cand[static_cast<std::size_t>(t)];
          w.exact_gap = ex;
          w.gap = ex.get_d();
          v.status = SRStatus::NotStable;
          v.witness = std::move(w);
          return v;
        }
      }
    }
  return v;
}

namespace detail {

template <Scalar T>
bool support_in_levels(const Pmf<T>& f, int lo, int hi) {
  return supported_on_levels(f, lo, hi, 0.0);
}

template <Scalar T>
bool recognized_conditional_bernoulli(const Pmf<T>& f) {
  const auto levels = [&] {
    std::vector<int> l;
    const auto s = sum_pmf(f);
    for (int y = 0; y <= s.dim(); ++y)
      if (sign_of(s[y], 0.0) > 0) l.push_back(y);
    return l;
  }();
  if (levels.empty() || levels.back() - levels.front() > 1 || f.dim() < 2) return false;
  for (std::uint32_t i = 0; i < f.size(); ++i) {
    const int l = std::popcount(i);
    if ((l == levels.front() || l == levels.back()) && !(sign_of(f[i], 0.0) > 0)) return false;
  }
  try {
    const auto pf = to_float(f);
    const auto res = solve_max_entropy(marginal_means(pf));
    return approx_equal(res.pmf, pf, 1e-10);
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace detail

/// Strongly Rayleigh decision: structural certificates first, then search.
template <Scalar T>
SRVerdict is_strongly_rayleigh(const Pmf<T>& f, const SearchBudget& budget = {}) {
  const int d = f.dim();
  SRVerdict v;
  // (a) linear pgf, or its bit-flipped counterpart.
  if (detail::support_in_levels(f, 0, 1) || detail::support_in_levels(f, d - 1, d)) {
    v.status = SRStatus::StableCertified;
    v.method = SRMethod::Linear;
    return v;
  }
  // (b) independent coordinates.
  if (approx_equal(f, Pmf<T>::product(marginal_means(f)), kFloatTol)) {
    v.status = SRStatus::StableCertified;
    v.method = SRMethod::Product;
    return v;
  }
  // (c) exchangeable: stable iff the pgf of the sum is real-rooted.
  double max_imag = 0.0;
  if (is_exchangeable(f)) {
    const auto s = sum_pmf(f);
    RationalPoly q;
    std::vector<double> qd;
    for (int y = 0; y <= d; ++y) {
      q.push_back(Rational(s[y]));
      qd.push_back(to_double(s[y]));
    }
    max_imag = max_imag_part(companion_roots(qd));
    if (all_roots_real(q)) {
      v.status = SRStatus::StableCertified;
      v.method = SRMethod::SymmetricRealRooted;
      v.stats.max_root_imag = max_imag;
      return v;
    }
  }
  // (d) conditional Bernoulli form reproduced by the maximum-entropy solver.
  if (detail::recognized_conditional_bernoulli(f)) {
    v.status = SRStatus::StableCertified;
    v.method = SRMethod::ConditionalBernoulli;
    return v;
  }
  // (e) falsification.
  v = falsify_stability(MultiAffinePgf<T>(f), budget);
  v.stats.max_root_imag = max_imag;
  return v;
}

}  // namespace negdep
