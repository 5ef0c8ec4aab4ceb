#pragma once

// Vertices of the Frechet polytope B_d(p) and of its Sigma-countermonotonic
// face, convex decompositions over those vertices, and random sampling.
//
// Vertices are basic feasible solutions of
//   f >= 0 on the support,  sum f = 1,  sum_{i_j = 1} f = p_j.
// Candidate bases are screened in floating point; every reported vertex is
// re-solved and verified in exact arithmetic.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <unordered_set>
#include <vector>

#include "negdep/linalg.hpp"
#include "negdep/lp.hpp"
#include "negdep/pmf.hpp"

namespace negdep {

inline constexpr int kMaxVertexDimFull = 5;
inline constexpr int kMaxVertexDimSigma = 6;

struct FrechetPolytope {
  int d = 0;
  MarginalMeans<Rational> p;
  bool sigma = false;
  std::vector<std::uint32_t> support;  // outcome indices allowed to carry mass
  std::vector<Pmf<Rational>> vertices;
};

/// Levels carrying the Sigma-countermonotonic mass: {m} if p_bullet = m, else {m, m+1}.
inline std::vector<std::uint32_t> sigma_support(int d, const Rational& p_bullet) {
  const int m = floor_level(p_bullet);
  const bool integer = p_bullet == Rational(m);
  std::vector<std::uint32_t> s;
  for (std::uint32_t i = 0; i < (1u << d); ++i) {
    const int l = std::popcount(i);
    if (l == m || (!integer && l == m + 1)) s.push_back(i);
  }
  return s;
}

namespace detail {

template <Scalar T>
Matrix<T> marginal_constraints(int d, const std::vector<std::uint32_t>& support) {
  Matrix<T> a(d + 1, static_cast<int>(support.size()));
  for (std::size_t c = 0; c < support.size(); ++c) {
    a(0, static_cast<int>(c)) = 1;
    for (int j = 0; j < d; ++j)
      if ((support[c] >> j) & 1u) a(j + 1, static_cast<int>(c)) = 1;
  }
  return a;
}

inline std::vector<Rational> marginal_rhs(const MarginalMeans<Rational>& p) {
  std::vector<Rational> b{Rational(1)};
  for (int j = 0; j < p.dim(); ++j) b.push_back(p[j]);
  return b;
}

// Small dense solve with partial pivoting; false when (nearly) singular.
inline bool solve_small(std::vector<double> a, std::vector<double> b, int n, std::vector<double>& x) {
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
    if (std::abs(a[piv * n + c]) < 1e-10) return false;
    if (piv != c) {
      for (int k = 0; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
      std::swap(b[c], b[piv]);
    }
    for (int r = c + 1; r < n; ++r) {
      const double f = a[r * n + c] / a[c * n + c];
      if (f == 0.0) continue;
      for (int k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
      b[r] -= f * b[c];
    }
  }
  x.assign(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int k = r + 1; k < n; ++k) s -= a[r * n + k] * x[k];
    x[r] = s / a[r * n + r];
  }
  return true;
}

inline bool lex_less(const Pmf<Rational>& a, const Pmf<Rational>& b) {
  for (std::uint32_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return false;
}

}  // namespace detail

/// Exact vertex enumeration of B_d(p) (or of its Sigma face).
inline FrechetPolytope enumerate_vertices(const MarginalMeans<Rational>& p, bool restrict_sigma) {
  const int d = p.dim();
  if (!p.interior()) throw invalid_input("vertex enumeration needs p in (0,1)^d");
  if (d > (restrict_sigma ? kMaxVertexDimSigma : kMaxVertexDimFull))
    throw dimension_error("dimension above the vertex-enumeration bound");
  FrechetPolytope poly;
  poly.d = d;
  poly.p = p;
  poly.sigma = restrict_sigma;
  if (restrict_sigma) {
    poly.support = sigma_support(d, p.bullet());
  } else {
    for (std::uint32_t i = 0; i < (1u << d); ++i) poly.support.push_back(i);
  }
  const int n = static_cast<int>(poly.support.size());
  const Matrix<Rational> a_full = detail::marginal_constraints<Rational>(d, poly.support);
  const std::vector<Rational> b_full = detail::marginal_rhs(p);
  const std::vector<int> rows = independent_rows(a_full);
  const int r = static_cast<int>(rows.size());
  const Matrix<Rational> a = a_full.select_rows(rows);
  std::vector<Rational> b;
  for (int row : rows) b.push_back(b_full[static_cast<std::size_t>(row)]);

  std::vector<double> ad(static_cast<std::size_t>(r) * n), bd(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) {
    bd[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(i)].get_d();
    for (int c = 0; c < n; ++c) ad[static_cast<std::size_t>(i) * n + c] = a(i, c).get_d();
  }

  auto exact_vertex = [&](const std::vector<int>& cols) -> std::optional<Pmf<Rational>> {
    const auto x = solve_unique(a.select_cols(cols), b);
    if (!x) return std::nullopt;
    std::vector<Rational> probs(std::size_t{1} << d, Rational(0));
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (sgn((*x)[k]) < 0) return std::nullopt;
      probs[poly.support[static_cast<std::size_t>(cols[k])]] = (*x)[k];
    }
    Pmf<Rational> f(d, std::move(probs));
    if (marginal_means(f) != p) return std::nullopt;
    return f;
  };

  std::unordered_set<std::uint64_t> seen;
  std::vector<Pmf<Rational>> found;
  std::vector<int> comb(static_cast<std::size_t>(r));
  for (int k = 0; k < r; ++k) comb[static_cast<std::size_t>(k)] = k;
  std::vector<double> sub(static_cast<std::size_t>(r) * r), x;
  while (r <= n) {
    for (int i = 0; i < r; ++i)
      for (int k = 0; k < r; ++k)
        sub[static_cast<std::size_t>(i) * r + k] = ad[static_cast<std::size_t>(i) * n + comb[static_cast<std::size_t>(k)]];
    if (detail::solve_small(sub, bd, r, x) &&
        std::all_of(x.begin(), x.end(), [](double v) { return v > -1e-9; })) {
      std::uint64_t key = 0;
      std::vector<int> cols;
      for (int k = 0; k < r; ++k)
        if (x[static_cast<std::size_t>(k)] > 1e-9) {
          key |= std::uint64_t{1} << comb[static_cast<std::size_t>(k)];
          cols.push_back(comb[static_cast<std::size_t>(k)]);
        }
      if (seen.insert(key).second) {
        auto v = exact_vertex(cols);
        if (!v) v = exact_vertex(comb);
        if (v) found.push_back(std::move(*v));
      }
    }
    // Next combination.
    int i = r - 1;
    while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - r + i) --i;
    if (i < 0) break;
    ++comb[static_cast<std::size_t>(i)];
    for (int k = i + 1; k < r; ++k) comb[static_cast<std::size_t>(k)] = comb[static_cast<std::size_t>(k - 1)] + 1;
  }
  std::sort(found.begin(), found.end(), detail::lex_less);
  found.erase(std::unique(found.begin(), found.end()), found.end());
  poly.vertices = std::move(found);
  return poly;
}

template <Scalar T>
struct Decomposition {
  std::vector<T> weights;
  bool unique = true;
};

/// Weights lambda >= 0, sum 1, with sum_k lambda_k v_k = f. When several
/// exist, the lexicographically smallest one is returned.
template <Scalar T>
Decomposition<T> decompose(const Pmf<T>& f, const FrechetPolytope& poly, double tol = 1e-9) {
  if (f.dim() != poly.d) throw invalid_input("pmf and polytope dimensions differ");
  const int k = static_cast<int>(poly.vertices.size());
  const int rows = static_cast<int>(f.size()) + 1;
  Matrix<T> a(rows, k);
  std::vector<T> b(static_cast<std::size_t>(rows));
  for (int c = 0; c < k; ++c) {
    for (std::uint32_t i = 0; i < f.size(); ++i)
      a(static_cast<int>(i), c) = scalar_cast<T>(poly.vertices[static_cast<std::size_t>(c)][i]);
    a(rows - 1, c) = 1;
  }
  for (std::uint32_t i = 0; i < f.size(); ++i) b[i] = f[i];
  b.back() = 1;
  LpOptions opts;
  opts.tol = tol;
  auto res = solve_lp(a, b, static_cast<const std::vector<T>*>(nullptr), opts);
  if (res.status != LpStatus::Optimal) throw invalid_input("pmf lies outside the polytope");
  Decomposition<T> out;
  out.unique = rank(a, 1e-10) == k;
  if (out.unique) {
    out.weights = res.x;
    return out;
  }
  // Lexicographic minimum: minimize lambda_0, fix it, then lambda_1, ...
  Matrix<T> cur = a;
  std::vector<T> rhs = b;
  std::vector<T> w(static_cast<std::size_t>(k), T(0));
  for (int c = 0; c < k; ++c) {
    std::vector<T> cost(static_cast<std::size_t>(k), T(0));
    cost[static_cast<std::size_t>(c)] = 1;
    auto step = solve_lp(cur, rhs, &cost, opts);
    if (step.status != LpStatus::Optimal) throw invalid_input("lexicographic decomposition failed");
    w[static_cast<std::size_t>(c)] = step.x[static_cast<std::size_t>(c)];
    Matrix<T> next(cur.rows() + 1, k);
    for (int i = 0; i < cur.rows(); ++i)
      for (int j = 0; j < k; ++j) next(i, j) = cur(i, j);
    next(cur.rows(), c) = 1;
    cur = std::move(next);
    rhs.push_back(w[static_cast<std::size_t>(c)]);
  }
  out.weights = std::move(w);
  return out;
}

/// sum_k w_k v_k.
template <Scalar T>
Pmf<T> mix_vertices(const FrechetPolytope& poly, const std::vector<T>& w) {
  if (w.size() != poly.vertices.size()) throw invalid_input("weight count differs from vertex count");
  std::vector<T> probs(std::size_t{1} << poly.d, T(0));
  for (std::size_t k = 0; k < w.size(); ++k)
    for (std::uint32_t i = 0; i < probs.size(); ++i)
      if (sgn(poly.vertices[k][i]) != 0) probs[i] += w[k] * scalar_cast<T>(poly.vertices[k][i]);
  if constexpr (!is_exact_v<T>) {
    double s = 0.0;
    for (double v : probs) s += v;
    for (double& v : probs) v /= s;
  }
  return Pmf<T>(poly.d, std::move(probs));
}

/// Dirichlet(1) weights over the vertices; deterministic per rng state.
inline std::vector<double> dirichlet_weights(std::size_t k, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(k);
  double s = 0.0;
  for (auto& v : w) s += (v = expo(rng));
  for (auto& v : w) v /= s;
  return w;
}

/// n random members of the polytope, exact (weights rationalized, then normalized).
inline std::vector<Pmf<Rational>> sample_polytope(const FrechetPolytope& poly, int n, std::uint64_t seed) {
  if (n < 1) throw invalid_input("sample count must be positive");
  if (poly.vertices.empty()) throw invalid_input("polytope has no vertices");
  std::mt19937_64 rng(seed);
  std::vector<Pmf<Rational>> out;
  for (int s = 0; s < n; ++s) {
    const auto wd = dirichlet_weights(poly.vertices.size(), rng);
    std::vector<Rational> w;
    Rational total = 0;
    for (double v : wd) {
      w.push_back(rationalize(v, 1'000'000));
      total += w.back();
    }
    for (auto& v : w) v /= total;
    out.push_back(mix_vertices(poly, w));
  }
  return out;
}

/// Floating-point variant for large sample counts.
inline std::vector<Pmf<double>> sample_polytope_float(const FrechetPolytope& poly, int n, std::uint64_t seed) {
  if (n < 1) throw invalid_input("sample count must be positive");
  if (poly.vertices.empty()) throw invalid_input("polytope has no vertices");
  std::mt19937_64 rng(seed);
  std::vector<Pmf<double>> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) out.push_back(mix_vertices(poly, dirichlet_weights(poly.vertices.size(), rng)));
  return out;
}

/// Some member of B_d^Sigma(p), by one exact LP feasibility solve.
inline Pmf<Rational> find_sigma_ctm(const MarginalMeans<Rational>& p) {
  const int d = p.dim();
  const Rational pb = p.bullet();
  if (!(pb > 0) || !(pb < d)) {
    // Degenerate marginals: the all-zeros or all-ones point mass.
    return Pmf<Rational>::point_mass(d, Outcome(pb == 0 ? 0u : (1u << d) - 1u));
  }
  const auto support = sigma_support(d, pb);
  const auto a = detail::marginal_constraints<Rational>(d, support);
  const auto res = solve_lp(a, detail::marginal_rhs(p));
  if (res.status != LpStatus::Optimal) throw std::logic_error("Sigma-countermonotonic class unexpectedly empty");
  std::vector<Rational> probs(std::size_t{1} << d, Rational(0));
  for (std::size_t c = 0; c < support.size(); ++c) probs[support[c]] = res.x[c];
  return Pmf<Rational>(d, std::move(probs));
}

}  // namespace negdep
