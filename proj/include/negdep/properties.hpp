#pragma once

// Dependence-property checkers. Every negative verdict carries a witness
// that can be re-checked from the pmf alone.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "negdep/orders.hpp"
#include "negdep/pmf.hpp"
#include "negdep/upper_sets.hpp"

namespace negdep {

/// Pair of coordinates (0-based) and their covariance.
template <Scalar T>
struct CovarianceWitness {
  int j1 = 0, j2 = 0;
  T cov;
};

/// Outcomes i, k with f(i) f(k) < f(i^k) f(i v k).
template <Scalar T>
struct LatticeWitness {
  Outcome i, k;
  T lhs, rhs;
};

/// Split (S_Lambda, S_rest) that is not countermonotonic, with the grid
/// point (s, t) where the joint cdf exceeds the lower Frechet bound.
template <Scalar T>
struct SplitWitness {
  std::uint32_t lambda = 0;
  int s = 0, t = 0;
  T cdf, bound;
};

/// Levels of the sum carrying positive mass.
struct LevelsWitness {
  std::vector<int> levels;
};

template <Scalar T>
using PropertyWitness = std::variant<std::monostate, CovarianceWitness<T>, LatticeWitness<T>, SplitWitness<T>,
                                     LevelsWitness, UpperSetWitness<T>, SupermodularWitness<T>>;

template <Scalar T>
struct PropertyReport {
  std::string property;
  bool verdict = true;
  PropertyWitness<T> witness;
};

enum class SigmaMethod { Support, Definition, SingleVsRest };

inline std::string to_string(SigmaMethod m) {
  switch (m) {
    case SigmaMethod::Support: return "support";
    case SigmaMethod::Definition: return "definition";
    case SigmaMethod::SingleVsRest: return "single_vs_rest";
  }
  return "?";
}

inline constexpr double kPropertyTol = 1e-12;

// ---------------------------------------------------------------------------

template <Scalar T>
PropertyReport<T> is_pnc(const Pmf<T>& f) {
  PropertyReport<T> r{"pnc", true, {}};
  for (int a = 0; a < f.dim(); ++a)
    for (int b = a + 1; b < f.dim(); ++b) {
      const T c = covariance(f, a, b);
      if (sign_of(c, kPropertyTol) > 0) {
        r.verdict = false;
        r.witness = CovarianceWitness<T>{a, b, c};
        return r;
      }
    }
  return r;
}

/// Negative lattice condition; comparable pairs satisfy it with equality,
/// so only incomparable pairs are tested.
template <Scalar T>
PropertyReport<T> is_nlc(const Pmf<T>& f) {
  PropertyReport<T> r{"nlc", true, {}};
  for (std::uint32_t i = 0; i < f.size(); ++i)
    for (std::uint32_t k = i + 1; k < f.size(); ++k) {
      const Outcome oi(i), ok(k);
      if (oi.comparable(ok)) continue;
      const T lhs = f[i] * f[k];
      const T rhs = f[oi.meet(ok)] * f[oi.join(ok)];
      if (sign_of(T(lhs - rhs), kPropertyTol) < 0) {
        r.verdict = false;
        r.witness = LatticeWitness<T>{oi, ok, lhs, rhs};
        return r;
      }
    }
  return r;
}

template <Scalar T>
std::vector<int> sum_levels(const Pmf<T>& f) {
  const auto s = sum_pmf(f);
  std::vector<int> levels;
  for (int y = 0; y <= s.dim(); ++y)
    if (sign_of(s[y], kPropertyTol) > 0) levels.push_back(y);
  return levels;
}

template <Scalar T>
PropertyReport<T> is_joint_mix(const Pmf<T>& f) {
  PropertyReport<T> r{"jointmix", true, {}};
  auto levels = sum_levels(f);
  if (levels.size() != 1) {
    r.verdict = false;
    r.witness = LevelsWitness{std::move(levels)};
  }
  return r;
}

// ---------------------------------------------------------------------------
// Countermonotonicity of integer-valued pairs.

/// Joint pmf of a pair (X, Y) on {0..n1} x {0..n2}, stored row-major by x.
template <Scalar T>
struct BivariatePmf {
  int n1 = 0, n2 = 0;
  std::vector<T> p;  // (n1+1)*(n2+1)
  const T& at(int x, int y) const { return p[static_cast<std::size_t>(x) * (n2 + 1) + y]; }
  T& at(int x, int y) { return p[static_cast<std::size_t>(x) * (n2 + 1) + y]; }
};

/// Law of (S_Lambda, S_rest) for a coordinate mask Lambda.
template <Scalar T>
BivariatePmf<T> split_sums(const Pmf<T>& f, std::uint32_t lambda) {
  const std::uint32_t full = (1u << f.dim()) - 1u;
  BivariatePmf<T> g;
  g.n1 = std::popcount(lambda & full);
  g.n2 = f.dim() - g.n1;
  g.p.assign(static_cast<std::size_t>(g.n1 + 1) * (g.n2 + 1), T(0));
  for (std::uint32_t x = 0; x < f.size(); ++x)
    g.at(std::popcount(x & lambda), std::popcount(x & ~lambda & full)) += f[x];
  return g;
}

namespace detail {

// First grid point where the joint cdf differs from max(F1 + F2 - 1, 0).
template <Scalar T>
std::optional<SplitWitness<T>> countermonotone_violation(const BivariatePmf<T>& g) {
  std::vector<T> f1(static_cast<std::size_t>(g.n1) + 1, T(0)), f2(static_cast<std::size_t>(g.n2) + 1, T(0));
  for (int x = 0; x <= g.n1; ++x)
    for (int y = 0; y <= g.n2; ++y) {
      f1[static_cast<std::size_t>(x)] += g.at(x, y);
      f2[static_cast<std::size_t>(y)] += g.at(x, y);
    }
  for (int x = 1; x <= g.n1; ++x) f1[static_cast<std::size_t>(x)] += f1[static_cast<std::size_t>(x - 1)];
  for (int y = 1; y <= g.n2; ++y) f2[static_cast<std::size_t>(y)] += f2[static_cast<std::size_t>(y - 1)];
  std::vector<T> row(static_cast<std::size_t>(g.n2) + 1, T(0));  // running cdf over x
  for (int x = 0; x <= g.n1; ++x) {
    T acc = 0;
    for (int y = 0; y <= g.n2; ++y) {
      acc += g.at(x, y);
      row[static_cast<std::size_t>(y)] += acc;
      T bound = f1[static_cast<std::size_t>(x)] + f2[static_cast<std::size_t>(y)] - T(1);
      if (bound < 0) bound = 0;
      if (!nearly_equal(row[static_cast<std::size_t>(y)], bound, kPropertyTol))
        return SplitWitness<T>{0, x, y, row[static_cast<std::size_t>(y)], bound};
    }
  }
  return std::nullopt;
}

}  // namespace detail

template <Scalar T>
bool is_countermonotonic_pair(const BivariatePmf<T>& g) {
  return !detail::countermonotone_violation(g).has_value();
}

/// Sigma-countermonotonicity by one of three equivalent tests.
template <Scalar T>
PropertyReport<T> is_sigma_ctm(const Pmf<T>& f, SigmaMethod method = SigmaMethod::Support) {
  PropertyReport<T> r{"sigmactm", true, {}};
  const int d = f.dim();
  if (method == SigmaMethod::Support) {
    // The sum is minimal in convex order iff it lives on two consecutive levels.
    auto levels = sum_levels(f);
    if (levels.back() - levels.front() > 1) {
      r.verdict = false;
      r.witness = LevelsWitness{std::move(levels)};
    }
    return r;
  }
  std::vector<std::uint32_t> splits;
  if (method == SigmaMethod::Definition) {
    splits = complementary_splits(d);
  } else {
    for (int h = 0; h < d; ++h) splits.push_back(1u << h);
    if (d == 2) splits.pop_back();  // ({1},{2}) and ({2},{1}) coincide
  }
  for (std::uint32_t lambda : splits) {
    if (auto w = detail::countermonotone_violation(split_sums(f, lambda))) {
      w->lambda = lambda;
      r.verdict = false;
      r.witness = *w;
      return r;
    }
  }
  return r;
}

template <Scalar T>
PropertyReport<T> is_pairwise_ctm(const Pmf<T>& f) {
  PropertyReport<T> r{"pairwisectm", true, {}};
  for (int a = 0; a < f.dim(); ++a)
    for (int b = a + 1; b < f.dim(); ++b) {
      const auto m = marginalize(f, {a, b});
      BivariatePmf<T> g{1, 1, {m[0u], m[2u], m[1u], m[3u]}};  // row x = i_a
      if (auto w = detail::countermonotone_violation(g)) {
        w->lambda = (1u << a) | (1u << b);
        r.verdict = false;
        r.witness = *w;
        return r;
      }
    }
  return r;
}

inline constexpr int kDefaultNaMaxDim = 6;

/// Negative association via upper-set indicator pairs on complementary splits.
template <Scalar T>
PropertyReport<T> is_na(const Pmf<T>& f, int max_dim = kDefaultNaMaxDim) {
  if (f.dim() > max_dim || f.dim() > kMaxUpperSetDim + 1) throw dimension_error("dimension above the NA bound");
  PropertyReport<T> r{"na", true, {}};
  std::optional<UpperSetWitness<T>> worst;
  for (std::uint32_t split : complementary_splits(f.dim())) {
    detail::for_each_upper_pair(f, split, [&](std::uint32_t u, std::uint32_t v, const T& c) {
      if (sign_of(c, kPropertyTol) > 0 && (!worst || c > worst->cov_from))
        worst = UpperSetWitness<T>{split, u, v, c, T(0)};
    });
  }
  if (worst) {
    r.verdict = false;
    r.witness = *worst;
  }
  return r;
}

/// Negative supermodular dependence: f <=_sm product pmf with the same marginals.
template <Scalar T>
PropertyReport<T> is_nsd(const Pmf<T>& f, int max_dim = kDefaultOrderMaxDim) {
  PropertyReport<T> r{"nsd", true, {}};
  const auto indep = Pmf<T>::product(marginal_means(f));
  const auto v = sm_leq(f, indep, max_dim);
  if (v.relation != Relation::Less && v.relation != Relation::Equal) {
    r.verdict = false;
    r.witness = *v.sm_forward;
  }
  return r;
}

}  // namespace negdep
