#pragma once

// Certified comparisons under the supermodular, weak-association and convex
// orders.
//
// sm_leq decides f <=_sm g as feasibility of g - f = sum_t w_t tau_t, w >= 0,
// over elementary transfers tau = d(i^k) + d(i v k) - d(i) - d(k). Only the
// "local" transfers (i, k differing in exactly two coordinates) enter the LP:
// every transfer over an incomparable pair is a nonnegative sum of local
// ones, so the cone is unchanged and the LP is much smaller. Before any LP
// the monomials prod_{j in J} i_j (all supermodular) are compared; a sign
// change among them already certifies incomparability in both directions.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "negdep/linalg.hpp"
#include "negdep/lp.hpp"
#include "negdep/pmf.hpp"
#include "negdep/upper_sets.hpp"

namespace negdep {

enum class Relation { Less, Greater, Equal, Incomparable };
enum class OrderKind { Supermodular, WeakAssociation, Convex };

inline std::string to_string(Relation r) {
  switch (r) {
    case Relation::Less: return "Less";
    case Relation::Greater: return "Greater";
    case Relation::Equal: return "Equal";
    case Relation::Incomparable: return "Incomparable";
  }
  return "?";
}

inline std::string to_string(OrderKind k) {
  switch (k) {
    case OrderKind::Supermodular: return "sm";
    case OrderKind::WeakAssociation: return "wassoc";
    case OrderKind::Convex: return "cx";
  }
  return "?";
}

inline constexpr int kDefaultOrderMaxDim = 6;

/// Elementary supermodular transfer of `weight` from {i, k} to {i^k, i v k}.
template <Scalar T>
struct Transfer {
  Outcome i, k;
  T weight;
};

/// A supermodular function phi (2^d values) with E_from[phi] > E_to[phi],
/// proving that `from` is not <=_sm `to`.
template <Scalar T>
struct SupermodularWitness {
  std::vector<T> phi;
  T e_from, e_to;
  std::string origin;  // "monomial" or "lp-dual"
};

/// Upper sets U (on coordinates `split`) and V (on the complement) with
/// Cov_from(1_U, 1_V) > Cov_to(1_U, 1_V).
template <Scalar T>
struct UpperSetWitness {
  std::uint32_t split = 0;  // coordinate mask of Lambda_1; Lambda_2 is the complement
  std::uint32_t u = 0, v = 0;
  T cov_from, cov_to;
};

template <Scalar T>
struct OrderVerdict {
  OrderKind kind = OrderKind::Supermodular;
  Relation relation = Relation::Equal;
  // Supermodular order: transfers mapping the smaller pmf to the larger one.
  std::vector<Transfer<T>> transfers;
  // One witness per failing direction; `forward` refutes left <= right.
  std::optional<SupermodularWitness<T>> sm_forward, sm_backward;
  std::optional<UpperSetWitness<T>> wa_forward, wa_backward;
  long inequalities_checked = 0;
  // Convex order: stop-loss transforms at t = 0..d-1.
  std::vector<T> stop_loss_left, stop_loss_right;
  int lp_solves = 0;
};

// ---------------------------------------------------------------------------

namespace detail {

template <Scalar T>
void require_same_class(const Pmf<T>& f, const Pmf<T>& g, int max_dim) {
  if (f.dim() != g.dim()) throw invalid_input("pmfs have different dimensions");
  if (f.dim() > max_dim) throw dimension_error("dimension above the order-comparison bound");
  const auto pf = marginal_means(f), pg = marginal_means(g);
  for (int j = 0; j < f.dim(); ++j)
    if (!nearly_equal(pf[j], pg[j], 1e-9)) throw invalid_input("pmfs have different marginal means");
}

// Superset sums: M[J] = E[prod_{j in J} I_j].
template <Scalar T>
std::vector<T> monomial_moments(const Pmf<T>& f) {
  std::vector<T> m(f.probs().begin(), f.probs().end());
  for (int j = 0; j < f.dim(); ++j)
    for (std::uint32_t x = 0; x < m.size(); ++x)
      if (!(x & (1u << j))) m[x] += m[x | (1u << j)];
  return m;
}

template <Scalar T>
SupermodularWitness<T> monomial_witness(std::uint32_t j_mask, int d, const T& e_from, const T& e_to) {
  SupermodularWitness<T> w;
  w.phi.assign(std::size_t{1} << d, T(0));
  for (std::uint32_t x = 0; x < w.phi.size(); ++x)
    if ((x & j_mask) == j_mask) w.phi[x] = 1;
  w.e_from = e_from;
  w.e_to = e_to;
  w.origin = "monomial";
  return w;
}

struct LocalTransfer {
  std::uint32_t meet, i, k, join;
};

inline const std::vector<LocalTransfer>& local_transfers(int d) {
  static std::vector<std::vector<LocalTransfer>> cache(kMaxDim + 1);
  static std::mutex mu;
  std::lock_guard lock(mu);
  auto& v = cache[static_cast<std::size_t>(d)];
  if (v.empty() && d >= 2) {
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b)
        for (std::uint32_t x = 0; x < (1u << d); ++x) {
          if (x & ((1u << a) | (1u << b))) continue;
          v.push_back({x, x | (1u << a), x | (1u << b), x | (1u << a) | (1u << b)});
        }
  }
  return v;
}

template <Scalar T>
Matrix<T> transfer_matrix(int d) {
  const auto& ts = local_transfers(d);
  Matrix<T> a(1 << d, static_cast<int>(ts.size()));
  for (std::size_t t = 0; t < ts.size(); ++t) {
    const int c = static_cast<int>(t);
    a(static_cast<int>(ts[t].meet), c) = 1;
    a(static_cast<int>(ts[t].join), c) = 1;
    a(static_cast<int>(ts[t].i), c) = -1;
    a(static_cast<int>(ts[t].k), c) = -1;
  }
  return a;
}

// Decides from <=_sm to by LP. Returns transfers on success, else a witness.
template <Scalar T>
bool sm_direction(const Pmf<T>& from, const Pmf<T>& to, std::vector<Transfer<T>>& transfers,
                  std::optional<SupermodularWitness<T>>& witness) {
  const int d = from.dim();
  const Matrix<T> a = transfer_matrix<T>(d);
  std::vector<T> b(from.size());
  for (std::uint32_t x = 0; x < from.size(); ++x) b[x] = to[x] - from[x];
  const LpResult<T> res = solve_lp(a, b);
  const auto& ts = local_transfers(d);
  if (res.status == LpStatus::Optimal) {
    transfers.clear();
    for (std::size_t t = 0; t < ts.size(); ++t)
      if (sign_of(res.x[t], 1e-15) > 0) transfers.push_back({Outcome(ts[t].i), Outcome(ts[t].k), res.x[t]});
    return true;
  }
  // y'A >= 0 makes y supermodular; y'b < 0 means E_to[y] < E_from[y].
  SupermodularWitness<T> w;
  w.phi = res.farkas;
  w.e_from = expectation(from, std::span<const T>(w.phi));
  w.e_to = expectation(to, std::span<const T>(w.phi));
  w.origin = "lp-dual";
  witness = std::move(w);
  return false;
}

}  // namespace detail

/// True when phi(x^y) + phi(x v y) >= phi(x) + phi(y) for all x, y.
template <Scalar T>
bool is_supermodular(std::span<const T> phi, int d, double tol = 1e-9) {
  for (const auto& t : detail::local_transfers(d)) {
    const T s = phi[t.meet] + phi[t.join] - phi[t.i] - phi[t.k];
    if (sign_of(s, tol) < 0) return false;
  }
  return true;
}

/// Supermodular order comparison of f (left) and g (right).
template <Scalar T>
OrderVerdict<T> sm_leq(const Pmf<T>& f, const Pmf<T>& g, int max_dim = kDefaultOrderMaxDim) {
  detail::require_same_class(f, g, max_dim);
  OrderVerdict<T> v;
  v.kind = OrderKind::Supermodular;
  if (approx_equal(f, g, 1e-12)) {
    v.relation = Relation::Equal;
    return v;
  }
  const int d = f.dim();
  const auto mf = detail::monomial_moments(f), mg = detail::monomial_moments(g);
  std::optional<std::uint32_t> up, down;  // E_f > E_g, E_f < E_g
  for (std::uint32_t j = 0; j < mf.size(); ++j) {
    if (std::popcount(j) < 2) continue;
    const int s = sign_of(T(mf[j] - mg[j]), 1e-12);
    if (s > 0 && !up) up = j;
    if (s < 0 && !down) down = j;
  }
  if (up) v.sm_forward = detail::monomial_witness<T>(*up, d, mf[*up], mg[*up]);
  if (down) v.sm_backward = detail::monomial_witness<T>(*down, d, mg[*down], mf[*down]);

  bool less = false, greater = false;
  if (!up) {
    ++v.lp_solves;
    less = detail::sm_direction(f, g, v.transfers, v.sm_forward);
  }
  if (!less && !down) {
    ++v.lp_solves;
    greater = detail::sm_direction(g, f, v.transfers, v.sm_backward);
  }
  v.relation = less ? Relation::Less : greater ? Relation::Greater : Relation::Incomparable;
  return v;
}

/// Re-checks an sm verdict: transfers must map the smaller pmf onto the
/// larger one, witnesses must be supermodular with the stated strict gap.
template <Scalar T>
bool verify_sm_certificate(const Pmf<T>& f, const Pmf<T>& g, const OrderVerdict<T>& v, double tol = 1e-9) {
  const int d = f.dim();
  auto check_witness = [&](const std::optional<SupermodularWitness<T>>& w, const Pmf<T>& from, const Pmf<T>& to) {
    if (!w) return false;
    if (!is_supermodular(std::span<const T>(w->phi), d, tol)) return false;
    const T ef = expectation(from, std::span<const T>(w->phi));
    const T et = expectation(to, std::span<const T>(w->phi));
    return sign_of(T(ef - et), 1e-12) > 0;
  };
  auto replay = [&](const Pmf<T>& lo, const Pmf<T>& hi) {
    std::vector<T> h(lo.probs().begin(), lo.probs().end());
    for (const auto& t : v.transfers) {
      if (sign_of(t.weight, 0.0) < 0) return false;
      if (t.i.comparable(t.k)) return false;
      h[t.i.bits()] -= t.weight;
      h[t.k.bits()] -= t.weight;
      h[t.i.meet(t.k).bits()] += t.weight;
      h[t.i.join(t.k).bits()] += t.weight;
    }
    for (std::uint32_t x = 0; x < h.size(); ++x)
      if (!nearly_equal(h[x], hi[x], tol)) return false;
    return true;
  };
  switch (v.relation) {
    case Relation::Equal: return approx_equal(f, g, 1e-12);
    case Relation::Less: return replay(f, g);
    case Relation::Greater: return replay(g, f);
    case Relation::Incomparable: return check_witness(v.sm_forward, f, g) && check_witness(v.sm_backward, g, f);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Weak-association order. Increasing functions of disjoint blocks reduce to
// upper-set indicators, and blocks reduce to complementary splits (a
// function of a sub-block is a function of the whole complement).

namespace detail {

// Calls fn(u, v, cov) for every nontrivial upper-set pair on the split.
template <Scalar T, class Fn>
void for_each_upper_pair(const Pmf<T>& f, std::uint32_t split, Fn&& fn) {
  const auto table = split_table(f, split);
  const int ka = std::popcount(split);
  const int kb = f.dim() - ka;
  const auto& us = nontrivial_upper_sets(ka);
  const auto& vs = nontrivial_upper_sets(kb);
  const std::size_t nb = std::size_t{1} << kb;
  std::vector<T> col(nb, T(0));
  for (const auto& row : table)
    for (std::size_t b = 0; b < nb; ++b) col[b] += row[b];
  std::vector<T> pv(vs.size(), T(0));
  for (std::size_t iv = 0; iv < vs.size(); ++iv)
    for (std::size_t b = 0; b < nb; ++b)
      if ((vs[iv] >> b) & 1u) pv[iv] += col[b];
  std::vector<T> r(nb);
  for (std::uint32_t u : us) {
    std::fill(r.begin(), r.end(), T(0));
    T pu = 0;
    for (std::size_t a = 0; a < table.size(); ++a) {
      if (!((u >> a) & 1u)) continue;
      for (std::size_t b = 0; b < nb; ++b) r[b] += table[a][b];
    }
    for (std::size_t b = 0; b < nb; ++b) pu += r[b];
    for (std::size_t iv = 0; iv < vs.size(); ++iv) {
      T joint = 0;
      for (std::size_t b = 0; b < nb; ++b)
        if ((vs[iv] >> b) & 1u) joint += r[b];
      fn(u, vs[iv], T(joint - pu * pv[iv]));
    }
  }
}

template <Scalar T>
std::vector<std::vector<T>> upper_pair_covariances(const Pmf<T>& f, std::uint32_t split) {
  std::vector<std::vector<T>> out;
  std::uint32_t last_u = 0;
  bool first = true;
  for_each_upper_pair(f, split, [&](std::uint32_t u, std::uint32_t, const T& c) {
    if (first || u != last_u) out.emplace_back();
    first = false;
    last_u = u;
    out.back().push_back(c);
  });
  return out;
}

}  // namespace detail

/// Largest violation of Cov_f <= Cov_g on one split (nullopt if none).
template <Scalar T>
std::optional<UpperSetWitness<T>> wassoc_violation_on(const Pmf<T>& f, const Pmf<T>& g, std::uint32_t split,
                                                      double tol = 1e-12) {
  const int ka = std::popcount(split);
  const auto& us = nontrivial_upper_sets(ka);
  const auto& vs = nontrivial_upper_sets(f.dim() - ka);
  const auto cf = detail::upper_pair_covariances(f, split);
  const auto cg = detail::upper_pair_covariances(g, split);
  std::optional<UpperSetWitness<T>> best;
  T best_gap = 0;
  for (std::size_t iu = 0; iu < us.size(); ++iu)
    for (std::size_t iv = 0; iv < vs.size(); ++iv) {
      const T gap = cf[iu][iv] - cg[iu][iv];
      if (sign_of(gap, tol) > 0 && (!best || gap > best_gap)) {
        best_gap = gap;
        best = UpperSetWitness<T>{split, us[iu], vs[iv], cf[iu][iv], cg[iu][iv]};
      }
    }
  return best;
}

template <Scalar T>
OrderVerdict<T> wassoc_leq(const Pmf<T>& f, const Pmf<T>& g, int max_dim = kDefaultOrderMaxDim) {
  detail::require_same_class(f, g, max_dim);
  OrderVerdict<T> v;
  v.kind = OrderKind::WeakAssociation;
  if (approx_equal(f, g, 1e-12)) {
    v.relation = Relation::Equal;
    return v;
  }
  T worst_fwd = 0, worst_bwd = 0;
  for (std::uint32_t split : complementary_splits(f.dim())) {
    const int ka = std::popcount(split);
    const auto& us = nontrivial_upper_sets(ka);
    const auto& vs = nontrivial_upper_sets(f.dim() - ka);
    const auto cf = detail::upper_pair_covariances(f, split);
    const auto cg = detail::upper_pair_covariances(g, split);
    for (std::size_t iu = 0; iu < us.size(); ++iu)
      for (std::size_t iv = 0; iv < vs.size(); ++iv) {
        ++v.inequalities_checked;
        const T gap = cf[iu][iv] - cg[iu][iv];
        const int s = sign_of(gap, 1e-12);
        if (s > 0 && (!v.wa_forward || gap > worst_fwd)) {
          worst_fwd = gap;
          v.wa_forward = UpperSetWitness<T>{split, us[iu], vs[iv], cf[iu][iv], cg[iu][iv]};
        } else if (s < 0 && (!v.wa_backward || T(-gap) > worst_bwd)) {
          worst_bwd = -gap;
          v.wa_backward = UpperSetWitness<T>{split, us[iu], vs[iv], cg[iu][iv], cf[iu][iv]};
        }
      }
  }
  if (!v.wa_forward && !v.wa_backward)
    v.relation = Relation::Equal;
  else if (!v.wa_forward)
    v.relation = Relation::Less;
  else if (!v.wa_backward)
    v.relation = Relation::Greater;
  else
    v.relation = Relation::Incomparable;
  return v;
}

// ---------------------------------------------------------------------------
// Convex order on {0,...,d} via stop-loss transforms at integer thresholds.

template <Scalar T>
std::vector<T> stop_loss(const SumPmf<T>& s, int d) {
  std::vector<T> out(static_cast<std::size_t>(std::max(d, 1)), T(0));
  for (int t = 0; t < d; ++t)
    for (int y = t + 1; y <= s.dim(); ++y) out[static_cast<std::size_t>(t)] += T(y - t) * s[y];
  return out;
}

template <Scalar T>
OrderVerdict<T> cx_leq(const SumPmf<T>& s1, const SumPmf<T>& s2) {
  if (!nearly_equal(s1.mean(), s2.mean(), 1e-9)) throw invalid_input("convex order needs equal means");
  OrderVerdict<T> v;
  v.kind = OrderKind::Convex;
  const int d = std::max(s1.dim(), s2.dim());
  v.stop_loss_left = stop_loss(s1, d);
  v.stop_loss_right = stop_loss(s2, d);
  bool lt = false, gt = false;
  for (int t = 0; t < d; ++t) {
    const int s = sign_of(T(v.stop_loss_left[static_cast<std::size_t>(t)] - v.stop_loss_right[static_cast<std::size_t>(t)]),
                          1e-12);
    ++v.inequalities_checked;
    if (s < 0) lt = true;
    if (s > 0) gt = true;
  }
  v.relation = (lt && gt) ? Relation::Incomparable : lt ? Relation::Less : gt ? Relation::Greater : Relation::Equal;
  return v;
}

/// Test utility: a weak-association Less/Equal must come with sm Less/Equal.
template <Scalar T>
bool sm_implies_wassoc_consistency(const Pmf<T>& f, const Pmf<T>& g) {
  const auto wa = wassoc_leq(f, g);
  if (wa.relation != Relation::Less && wa.relation != Relation::Equal) return true;
  const auto sm = sm_leq(f, g);
  return sm.relation == Relation::Less || sm.relation == Relation::Equal;
}

}  // namespace negdep
