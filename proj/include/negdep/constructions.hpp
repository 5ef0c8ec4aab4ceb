#pragma once

// The alpha-mixture chain between f^H and the product pmf, and the
// polarization construction J_h = I^H_h K_h over a partition into blocks.

#include <algorithm>
#include <vector>

#include "negdep/maxent.hpp"
#include "negdep/orders.hpp"
#include "negdep/pgf.hpp"
#include "negdep/pmf.hpp"

namespace negdep {

template <Scalar T>
struct ChainSpec {
  MarginalMeans<T> p;
  std::vector<T> alphas;
  std::vector<Pmf<T>> pmfs;
  std::vector<OrderVerdict<T>> links;  // sm_leq(pmfs[k], pmfs[k+1]) when verified
};

namespace detail {

template <Scalar T>
Pmf<T> max_entropy_pmf(const MarginalMeans<T>& p) {
  if constexpr (is_exact_v<T>) {
    if (!p.interior()) throw invalid_input("maximum entropy needs p in (0,1)^d");
    auto f = closed_form_max_entropy(p);
    if (!f) throw invalid_input("no closed-form maximum-entropy pmf for these rational marginals; use float mode");
    return *f;
  } else {
    return solve_max_entropy(p).pmf;
  }
}

}  // namespace detail

/// f^(alpha) = (1 - alpha) f^H + alpha f^perp for each alpha.
template <Scalar T>
ChainSpec<T> alpha_chain(const MarginalMeans<T>& p, const std::vector<T>& alphas, bool verify = true) {
  if (alphas.empty()) throw invalid_input("alpha list is empty");
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    if (alphas[k] < 0 || alphas[k] > 1) throw invalid_input("alphas must lie in [0,1]");
    if (k > 0 && !(alphas[k - 1] < alphas[k])) throw invalid_input("alphas must be strictly increasing");
  }
  ChainSpec<T> c{p, alphas, {}, {}};
  const Pmf<T> fh = detail::max_entropy_pmf(p);
  const Pmf<T> fp = Pmf<T>::product(p);
  for (const T& a : alphas) c.pmfs.push_back(mix(fh, fp, a));
  if (verify && p.dim() <= kDefaultOrderMaxDim)
    for (std::size_t k = 0; k + 1 < c.pmfs.size(); ++k) c.links.push_back(sm_leq(c.pmfs[k], c.pmfs[k + 1]));
  return c;
}

template <Scalar T>
struct PolarizationSpec {
  int d = 0;
  std::vector<std::vector<int>> blocks;  // 0-based coordinates
  std::vector<T> block_p;                // common mean p~_h inside block h
};

template <Scalar T>
struct Polarization {
  Pmf<T> pmf;            // law of J
  Pmf<T> block_pmf;      // f^H at the block level
  MarginalMeans<T> p_prime;
};

namespace detail {

template <Scalar T>
void validate_polarization(const PolarizationSpec<T>& s) {
  if (s.d < 1 || s.d > kMaxDim) throw dimension_error("polarization dimension out of range");
  if (s.blocks.empty() || s.blocks.size() != s.block_p.size())
    throw invalid_input("need one mean per block");
  std::vector<int> seen(static_cast<std::size_t>(s.d), 0);
  for (std::size_t h = 0; h < s.blocks.size(); ++h) {
    if (s.blocks[h].empty()) throw invalid_input("empty block");
    for (int j : s.blocks[h]) {
      if (j < 0 || j >= s.d) throw invalid_input("block index out of range");
      if (seen[static_cast<std::size_t>(j)]++) throw invalid_input("blocks overlap");
    }
    const T lam = from_int<T>(static_cast<long>(s.blocks[h].size()));
    const T pp = lam * s.block_p[h];
    if (!(s.block_p[h] > 0) || s.block_p[h] * lam > 1) throw invalid_input("block mean must satisfy 0 < p~_h <= 1/lambda_h");
    if (!(pp < 1)) throw invalid_input("block-level mean lambda_h p~_h must be below 1");
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) throw invalid_input("blocks do not cover every coordinate");
}

}  // namespace detail

template <Scalar T>
MarginalMeans<T> polarization_block_means(const PolarizationSpec<T>& s) {
  detail::validate_polarization(s);
  std::vector<T> pp;
  for (std::size_t h = 0; h < s.blocks.size(); ++h)
    pp.push_back(from_int<T>(static_cast<long>(s.blocks[h].size())) * s.block_p[h]);
  return MarginalMeans<T>(std::move(pp));
}

/// J from a given block-level pmf: block h with b_h = 1 puts its single one
/// uniformly on the block, b_h = 0 zeroes the block.
template <Scalar T>
Pmf<T> polarize_with(const PolarizationSpec<T>& s, const Pmf<T>& block_pmf) {
  detail::validate_polarization(s);
  const int nb = static_cast<int>(s.blocks.size());
  if (block_pmf.dim() != nb) throw invalid_input("block pmf dimension differs from the block count");
  std::vector<T> probs(std::size_t{1} << s.d, T(0));
  for (std::uint32_t b = 0; b < block_pmf.size(); ++b) {
    if (is_zero(block_pmf[b], 0.0)) continue;
    // Enumerate placements: one coordinate per active block.
    std::vector<std::pair<std::uint32_t, T>> acc{{0u, block_pmf[b]}};
    for (int h = 0; h < nb; ++h) {
      if (!((b >> h) & 1u)) continue;
      const auto& blk = s.blocks[static_cast<std::size_t>(h)];
      const T w = T(1) / from_int<T>(static_cast<long>(blk.size()));
      std::vector<std::pair<std::uint32_t, T>> next;
      for (const auto& [mask, pr] : acc)
        for (int l : blk) next.emplace_back(mask | (1u << l), pr * w);
      acc = std::move(next);
    }
    for (const auto& [mask, pr] : acc) probs[mask] += pr;
  }
  return Pmf<T>(s.d, std::move(probs));
}

/// Polarization with f^H of the block-level Frechet class.
template <Scalar T>
Polarization<T> polarize(const PolarizationSpec<T>& s) {
  auto pp = polarization_block_means(s);
  Pmf<T> fh = detail::max_entropy_pmf(pp);
  Pmf<T> j = polarize_with(s, fh);
  return Polarization<T>{std::move(j), std::move(fh), std::move(pp)};
}

/// Expands P_block(P_{K_1}, ..., P_{K_D}) with P_{K_h} = (1/lambda_h) sum z_l
/// and compares it coefficientwise with the pmf of J.
template <Scalar T>
bool pgf_compose_check(const Pmf<T>& fj, const PolarizationSpec<T>& s, const Pmf<T>& block_pmf, double tol = 1e-12) {
  detail::validate_polarization(s);
  if (fj.dim() != s.d) return false;
  const std::size_t n = std::size_t{1} << s.d;
  std::vector<MultiAffinePgf<T>> kpgf;
  for (const auto& blk : s.blocks) {
    std::vector<T> c(n, T(0));
    for (int l : blk) c[1u << l] = T(1) / from_int<T>(static_cast<long>(blk.size()));
    kpgf.emplace_back(s.d, std::move(c));
  }
  std::vector<T> total(n, T(0));
  for (std::uint32_t b = 0; b < block_pmf.size(); ++b) {
    if (is_zero(block_pmf[b], 0.0)) continue;
    std::vector<T> one(n, T(0));
    one[0] = 1;
    MultiAffinePgf<T> term(s.d, std::move(one));
    for (std::size_t h = 0; h < kpgf.size(); ++h)
      if ((b >> h) & 1u) term = disjoint_product(term, kpgf[h]);
    for (std::uint32_t i = 0; i < n; ++i) total[i] += block_pmf[b] * term[i];
  }
  for (std::uint32_t i = 0; i < n; ++i)
    if (!nearly_equal(total[i], fj[i], tol)) return false;
  return true;
}

}  // namespace negdep
