#pragma once

// Upper sets of the Boolean lattice {0,1}^k, encoded as 2^k-bit masks (bit b
// set iff outcome b is in the set). Used by the NA and weak-association checks.

#include <cstdint>
#include <map>
#include <mutex>
#include <vector>

#include "negdep/pmf.hpp"
#include "negdep/scalar.hpp"

namespace negdep {

inline constexpr int kMaxUpperSetDim = 5;

/// All upper sets of {0,1}^k other than the empty set and the full cube
/// (constants have zero covariance with anything).
inline const std::vector<std::uint32_t>& nontrivial_upper_sets(int k) {
  if (k < 1 || k > kMaxUpperSetDim) throw dimension_error("upper-set enumeration supports 1 <= k <= 5");
  static std::mutex mu;
  static std::map<int, std::vector<std::uint32_t>> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(k); it != cache.end()) return it->second;

  // U on k coordinates = U0 (x_k = 0 half) plus U1 (x_k = 1 half) with U0 ⊆ U1.
  std::vector<std::uint32_t> all = {0u, 2u, 3u};  // k = 1: {}, {1}, {0,1}
  for (int level = 2; level <= k; ++level) {
    const int half = 1 << (level - 1);
    std::vector<std::uint32_t> next;
    for (std::uint32_t u0 : all)
      for (std::uint32_t u1 : all)
        if ((u0 & ~u1) == 0) next.push_back(u0 | (u1 << half));
    all = std::move(next);
  }
  const std::uint32_t full = (k == 5) ? 0xFFFFFFFFu : ((1u << (1u << k)) - 1u);
  std::vector<std::uint32_t> out;
  for (std::uint32_t u : all)
    if (u != 0 && u != full) out.push_back(u);
  return cache.emplace(k, std::move(out)).first->second;
}

/// Joint table of (I_A, I_B) for a complementary split: T[a][b] where a and b
/// are compact indices over the coordinates of `mask_a` and its complement.
template <Scalar T>
std::vector<std::vector<T>> split_table(const Pmf<T>& f, std::uint32_t mask_a) {
  const std::uint32_t full = (1u << f.dim()) - 1u;
  const std::uint32_t mask_b = full & ~mask_a;
  const int ka = std::popcount(mask_a), kb = std::popcount(mask_b);
  std::vector<std::vector<T>> t(std::size_t{1} << ka, std::vector<T>(std::size_t{1} << kb, T(0)));
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    if (is_zero(f[x], 0.0)) continue;
    t[extract_bits(x, mask_a)][extract_bits(x, mask_b)] += f[x];
  }
  return t;
}

/// Cov(1_U(I_A), 1_V(I_B)) from a split table.
template <Scalar T>
T indicator_covariance(const std::vector<std::vector<T>>& t, std::uint32_t u, std::uint32_t v) {
  T joint = 0, pu = 0, pv = 0;
  for (std::size_t a = 0; a < t.size(); ++a) {
    const bool in_u = (u >> a) & 1u;
    for (std::size_t b = 0; b < t[a].size(); ++b) {
      const bool in_v = (v >> b) & 1u;
      if (in_u) pu += t[a][b];
      if (in_v) pv += t[a][b];
      if (in_u && in_v) joint += t[a][b];
    }
  }
  return T(joint - pu * pv);
}

/// Complementary splits (A, A^c) with coordinate 0 in A and A^c nonempty.
inline std::vector<std::uint32_t> complementary_splits(int d) {
  std::vector<std::uint32_t> out;
  const std::uint32_t full = (1u << d) - 1u;
  for (std::uint32_t a = 1; a < full; ++a)
    if (a & 1u) out.push_back(a);
  return out;
}

}  // namespace negdep
