#pragma once

// Points of the hypercube {0,1}^d.
//
// Indexing convention used everywhere (library, JSON, CLI): bit j of the
// integer index holds i_{j+1}, i.e. i_1 is the least significant bit.  The
// JSON key string lists i_1 i_2 ... i_d left to right, so key "110" (d=3) is
// index 0b011 = 3.

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "negdep/scalar.hpp"

namespace negdep {

inline constexpr int kMaxDim = 20;

class Outcome {
 public:
  constexpr Outcome() = default;
  constexpr explicit Outcome(std::uint32_t bits) : bits_(bits) {}

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr int level() const { return std::popcount(bits_); }
  constexpr bool bit(int j) const { return (bits_ >> j) & 1u; }

  constexpr Outcome meet(Outcome o) const { return Outcome(bits_ & o.bits_); }
  constexpr Outcome join(Outcome o) const { return Outcome(bits_ | o.bits_); }
  /// Componentwise order.
  constexpr bool below(Outcome o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool comparable(Outcome o) const { return below(o) || o.below(*this); }

  constexpr auto operator<=>(const Outcome&) const = default;

 private:
  std::uint32_t bits_ = 0;
};

inline std::string outcome_key(Outcome o, int d) {
  std::string key(static_cast<std::size_t>(d), '0');
  for (int j = 0; j < d; ++j)
    if (o.bit(j)) key[static_cast<std::size_t>(j)] = '1';
  return key;
}

inline Outcome parse_outcome_key(std::string_view key, int d) {
  if (static_cast<int>(key.size()) != d)
    throw invalid_input("outcome key '" + std::string(key) + "' has length " +
                        std::to_string(key.size()) + ", expected " + std::to_string(d));
  std::uint32_t bits = 0;
  for (int j = 0; j < d; ++j) {
    const char c = key[static_cast<std::size_t>(j)];
    if (c == '1')
      bits |= 1u << j;
    else if (c != '0')
      throw invalid_input("outcome key '" + std::string(key) + "' is not binary");
  }
  return Outcome(bits);
}

/// All outcomes of {0,1}^d with exactly `level` ones, in increasing index order.
inline std::vector<Outcome> level_set(int d, int level) {
  std::vector<Outcome> out;
  for (std::uint32_t b = 0; b < (1u << d); ++b)
    if (std::popcount(b) == level) out.emplace_back(b);
  return out;
}

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

/// Index set {0..d-1} given as a bitmask.
inline std::vector<int> mask_to_indices(std::uint32_t mask) {
  std::vector<int> idx;
  for (int j = 0; mask != 0; ++j, mask >>= 1)
    if (mask & 1u) idx.push_back(j);
  return idx;
}

inline std::uint32_t indices_to_mask(const std::vector<int>& idx, int d) {
  std::uint32_t mask = 0;
  for (int j : idx) {
    if (j < 0 || j >= d) throw invalid_input("coordinate index out of range");
    if (mask & (1u << j)) throw invalid_input("duplicate coordinate index");
    mask |= 1u << j;
  }
  return mask;
}

/// Gathers the bits of `bits` selected by `mask` into a compact index
/// (lowest selected coordinate becomes bit 0).
inline std::uint32_t extract_bits(std::uint32_t bits, std::uint32_t mask) {
  std::uint32_t out = 0;
  int k = 0;
  for (int j = 0; mask >> j; ++j) {
    if ((mask >> j) & 1u) {
      out |= ((bits >> j) & 1u) << k;
      ++k;
    }
  }
  return out;
}

/// Inverse of extract_bits: spreads a compact index over the coordinates in `mask`.
inline std::uint32_t deposit_bits(std::uint32_t compact, std::uint32_t mask) {
  std::uint32_t out = 0;
  int k = 0;
  for (int j = 0; mask >> j; ++j) {
    if ((mask >> j) & 1u) {
      out |= ((compact >> k) & 1u) << j;
      ++k;
    }
  }
  return out;
}

}  // namespace negdep
