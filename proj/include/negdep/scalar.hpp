#pragma once

// Scalar support shared by every module: exact rationals (GMP) and doubles.
//
// All templated code in negdep is instantiated for exactly these two types.
// Comparisons go through the helpers below so the same algorithm runs exact
// in rational mode and with a fixed absolute tolerance in floating mode.

#include <gmpxx.h>

#include <cmath>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace negdep {

using Rational = mpq_class;

template <class T>
concept Scalar = std::same_as<T, double> || std::same_as<T, Rational>;

template <Scalar T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

/// Errors raised for invalid inputs (malformed pmfs, out-of-range marginals).
class invalid_input : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an input exceeds a configured dimension bound.
class dimension_error : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Raised when an iterative solver fails to reach its tolerance.
class convergence_error : public std::runtime_error {
 public:
  convergence_error(const std::string& what, double last_residual)
      : std::runtime_error(what), residual_(last_residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Default absolute tolerance for floating comparisons of probabilities.
inline constexpr double kFloatTol = 1e-12;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.get_d(); }

inline int sign_of(double x, double tol = kFloatTol) {
  if (x > tol) return 1;
  if (x < -tol) return -1;
  return 0;
}
inline int sign_of(const Rational& x, double = 0.0) { return sgn(x); }

template <Scalar T>
bool is_zero(const T& x, double tol = kFloatTol) {
  return sign_of(x, tol) == 0;
}

template <Scalar T>
bool nearly_equal(const T& a, const T& b, double tol = kFloatTol) {
  if constexpr (is_exact_v<T>) {
    return a == b;
  } else {
    return std::abs(a - b) <= tol;
  }
}

template <Scalar T>
T from_int(long v) {
  return T(v);
}

/// Conversion between the two scalar types (double -> Rational is exact).
template <Scalar X, Scalar T>
X scalar_cast(const T& v) {
  if constexpr (std::is_same_v<X, double>) {
    return to_double(v);
  } else {
    return Rational(v);
  }
}

inline Rational abs_value(const Rational& x) { return abs(x); }
inline double abs_value(double x) { return std::abs(x); }

/// Best rational approximation with denominator at most `max_den`
/// (continued fractions with the semiconvergent check).
inline Rational rationalize(double x, long max_den = 1'000'000) {
  if (!std::isfinite(x)) throw invalid_input("cannot rationalize a non-finite value");
  const bool neg = x < 0;
  double v = std::abs(x);
  long double rem = v;
  // Convergents h/k.
  mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  for (int it = 0; it < 64; ++it) {
    long double a_ld = std::floor(rem);
    mpz_class a(static_cast<double>(a_ld));
    mpz_class h2 = a * h1 + h0;
    mpz_class k2 = a * k1 + k0;
    if (k2 > max_den) {
      // Largest semiconvergent that still fits.
      mpz_class t = (mpz_class(max_den) - k0) / k1;
      mpz_class hs = t * h1 + h0;
      mpz_class ks = t * k1 + k0;
      Rational cand_semi(hs, ks);
      Rational cand_conv(h1, k1);
      Rational target(v);
      cand_semi.canonicalize();
      cand_conv.canonicalize();
      Rational best = abs(cand_semi - target) < abs(cand_conv - target) ? cand_semi : cand_conv;
      return neg ? Rational(-best) : best;
    }
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    long double frac = rem - a_ld;
    if (frac < 1e-18L) break;
    rem = 1.0L / frac;
  }
  Rational r(h1, k1);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

/// Parses "3/20", "-2", "0.35" or "1e-3" exactly into a rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& t) {
    const auto b = t.find_first_not_of(" \t\n\r");
    const auto e = t.find_last_not_of(" \t\n\r");
    t = (b == std::string::npos) ? std::string() : t.substr(b, e - b + 1);
  };
  trim(s);
  if (s.empty()) throw invalid_input("empty number");
  const auto bad = [&] { return invalid_input("malformed number '" + s + "'"); };
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    trim(num);
    trim(den);
    mpz_class n, dd;
    if (n.set_str(num, 10) != 0 || dd.set_str(den, 10) != 0) throw bad();
    if (dd == 0) throw invalid_input("zero denominator in '" + s + "'");
    Rational r(n, dd);
    r.canonicalize();
    return r;
  }
  // Decimal with optional exponent.
  std::size_t pos = 0;
  bool neg = false;
  if (s[pos] == '+' || s[pos] == '-') neg = s[pos++] == '-';
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false, seen_digit = false;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      seen_digit = true;
      if (seen_dot) ++frac_digits;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw bad();
  long exponent = 0;
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') throw bad();
    ++pos;
    std::size_t used = 0;
    try {
      exponent = std::stol(s.substr(pos), &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (pos + used != s.size()) throw bad();
  }
  mpz_class n(digits, 10);
  long shift = exponent - frac_digits;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
  Rational r = shift >= 0 ? Rational(n * scale) : Rational(n, scale);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

inline std::string to_string(const Rational& x) { return x.get_str(); }

/// mpq_class(n, d) is not reduced automatically; arithmetic assumes it is.
template <Scalar T>
void canonicalize_all(std::vector<T>& v) {
  if constexpr (is_exact_v<T>)
    for (auto& x : v) x.canonicalize();
}

}  // namespace negdep
