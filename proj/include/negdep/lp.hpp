#pragma once

// Two-phase dense tableau simplex for  min c'x  s.t.  A x = b, x >= 0.
//
// Instantiated for Rational (exact) and double. When the system is
// infeasible the result carries a Farkas certificate y with y'A >= 0 and
// y'b < 0, recovered from the phase-one reduced costs of the artificials.

#include <algorithm>
#include <optional>
#include <vector>

#include "negdep/linalg.hpp"
#include "negdep/scalar.hpp"

namespace negdep {

enum class LpStatus { Optimal, Infeasible, Unbounded };

template <Scalar T>
struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<T> x;       // primal solution (feasible cases)
  std::vector<T> farkas;  // y with y'A >= 0, y'b < 0 (infeasible case)
  T objective = T(0);
  std::vector<int> basis;  // basic column per row; values >= n are artificials
  int pivots = 0;
};

struct LpOptions {
  double tol = 1e-9;  // floating mode only
  int max_pivots = 100000;
};

namespace detail {

template <Scalar T>
class Tableau {
 public:
  Tableau(const Matrix<T>& a, const std::vector<T>& b, double tol)
      : m_(a.rows()), n_(a.cols()), width_(n_ + m_ + 1), tol_(tol),
        t_(static_cast<std::size_t>(m_ + 1) * width_, T(0)), sign_(static_cast<std::size_t>(m_), 1),
        basis_(static_cast<std::size_t>(m_)) {
    for (int i = 0; i < m_; ++i) {
      const bool flip = b[static_cast<std::size_t>(i)] < 0;
      sign_[static_cast<std::size_t>(i)] = flip ? -1 : 1;
      for (int j = 0; j < n_; ++j) at(i, j) = flip ? T(-a(i, j)) : a(i, j);
      at(i, n_ + i) = 1;
      at(i, width_ - 1) = flip ? T(-b[static_cast<std::size_t>(i)]) : b[static_cast<std::size_t>(i)];
      basis_[static_cast<std::size_t>(i)] = n_ + i;
    }
  }

  T& at(int r, int c) { return t_[static_cast<std::size_t>(r) * width_ + c]; }
  const T& at(int r, int c) const { return t_[static_cast<std::size_t>(r) * width_ + c]; }
  T& obj(int c) { return at(m_, c); }

  bool neg(const T& v) const {
    if constexpr (is_exact_v<T>) return sgn(v) < 0;
    else return v < -tol_;
  }
  bool pos(const T& v) const {
    if constexpr (is_exact_v<T>) return sgn(v) > 0;
    else return v > tol_;
  }
  bool nonzero(const T& v) const { return neg(v) || pos(v); }

  // Phase-one objective: minimize the sum of artificials.
  void setup_phase1() {
    for (int c = 0; c < width_; ++c) obj(c) = 0;
    for (int i = 0; i < m_; ++i)
      for (int c = 0; c < n_; ++c) obj(c) -= at(i, c);
    for (int i = 0; i < m_; ++i) obj(width_ - 1) -= at(i, width_ - 1);
  }

  void setup_phase2(const std::vector<T>& cost) {
    for (int c = 0; c < width_; ++c) obj(c) = 0;
    for (int c = 0; c < n_; ++c) obj(c) = cost[static_cast<std::size_t>(c)];
    for (int i = 0; i < m_; ++i) {
      const int bcol = basis_[static_cast<std::size_t>(i)];
      if (bcol >= n_) continue;
      const T cb = cost[static_cast<std::size_t>(bcol)];
      if (!nonzero(cb)) continue;
      for (int c = 0; c < width_; ++c) obj(c) -= cb * at(i, c);
    }
  }

  void pivot(int row, int col) {
    const T inv = T(1) / at(row, col);
    for (int c = 0; c < width_; ++c) at(row, c) *= inv;
    for (int r = 0; r <= m_; ++r) {
      if (r == row) continue;
      const T f = at(r, col);
      if (!nonzero(f)) {
        if constexpr (!is_exact_v<T>) at(r, col) = 0;
        continue;
      }
      for (int c = 0; c < width_; ++c) at(r, c) -= f * at(row, c);
      if constexpr (!is_exact_v<T>) at(r, col) = 0;
    }
    basis_[static_cast<std::size_t>(row)] = col;
  }

  // Runs simplex iterations on columns [0, allowed). Returns false if unbounded.
  bool run(int allowed, int max_pivots, int& pivots) {
    int degenerate = 0;
    for (;;) {
      const bool bland = degenerate > 50;
      int col = -1;
      T best = T(0);
      for (int c = 0; c < allowed; ++c) {
        if (!neg(obj(c))) continue;
        if (bland) {
          col = c;
          break;
        }
        if (col < 0 || obj(c) < best) {
          best = obj(c);
          col = c;
        }
      }
      if (col < 0) return true;
      int row = -1;
      T ratio = T(0);
      for (int r = 0; r < m_; ++r) {
        if (!pos(at(r, col))) continue;
        const T q = at(r, width_ - 1) / at(r, col);
        if (row < 0 || q < ratio ||
            (q == ratio && basis_[static_cast<std::size_t>(r)] < basis_[static_cast<std::size_t>(row)])) {
          row = r;
          ratio = q;
        }
      }
      if (row < 0) return false;
      degenerate = nonzero(ratio) ? 0 : degenerate + 1;
      pivot(row, col);
      if (++pivots > max_pivots) throw convergence_error("simplex pivot limit reached", 0.0);
    }
  }

  // Pivots basic artificials at zero level out of the basis where possible.
  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < n_) continue;
      for (int c = 0; c < n_; ++c)
        if (nonzero(at(i, c))) {
          pivot(i, c);
          break;
        }
    }
  }

  std::vector<T> primal() const {
    std::vector<T> x(static_cast<std::size_t>(n_), T(0));
    for (int i = 0; i < m_; ++i) {
      const int bcol = basis_[static_cast<std::size_t>(i)];
      if (bcol < n_) {
        T v = at(i, width_ - 1);
        if constexpr (!is_exact_v<T>) v = std::max(v, 0.0);
        x[static_cast<std::size_t>(bcol)] = v;
      }
    }
    return x;
  }

  // Farkas vector from the phase-one duals pi_i = 1 - rc(artificial_i).
  std::vector<T> farkas() {
    std::vector<T> y(static_cast<std::size_t>(m_));
    for (int i = 0; i < m_; ++i) {
      const T pi = T(1) - obj(n_ + i);
      y[static_cast<std::size_t>(i)] = sign_[static_cast<std::size_t>(i)] > 0 ? T(-pi) : pi;
    }
    return y;
  }

  T phase_value() { return T(-obj(width_ - 1)); }
  const std::vector<int>& basis() const { return basis_; }
  int n() const { return n_; }

 private:
  int m_, n_, width_;
  double tol_;
  std::vector<T> t_;
  std::vector<int> sign_;
  std::vector<int> basis_;
};

}  // namespace detail

/// Solves min c'x s.t. A x = b, x >= 0. With `cost` null only feasibility is decided.
template <Scalar T>
LpResult<T> solve_lp(const Matrix<T>& a, const std::vector<T>& b, const std::vector<T>* cost = nullptr,
                     const LpOptions& opts = {}) {
  if (static_cast<int>(b.size()) != a.rows()) throw invalid_input("LP right-hand side has the wrong size");
  if (cost && static_cast<int>(cost->size()) != a.cols()) throw invalid_input("LP cost has the wrong size");
  LpResult<T> res;
  detail::Tableau<T> tab(a, b, opts.tol);
  tab.setup_phase1();
  tab.run(a.cols(), opts.max_pivots, res.pivots);
  if (tab.pos(tab.phase_value())) {
    res.status = LpStatus::Infeasible;
    res.farkas = tab.farkas();
    res.basis = tab.basis();
    return res;
  }
  tab.drive_out_artificials();
  res.status = LpStatus::Optimal;
  if (cost) {
    tab.setup_phase2(*cost);
    if (!tab.run(a.cols(), opts.max_pivots, res.pivots)) {
      res.status = LpStatus::Unbounded;
      return res;
    }
  }
  res.x = tab.primal();
  res.basis = tab.basis();
  if (cost) {
    T v = 0;
    for (std::size_t j = 0; j < res.x.size(); ++j) v += (*cost)[j] * res.x[j];
    res.objective = v;
  }
  return res;
}

}  // namespace negdep
