#include "rsm/lp.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>

namespace rsm {

namespace {

using Rational = boost::multiprecision::cpp_rational;

template <class S>
struct ScalarOps;

template <>
struct ScalarOps<double> {
  static double zero() { return 0.0; }
  static bool positive(double v, double eps) { return v > eps; }
  static bool negative(double v, double eps) { return v < -eps; }
  static double abs(double v) { return std::abs(v); }
};

template <>
struct ScalarOps<Rational> {
  static Rational zero() { return Rational(0); }
  static bool positive(const Rational& v, double) { return v > 0; }
  static bool negative(const Rational& v, double) { return v < 0; }
  static Rational abs(const Rational& v) { return v < 0 ? Rational(-v) : v; }
};

// Phase-1 simplex with Bland's rule. Returns the phase-1 optimum and, when
// zero within tolerance, a feasible point for the original variables.
template <class S>
struct Phase1 {
  int rows, cols;               // original system
  std::vector<S> tab;           // (rows+1) x (cols+rows+1) tableau
  std::vector<int> basis;
  double eps;

  S& at(int r, int c) { return tab[static_cast<size_t>(r) * (cols + rows + 1) + c]; }

  Phase1(const std::vector<S>& A, int rows_, int cols_, const std::vector<S>& b, double eps_)
      : rows(rows_), cols(cols_), eps(eps_) {
    int width = cols + rows + 1;
    tab.assign(static_cast<size_t>(rows + 1) * width, ScalarOps<S>::zero());
    basis.resize(rows);
    for (int r = 0; r < rows; ++r) {
      bool flip = ScalarOps<S>::negative(b[r], 0.0);
      for (int c = 0; c < cols; ++c) {
        S v = A[static_cast<size_t>(r) * cols + c];
        at(r, c) = flip ? S(-v) : v;
      }
      at(r, cols + r) = S(1);
      at(r, cols + rows) = flip ? S(-b[r]) : b[r];
      basis[r] = cols + r;
    }
    // Objective row: minimize sum of artificials == maximize -(sum).
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c <= cols + rows; ++c)
        if (c != cols + r) at(rows, c) += at(r, c);
  }

  void pivot(int pr, int pc) {
    int width = cols + rows + 1;
    S piv = at(pr, pc);
    for (int c = 0; c < width; ++c) at(pr, c) = S(at(pr, c) / piv);
    for (int r = 0; r <= rows; ++r) {
      if (r == pr) continue;
      S f = at(r, pc);
      if (f == ScalarOps<S>::zero()) continue;
      for (int c = 0; c < width; ++c) at(r, c) = S(at(r, c) - f * at(pr, c));
    }
    basis[pr] = pc;
  }

  // Returns phase-1 optimum (sum of artificials at termination).
  S solve() {
    for (;;) {
      // Bland: smallest-index entering column with positive reduced cost.
      int pc = -1;
      for (int c = 0; c < cols + rows; ++c) {
        if (ScalarOps<S>::positive(at(rows, c), eps)) {
          pc = c;
          break;
        }
      }
      if (pc < 0) break;
      int pr = -1;
      for (int r = 0; r < rows; ++r) {
        if (!ScalarOps<S>::positive(at(r, pc), eps)) continue;
        if (pr < 0) {
          pr = r;
          continue;
        }
        S lhs = at(r, cols + rows) * at(pr, pc);
        S rhs = at(pr, cols + rows) * at(r, pc);
        if (lhs < rhs || (lhs == rhs && basis[r] < basis[pr])) pr = r;
      }
      if (pr < 0) break;  // unbounded cannot happen in phase 1; guard anyway
      pivot(pr, pc);
    }
    return at(rows, cols + rows);
  }

  std::vector<S> extract_point() const {
    std::vector<S> x(cols, ScalarOps<S>::zero());
    for (int r = 0; r < rows; ++r)
      if (basis[r] < cols) x[basis[r]] = tab[static_cast<size_t>(r) * (cols + rows + 1) + cols + rows];
    return x;
  }
};

}  // namespace

FeasResult simplex_feasible(const std::vector<double>& A, int rows, int cols,
                            const std::vector<double>& b, double tol, double degen_band) {
  if (static_cast<int>(A.size()) != rows * cols || static_cast<int>(b.size()) != rows)
    throw std::invalid_argument("simplex_feasible: shape mismatch");
  Phase1<double> p1(A, rows, cols, b, 1e-12);
  double opt = p1.solve();
  FeasResult res;
  res.residual = std::abs(opt);
  res.feasible = res.residual <= tol;
  res.near_degenerate = !res.feasible && res.residual <= degen_band;
  if (res.feasible) {
    auto x = p1.extract_point();
    res.point.assign(x.begin(), x.end());
  }
  return res;
}

bool simplex_feasible_exact(const std::vector<double>& A, int rows, int cols,
                            const std::vector<double>& b) {
  std::vector<Rational> Ar(A.size()), br(b.size());
  for (size_t i = 0; i < A.size(); ++i) Ar[i] = Rational(A[i]);
  for (size_t i = 0; i < b.size(); ++i) br[i] = Rational(b[i]);
  Phase1<Rational> p1(Ar, rows, cols, br, 0.0);
  Rational opt = p1.solve();
  return opt == 0;
}

}  // namespace rsm
