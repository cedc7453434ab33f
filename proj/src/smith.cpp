#include "finsheaf/smith.hpp"

#include <stdexcept>

namespace finsheaf {

namespace {

Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

// Quotient rounded to nearest, so |a - q*b| <= |b|/2. Small remainders keep
// the elimination entries from blowing up.
Int round_div(const Int& a, const Int& b) {
  Int q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  Int twice = 2 * abs_int(r);
  Int ab = abs_int(b);
  if (twice > ab || (twice == ab && q < 0)) {
    if ((a < 0) == (b < 0))
      q += 1;
    else
      q -= 1;
  }
  return q;
}

// Row/column elementary operations applied to M and mirrored into the
// transforms so that U*M0*V = M holds at every step.
struct Worker {
  IntMatrix M, U, Uinv, V, Vinv;

  explicit Worker(const IntMatrix& m)
      : M(m),
        U(int_identity(m.rows())),
        Uinv(int_identity(m.rows())),
        V(int_identity(m.cols())),
        Vinv(int_identity(m.cols())) {}

  void row_swap(Eigen::Index a, Eigen::Index b) {
    if (a == b) return;
    M.row(a).swap(M.row(b));
    U.row(a).swap(U.row(b));
    Uinv.col(a).swap(Uinv.col(b));
  }
  void col_swap(Eigen::Index a, Eigen::Index b) {
    if (a == b) return;
    M.col(a).swap(M.col(b));
    V.col(a).swap(V.col(b));
    Vinv.row(a).swap(Vinv.row(b));
  }
  // row a += q * row b
  void row_add(Eigen::Index a, Eigen::Index b, const Int& q) {
    if (q == 0) return;
    M.row(a) += q * M.row(b);
    U.row(a) += q * U.row(b);
    Uinv.col(b) -= q * Uinv.col(a);
  }
  // col a += q * col b
  void col_add(Eigen::Index a, Eigen::Index b, const Int& q) {
    if (q == 0) return;
    M.col(a) += q * M.col(b);
    V.col(a) += q * V.col(b);
    Vinv.row(b) -= q * Vinv.row(a);
  }
  void row_negate(Eigen::Index a) {
    M.row(a) = -M.row(a);
    U.row(a) = -U.row(a);
    Uinv.col(a) = -Uinv.col(a);
  }
};

}  // namespace

IntVector SmithResult::diagonal() const {
  Eigen::Index n = std::min(D.rows(), D.cols());
  IntVector d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = D(i, i);
  return d;
}

SmithResult smith_normal_form(const IntMatrix& M) {
  Worker w(M);
  const Eigen::Index rows = M.rows(), cols = M.cols();
  const Eigen::Index n = std::min(rows, cols);

  Eigen::Index s = 0;
  while (s < n) {
    // Locate the entry of smallest nonzero magnitude in the trailing block.
    // Re-selected after every dirty pass: with nearest-quotient remainders the
    // pivot at least halves each round, and small pivots keep fill-in tame.
    Eigen::Index pr = -1, pc = -1;
    Int best = 0;
    for (Eigen::Index i = s; i < rows; ++i)
      for (Eigen::Index j = s; j < cols; ++j) {
        Int a = abs_int(w.M(i, j));
        if (a != 0 && (pr < 0 || a < best)) {
          best = a;
          pr = i;
          pc = j;
        }
      }
    if (pr < 0) break;  // trailing block is zero
    w.row_swap(s, pr);
    w.col_swap(s, pc);

    bool dirty = false;
    for (Eigen::Index i = s + 1; i < rows; ++i) {
      if (w.M(i, s) == 0) continue;
      w.row_add(i, s, -round_div(w.M(i, s), w.M(s, s)));
      if (w.M(i, s) != 0) dirty = true;
    }
    for (Eigen::Index j = s + 1; j < cols; ++j) {
      if (w.M(s, j) == 0) continue;
      w.col_add(j, s, -round_div(w.M(s, j), w.M(s, s)));
      if (w.M(s, j) != 0) dirty = true;
    }
    if (dirty) continue;
    // Pivot must divide every entry of the trailing block to keep the
    // divisibility chain; fold a bad row in and redo the position. The fold
    // forces an inexact division next round, so the pivot shrinks.
    bool folded = false;
    for (Eigen::Index i = s + 1; i < rows && !folded; ++i)
      for (Eigen::Index j = s + 1; j < cols && !folded; ++j)
        if (w.M(i, j) % w.M(s, s) != 0) {
          w.row_add(s, i, 1);
          folded = true;
        }
    if (folded) continue;
    if (w.M(s, s) < 0) w.row_negate(s);
    ++s;
  }

  SmithResult r;
  r.D = std::move(w.M);
  r.U = std::move(w.U);
  r.Uinv = std::move(w.Uinv);
  r.V = std::move(w.V);
  r.Vinv = std::move(w.Vinv);
  r.rank = static_cast<int>(s);
  return r;
}

IntMatrix kernel_basis(const IntMatrix& M) {
  if (M.cols() == 0) return IntMatrix(M.cols(), 0);
  if (M.rows() == 0) return int_identity(M.cols());
  SmithResult s = smith_normal_form(M);
  Eigen::Index k = M.cols() - s.rank;
  IntMatrix out(M.cols(), k);
  for (Eigen::Index j = 0; j < k; ++j) out.col(j) = s.V.col(s.rank + j);
  return out;
}

IntMatrix column_span_basis(const IntMatrix& M) {
  if (M.cols() == 0 || M.rows() == 0) return IntMatrix(M.rows(), 0);
  SmithResult s = smith_normal_form(M);
  IntMatrix out(M.rows(), s.rank);
  for (int j = 0; j < s.rank; ++j) out.col(j) = s.D(j, j) * s.Uinv.col(j);
  return out;
}

IntSolver::IntSolver(IntMatrix M) : m_(std::move(M)), snf_(smith_normal_form(m_)) {}

IntSolver::IntSolver(IntMatrix M, SmithResult snf) : m_(std::move(M)), snf_(std::move(snf)) {}

std::optional<IntVector> IntSolver::solve(const IntVector& b) const {
  if (b.size() != m_.rows()) throw std::invalid_argument("solve: size mismatch");
  IntVector c = snf_.U * b;
  IntVector z = IntVector::Zero(m_.cols());
  Eigen::Index n = std::min(m_.rows(), m_.cols());
  for (Eigen::Index i = 0; i < n; ++i) {
    Int d = snf_.D(i, i);
    if (d == 0) {
      if (c(i) != 0) return std::nullopt;
    } else {
      if (c(i) % d != 0) return std::nullopt;
      z(i) = c(i) / d;
    }
  }
  for (Eigen::Index i = n; i < m_.rows(); ++i)
    if (c(i) != 0) return std::nullopt;
  return IntVector(snf_.V * z);
}

std::optional<IntMatrix> IntSolver::solve(const IntMatrix& B) const {
  IntMatrix X(m_.cols(), B.cols());
  for (Eigen::Index j = 0; j < B.cols(); ++j) {
    auto x = solve(IntVector(B.col(j)));
    if (!x) return std::nullopt;
    X.col(j) = *x;
  }
  return X;
}

std::optional<IntVector> solve_integer(const IntMatrix& M, const IntVector& b) {
  return IntSolver(M).solve(b);
}

std::optional<IntMatrix> solve_integer(const IntMatrix& M, const IntMatrix& B) {
  return IntSolver(M).solve(B);
}

}  // namespace finsheaf
