#pragma once

#include <optional>

#include "finsheaf/int_types.hpp"

namespace finsheaf {

// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ..., d_i >= 0.
struct SmithResult {
  IntMatrix D;
  IntMatrix U, Uinv;  // rows x rows
  IntMatrix V, Vinv;  // cols x cols
  int rank = 0;       // number of nonzero diagonal entries

  IntVector diagonal() const;
};

SmithResult smith_normal_form(const IntMatrix& M);

// Basis of { v : M v = 0 } as matrix columns (a saturated lattice basis).
IntMatrix kernel_basis(const IntMatrix& M);

// Basis of the column span of M as matrix columns (empty matrix when M = 0).
IntMatrix column_span_basis(const IntMatrix& M);

// One integer solution x of M x = b, or nullopt when none exists.
std::optional<IntVector> solve_integer(const IntMatrix& M, const IntVector& b);

// Columnwise solve: X with M X = B, or nullopt when some column has no solution.
std::optional<IntMatrix> solve_integer(const IntMatrix& M, const IntMatrix& B);

// Reusable solver for repeated right-hand sides against a fixed matrix.
class IntSolver {
 public:
  explicit IntSolver(IntMatrix M);
  IntSolver(IntMatrix M, SmithResult snf);

  std::optional<IntVector> solve(const IntVector& b) const;
  std::optional<IntMatrix> solve(const IntMatrix& B) const;
  bool in_span(const IntVector& b) const { return solve(b).has_value(); }
  bool in_span(const IntMatrix& B) const { return solve(B).has_value(); }

  const IntMatrix& matrix() const { return m_; }

 private:
  IntMatrix m_;
  SmithResult snf_;
};

}  // namespace finsheaf
