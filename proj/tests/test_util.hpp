#pragma once

#include <random>
#include <string>
#include <vector>

#include "finsheaf/abelian.hpp"

namespace testutil {

using finsheaf::FgAbGroup;
using finsheaf::Int;
using finsheaf::IntMatrix;
using finsheaf::IntVector;

inline IntMatrix from_rows(const std::vector<std::vector<long>>& rows) {
  IntMatrix m(static_cast<Eigen::Index>(rows.size()),
              rows.empty() ? 0 : static_cast<Eigen::Index>(rows[0].size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      m(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
  return m;
}

inline IntVector from_entries(const std::vector<long>& v) {
  IntVector out(static_cast<Eigen::Index>(v.size()));
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = v[static_cast<size_t>(i)];
  return out;
}

inline IntMatrix random_matrix(std::mt19937& rng, Eigen::Index r, Eigen::Index c, long lo,
                               long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  IntMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

inline bool mat_eq(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

inline bool vec_eq(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return false;
  return true;
}

inline bool is_zero(const IntMatrix& a) { return mat_eq(a, IntMatrix::Zero(a.rows(), a.cols())); }

// "Z^r . d1 d2 ..." shorthand for checking computed invariants in one string.
inline std::string invariants_of(const FgAbGroup& g) {
  std::string s = "Z^" + std::to_string(g.rank());
  for (const Int& d : g.invariant_factors()) s += " " + d.get_str();
  return s;
}

// Random unimodular matrix: product of elementary row operations.
inline IntMatrix random_unimodular(std::mt19937& rng, Eigen::Index n, int ops = 12) {
  IntMatrix u = finsheaf::int_identity(n);
  if (n == 0) return u;
  std::uniform_int_distribution<long> coef(-3, 3);
  std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
  for (int t = 0; t < ops; ++t) {
    Eigen::Index i = pick(rng), j = pick(rng);
    if (i == j) {
      if (rng() % 2) u.row(i) = -u.row(i);
      continue;
    }
    Int c(coef(rng));
    u.row(i) += c * u.row(j);
  }
  return u;
}

}  // namespace testutil
