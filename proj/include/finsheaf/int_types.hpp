#pragma once

#include <gmpxx.h>

#include <Eigen/Dense>

#include <vector>

namespace Eigen {

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  typedef mpz_class Real;
  typedef mpz_class NonInteger;
  typedef mpz_class Nested;

  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }

  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

// Let gmpxx expression templates mix with mpz_class inside Eigen expressions.
// mpz_class is itself __gmp_expr<mpz_t, mpz_t>, so an exact specialization
// breaks the tie between the two mixed forms.
template <typename T, typename U, typename BinaryOp>
struct ScalarBinaryOpTraits<mpz_class, __gmp_expr<T, U>, BinaryOp> {
  typedef mpz_class ReturnType;
};
template <typename T, typename U, typename BinaryOp>
struct ScalarBinaryOpTraits<__gmp_expr<T, U>, mpz_class, BinaryOp> {
  typedef mpz_class ReturnType;
};
template <typename BinaryOp>
struct ScalarBinaryOpTraits<mpz_class, mpz_class, BinaryOp> {
  typedef mpz_class ReturnType;
};

}  // namespace Eigen

namespace finsheaf {

// Exact arbitrary-precision integer scalar.
using Int = mpz_class;

using IntMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

inline IntMatrix int_identity(Eigen::Index n) {
  IntMatrix m = IntMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

inline IntMatrix zeros(Eigen::Index r, Eigen::Index c) { return IntMatrix::Zero(r, c); }

inline IntMatrix hcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() == 0) return b;
  if (b.cols() == 0) return a;
  IntMatrix out(a.rows(), a.cols() + b.cols());
  out.leftCols(a.cols()) = a;
  out.rightCols(b.cols()) = b;
  return out;
}

inline IntMatrix vcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  IntMatrix out(a.rows() + b.rows(), a.cols());
  out.topRows(a.rows()) = a;
  out.bottomRows(b.rows()) = b;
  return out;
}

inline IntMatrix block_diag(const std::vector<IntMatrix>& blocks) {
  Eigen::Index r = 0, c = 0;
  for (const auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  IntMatrix out = IntMatrix::Zero(r, c);
  r = 0;
  c = 0;
  for (const auto& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

// Euclidean remainder in [0, |m|); identity when m = 0.
inline Int emod(const Int& a, const Int& m) {
  if (m == 0) return a;
  Int r = a % m;
  if (r < 0) r += (m < 0 ? Int(-m) : m);
  return r;
}

inline long to_long(const Int& a) { return a.get_si(); }

}  // namespace finsheaf
