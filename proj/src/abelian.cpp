#include "finsheaf/abelian.hpp"

#include <stdexcept>

namespace finsheaf {

namespace {

// Direct sum of m copies of a relation matrix, copy-major generator order.
IntMatrix power_rels(const FgAbGroup& b, Eigen::Index m) {
  return kronecker(int_identity(m), b.rels());
}

}  // namespace

FgAbGroup::FgAbGroup() : FgAbGroup(0, IntMatrix(0, 0)) {}

FgAbGroup::FgAbGroup(Eigen::Index gens, IntMatrix rels) : gens_(gens), rels_(std::move(rels)) {
  if (rels_.rows() == 0 && rels_.cols() == 0) rels_ = IntMatrix::Zero(gens_, 0);
  if (rels_.rows() != gens_)
    throw std::invalid_argument("FgAbGroup: relation rows must match generator count");

  SmithResult s = smith_normal_form(rels_);
  rank_ = gens_ - s.rank;

  std::vector<Eigen::Index> rows;
  for (Eigen::Index i = s.rank; i < gens_; ++i) rows.push_back(i);  // free coords
  for (int i = 0; i < s.rank; ++i)
    if (s.D(i, i) >= 2) {
      rows.push_back(i);
      factors_.push_back(s.D(i, i));
    }

  coord_rows_ = IntMatrix(static_cast<Eigen::Index>(rows.size()), gens_);
  lift_cols_ = IntMatrix(gens_, static_cast<Eigen::Index>(rows.size()));
  for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(rows.size()); ++j) {
    coord_rows_.row(j) = s.U.row(rows[j]);
    lift_cols_.col(j) = s.Uinv.col(rows[j]);
  }
  rel_solver_ = std::make_shared<IntSolver>(rels_, std::move(s));
}

FgAbGroup FgAbGroup::free_group(Eigen::Index rank) { return FgAbGroup(rank, IntMatrix(rank, 0)); }

FgAbGroup FgAbGroup::cyclic(const Int& order) {
  IntMatrix r(1, order == 0 ? 0 : 1);
  if (order != 0) r(0, 0) = order;
  return FgAbGroup(1, r);
}

FgAbGroup FgAbGroup::from_invariants(Eigen::Index rank, const std::vector<Int>& torsion) {
  Eigen::Index t = static_cast<Eigen::Index>(torsion.size());
  IntMatrix r = IntMatrix::Zero(rank + t, t);
  for (Eigen::Index i = 0; i < t; ++i) r(rank + i, i) = torsion[i];
  return FgAbGroup(rank + t, r);
}

Int FgAbGroup::torsion_order() const {
  Int o = 1;
  for (const Int& d : factors_) o *= d;
  return o;
}

bool FgAbGroup::same_invariants(const FgAbGroup& other) const {
  return rank_ == other.rank_ && factors_ == other.factors_;
}

IntVector FgAbGroup::canonical_coords(const IntVector& v) const {
  if (v.size() != gens_) throw std::invalid_argument("canonical_coords: size mismatch");
  IntVector w = coord_rows_ * v;
  for (Eigen::Index j = 0; j < w.size(); ++j) w(j) = emod(w(j), canonical_modulus(j));
  return w;
}

IntVector FgAbGroup::canonical_lift(Eigen::Index j) const { return lift_cols_.col(j); }

Int FgAbGroup::canonical_modulus(Eigen::Index j) const {
  return j < rank_ ? Int(0) : factors_[static_cast<size_t>(j - rank_)];
}

bool FgAbGroup::is_zero_element(const IntVector& v) const {
  IntVector w = canonical_coords(v);
  for (Eigen::Index j = 0; j < w.size(); ++j)
    if (w(j) != 0) return false;
  return true;
}

bool FgAbGroup::same_element(const IntVector& v, const IntVector& w) const {
  return is_zero_element(IntVector(v - w));
}

const IntSolver& FgAbGroup::relation_solver() const { return *rel_solver_; }

FgAbGroup normalize(Eigen::Index gens, const IntMatrix& rels) { return FgAbGroup(gens, rels); }

GroupMap::GroupMap(FgAbGroup src, FgAbGroup dst, IntMatrix m)
    : src_(std::move(src)), dst_(std::move(dst)), m_(std::move(m)) {
  if (m_.rows() != dst_.gens() || m_.cols() != src_.gens())
    throw std::invalid_argument("GroupMap: matrix shape mismatch");
}

GroupMap GroupMap::identity(const FgAbGroup& g) { return GroupMap(g, g, int_identity(g.gens())); }

GroupMap GroupMap::zero(const FgAbGroup& src, const FgAbGroup& dst) {
  return GroupMap(src, dst, IntMatrix::Zero(dst.gens(), src.gens()));
}

bool GroupMap::is_valid() const {
  if (src_.rels().cols() == 0) return true;
  return dst_.relation_solver().in_span(IntMatrix(m_ * src_.rels()));
}

bool GroupMap::equals(const GroupMap& other) const {
  if (m_.rows() != other.m_.rows() || m_.cols() != other.m_.cols()) return false;
  IntMatrix d = m_ - other.m_;
  for (Eigen::Index j = 0; j < d.cols(); ++j)
    if (!dst_.is_zero_element(IntVector(d.col(j)))) return false;
  return true;
}

bool GroupMap::is_zero_map() const { return equals(zero(src_, dst_)); }

bool GroupMap::is_iso() const { return kernel().is_trivial() && cokernel().is_trivial(); }

GroupMap GroupMap::compose_after(const GroupMap& inner) const {
  if (inner.dst().gens() != src_.gens())
    throw std::invalid_argument("compose_after: middle group mismatch");
  return GroupMap(inner.src(), dst_, IntMatrix(m_ * inner.matrix()));
}

IntMatrix GroupMap::canonical_matrix() const {
  IntMatrix out(dst_.canonical_gens(), src_.canonical_gens());
  for (Eigen::Index j = 0; j < out.cols(); ++j)
    out.col(j) = dst_.canonical_coords(IntVector(m_ * src_.canonical_lift(j)));
  return out;
}

FgAbGroup GroupMap::kernel() const {
  IntMatrix P = preimage_lattice(m_, dst_.rels());
  return subquotient(P, src_.rels());
}

FgAbGroup GroupMap::cokernel() const { return normalize(dst_.gens(), hcat(m_, dst_.rels())); }

FgAbGroup GroupMap::image() const { return subquotient(hcat(m_, dst_.rels()), dst_.rels()); }

GroupMap direct_sum(const GroupMap& a, const GroupMap& b) {
  return GroupMap(direct_sum(a.src(), b.src()), direct_sum(a.dst(), b.dst()),
                  block_diag({a.matrix(), b.matrix()}));
}

FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b) {
  return FgAbGroup(a.gens() + b.gens(), block_diag({a.rels(), b.rels()}));
}

FgAbGroup subquotient(const IntMatrix& P, const IntMatrix& Q) {
  if (P.rows() != Q.rows()) throw std::invalid_argument("subquotient: ambient rank mismatch");
  IntSolver ps(P);
  auto C = ps.solve(Q);
  if (!C) throw std::logic_error("subquotient: Q is not contained in span(P)");
  return FgAbGroup(P.cols(), hcat(*C, kernel_basis(P)));
}

IntMatrix preimage_lattice(const IntMatrix& M, const IntMatrix& R) {
  if (R.cols() == 0) return kernel_basis(M);
  IntMatrix K = kernel_basis(hcat(M, IntMatrix(-R)));
  return K.topRows(M.cols());
}

FgAbGroup pair_homology(const GroupMap& f, const GroupMap& g) {
  if (f.dst().gens() != g.src().gens())
    throw std::invalid_argument("pair_homology: maps are not composable");
  IntMatrix P = preimage_lattice(g.matrix(), g.dst().rels());
  IntMatrix Q = hcat(f.matrix(), g.src().rels());
  return subquotient(P, Q);
}

FgAbGroup tensor_product(const FgAbGroup& a, const FgAbGroup& b) {
  IntMatrix rels = hcat(kronecker(a.rels(), int_identity(b.gens())),
                        kronecker(int_identity(a.gens()), b.rels()));
  return FgAbGroup(a.gens() * b.gens(), rels);
}

namespace {

// b^m -> b^n where block (i, j) is d * identity when connect(i) == j.
GroupMap diagonal_power_map(const FgAbGroup& b, Eigen::Index mcopies, Eigen::Index ncopies,
                            const std::vector<std::pair<Eigen::Index, Eigen::Index>>& blocks,
                            const std::vector<Int>& scales) {
  FgAbGroup src(mcopies * b.gens(), power_rels(b, mcopies));
  FgAbGroup dst(ncopies * b.gens(), power_rels(b, ncopies));
  IntMatrix m = IntMatrix::Zero(dst.gens(), src.gens());
  for (size_t t = 0; t < blocks.size(); ++t) {
    auto [row, col] = blocks[t];
    for (Eigen::Index i = 0; i < b.gens(); ++i)
      m(row * b.gens() + i, col * b.gens() + i) = scales[t];
  }
  return GroupMap(std::move(src), std::move(dst), std::move(m));
}

}  // namespace

FgAbGroup hom_group(const FgAbGroup& a, const FgAbGroup& b) {
  Eigen::Index r = a.rank(), k = static_cast<Eigen::Index>(a.invariant_factors().size());
  std::vector<std::pair<Eigen::Index, Eigen::Index>> blocks;
  std::vector<Int> scales;
  for (Eigen::Index j = 0; j < k; ++j) {
    blocks.push_back({j, r + j});
    scales.push_back(a.invariant_factors()[j]);
  }
  // Hom(-, b) applied to 0 -> Z^k -> Z^{r+k} -> a -> 0
  return diagonal_power_map(b, r + k, k, blocks, scales).kernel();
}

FgAbGroup ext1_group(const FgAbGroup& a, const FgAbGroup& b) {
  Eigen::Index r = a.rank(), k = static_cast<Eigen::Index>(a.invariant_factors().size());
  std::vector<std::pair<Eigen::Index, Eigen::Index>> blocks;
  std::vector<Int> scales;
  for (Eigen::Index j = 0; j < k; ++j) {
    blocks.push_back({j, r + j});
    scales.push_back(a.invariant_factors()[j]);
  }
  return diagonal_power_map(b, r + k, k, blocks, scales).cokernel();
}

FgAbGroup tor1_group(const FgAbGroup& a, const FgAbGroup& b) {
  Eigen::Index r = a.rank(), k = static_cast<Eigen::Index>(a.invariant_factors().size());
  std::vector<std::pair<Eigen::Index, Eigen::Index>> blocks;
  std::vector<Int> scales;
  for (Eigen::Index j = 0; j < k; ++j) {
    blocks.push_back({r + j, j});
    scales.push_back(a.invariant_factors()[j]);
  }
  // - tensor b applied to the same resolution
  return diagonal_power_map(b, k, r + k, blocks, scales).kernel();
}

IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out = IntMatrix::Zero(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  return out;
}

}  // namespace finsheaf
