#pragma once

#include <memory>
#include <string>
#include <vector>

#include "finsheaf/smith.hpp"

namespace finsheaf {

// Finitely generated abelian group presented as Z^gens / column span of rels.
// The normal form (free rank + invariant factors >= 2, ascending divisibility
// chain) is computed once and cached; generators keep their original order.
class FgAbGroup {
 public:
  FgAbGroup();  // trivial group
  FgAbGroup(Eigen::Index gens, IntMatrix rels);

  static FgAbGroup free_group(Eigen::Index rank);
  static FgAbGroup cyclic(const Int& order);  // order 0 = Z
  // rank + listed torsion factors, generators ordered free-first.
  static FgAbGroup from_invariants(Eigen::Index rank, const std::vector<Int>& torsion);

  Eigen::Index gens() const { return gens_; }
  const IntMatrix& rels() const { return rels_; }

  Eigen::Index rank() const { return rank_; }
  const std::vector<Int>& invariant_factors() const { return factors_; }
  bool is_trivial() const { return rank_ == 0 && factors_.empty(); }
  bool is_free() const { return factors_.empty(); }
  // order of the torsion subgroup (1 when free)
  Int torsion_order() const;

  bool same_invariants(const FgAbGroup& other) const;

  // Coordinates of a presentation vector in canonical generators: free
  // coordinates first, then torsion coordinates (reduced into [0, d_i)),
  // factors ascending.
  IntVector canonical_coords(const IntVector& v) const;
  // Presentation vector representing the j-th canonical generator.
  IntVector canonical_lift(Eigen::Index j) const;
  Eigen::Index canonical_gens() const { return rank_ + static_cast<Eigen::Index>(factors_.size()); }
  // Modulus of canonical coordinate j (invariant factor, or 0 on free coords).
  Int canonical_modulus(Eigen::Index j) const;

  bool is_zero_element(const IntVector& v) const;
  bool same_element(const IntVector& v, const IntVector& w) const;

  const IntSolver& relation_solver() const;

 private:
  Eigen::Index gens_ = 0;
  IntMatrix rels_;
  Eigen::Index rank_ = 0;
  std::vector<Int> factors_;
  // rows of U (from SNF of rels_) giving canonical coordinates; torsion rows
  // first (with moduli), then free rows
  IntMatrix coord_rows_;
  IntMatrix lift_cols_;
  std::shared_ptr<const IntSolver> rel_solver_;
};

FgAbGroup normalize(Eigen::Index gens, const IntMatrix& rels);

// Homomorphism src -> dst given on presentation generators by a dst.gens() x
// src.gens() matrix acting on column vectors.
class GroupMap {
 public:
  GroupMap() = default;
  GroupMap(FgAbGroup src, FgAbGroup dst, IntMatrix m);

  static GroupMap identity(const FgAbGroup& g);
  static GroupMap zero(const FgAbGroup& src, const FgAbGroup& dst);

  const FgAbGroup& src() const { return src_; }
  const FgAbGroup& dst() const { return dst_; }
  const IntMatrix& matrix() const { return m_; }

  // A matrix defines a homomorphism iff it maps relations into relations.
  bool is_valid() const;

  IntVector apply(const IntVector& v) const { return m_ * v; }

  bool equals(const GroupMap& other) const;
  bool is_zero_map() const;
  bool is_iso() const;

  GroupMap compose_after(const GroupMap& inner) const;  // this . inner

  // Matrix on canonical generators (torsion-first), entries reduced mod the
  // target coordinate modulus.
  IntMatrix canonical_matrix() const;

  FgAbGroup kernel() const;
  FgAbGroup cokernel() const;
  FgAbGroup image() const;

 private:
  FgAbGroup src_, dst_;
  IntMatrix m_;
};

GroupMap direct_sum(const GroupMap& a, const GroupMap& b);
FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b);

// span(P) / span(Q) inside Z^n, for column generator matrices with
// span(Q) contained in span(P); generators of the result are the columns of P.
FgAbGroup subquotient(const IntMatrix& P, const IntMatrix& Q);

// Generators (as columns) of { v : M v lies in span(R) }.
IntMatrix preimage_lattice(const IntMatrix& M, const IntMatrix& R);

// ker(g) / im(f) for composable maps with g . f = 0.
FgAbGroup pair_homology(const GroupMap& f, const GroupMap& g);

// Derived binary functors, computed from a length-1 free resolution of a.
FgAbGroup tensor_product(const FgAbGroup& a, const FgAbGroup& b);
FgAbGroup hom_group(const FgAbGroup& a, const FgAbGroup& b);
FgAbGroup ext1_group(const FgAbGroup& a, const FgAbGroup& b);
FgAbGroup tor1_group(const FgAbGroup& a, const FgAbGroup& b);

// Kronecker product mapping tensor generators; index (i,j) -> i * bGens + j.
IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b);

}  // namespace finsheaf
