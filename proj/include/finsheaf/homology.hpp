#pragma once

#include <string>
#include <utility>
#include <vector>

#include "finsheaf/complex.hpp"
#include "finsheaf/sheaf.hpp"

namespace finsheaf {

// -- simplicial chain models ------------------------------------------------

// Chain complex over the strict chains of a support subset: degree n sums
// F(x_0) over chains x_0 < ... < x_n, the boundary alternates face deletions,
// and the front face applies the edge map into x_1. Its homology is the left
// derived colimit of the stalk diagram over the support.
class BarComplex {
 public:
  BarComplex() = default;
  // Builds terms for degrees 0..max_deg; degrees past the longest chain are
  // dropped.
  BarComplex(Sheaf f, std::vector<int> support, int max_deg);

  const Sheaf& coefficients() const { return f_; }
  const std::vector<int>& support() const { return support_; }
  int top() const { return static_cast<int>(lists_.size()) - 1; }
  const std::vector<std::vector<int>>& chain_list(int n) const;
  // Generator offset of chain i inside the degree-n term.
  Eigen::Index block_offset(int n, int i) const;
  // Position of a chain in the degree-n list, -1 when absent.
  int chain_position(int n, const std::vector<int>& chain) const;
  const ChainComplex& complex() const { return cx_; }

 private:
  Sheaf f_;
  std::vector<int> support_;
  std::vector<std::vector<std::vector<int>>> lists_;
  std::vector<std::vector<Eigen::Index>> offsets_;
  ChainComplex cx_;
};

// Cochain mirror over the same chains with F(x_n) coefficients; the top face
// applies the edge map out of x_n. Its cohomology is the right derived limit
// (derived sections).
class CobarComplex {
 public:
  CobarComplex() = default;
  CobarComplex(Sheaf f, std::vector<int> support, int max_deg);

  const Sheaf& coefficients() const { return f_; }
  const std::vector<int>& support() const { return support_; }
  int top() const { return static_cast<int>(lists_.size()) - 1; }
  const std::vector<std::vector<int>>& chain_list(int n) const;
  Eigen::Index block_offset(int n, int i) const;
  int chain_position(int n, const std::vector<int>& chain) const;
  const CochainComplex& complex() const { return cx_; }

 private:
  Sheaf f_;
  std::vector<int> support_;
  std::vector<std::vector<std::vector<int>>> lists_;
  std::vector<std::vector<Eigen::Index>> offsets_;
  CochainComplex cx_;
};

// Chain-level matrix in degree n of a coefficient morphism over a common
// support: the component at the chain head acts blockwise.
IntMatrix bar_morphism_matrix(const SheafMorphism& m, const BarComplex& src,
                              const BarComplex& dst, int n);
// Cochain mirror: the component at the chain tail acts blockwise.
IntMatrix cobar_morphism_matrix(const SheafMorphism& m, const CobarComplex& src,
                                const CobarComplex& dst, int n);
// Identity-coefficient inclusion of supports; every chain of src must occur
// in dst.
IntMatrix bar_inclusion_matrix(const BarComplex& src, const BarComplex& dst, int n);

// -- projective resolution --------------------------------------------------

// One minimal-open summand Z_{U_x} per tag (x, j); j indexes the covered
// stalk generator in degree zero and the covered kernel column above.
using TermTags = std::vector<std::pair<int, Eigen::Index>>;

// Direct sum of minimal-open constant Z summands over the tags: free stalks
// with one coordinate per tag below the element, edges are coordinate
// placements.
Sheaf tagged_sum_sheaf(PosetPtr space, const TermTags& tags);

// Chain P_length -> ... -> P_0 -> F of tagged sums, surjective augmentation,
// exact at every stalk. The global colimit of each summand is Z (minimal
// opens are connected), so the induced colimit complex is free on the tags.
class Resolution {
 public:
  const Sheaf& base() const { return base_; }
  int length() const { return static_cast<int>(terms_.size()) - 1; }
  const TermTags& tags(int k) const { return tags_[static_cast<size_t>(k)]; }
  const Sheaf& term(int k) const { return terms_[static_cast<size_t>(k)]; }
  // Stalk component at x of d_k : P_k -> P_{k-1}, or of the augmentation
  // P_0 -> F when k == 0.
  const IntMatrix& component(int k, int x) const;
  SheafMorphism diff(int k) const;  // k >= 1
  SheafMorphism augmentation() const;
  // Matrix of d_k on summand colimits, Z^{#tags(k)} -> Z^{#tags(k-1)}.
  const IntMatrix& colim_matrix(int k) const;
  ChainComplex colim_complex() const;  // free terms in degrees 0..length

 private:
  friend Resolution standard_resolution(const Sheaf& f, int length);
  Resolution() = default;
  Sheaf base_;
  std::vector<Sheaf> terms_;
  std::vector<TermTags> tags_;
  std::vector<std::vector<IntMatrix>> comps_;  // [k][x]
  std::vector<IntMatrix> colim_;               // [k-1] holds d_k
};

Resolution standard_resolution(const Sheaf& f, int length);

// -- derived homology and cohomology ----------------------------------------

// Colimit of the stalk diagram over the whole space (degree-zero homology).
FgAbGroup cosections(const Sheaf& f);

// H_0..H_d computed from the colimit complex of a standard resolution of
// length d+2.
std::vector<FgAbGroup> homology(const Sheaf& f, int max_deg);
// Independent oracle: homology of the strict-chain complex.
std::vector<FgAbGroup> bar_homology(const Sheaf& f, int max_deg);
// H^0..H^d of the strict-cochain complex.
std::vector<FgAbGroup> cohomology(const Sheaf& f, int max_deg);

// Total simplicial complex of a bounded complex of sheaves: the term in
// homological degree m contributes its degree-k chains in total degree m+k,
// coefficient maps carry the sign (-1)^k.
ChainComplex bar_total(const SheafComplex& c);
// Total cosimplicial complex, reading homological degree m as cochain degree
// -m: level-r cochains of the degree-m term sit in total degree r-m.
CochainComplex cobar_total(const SheafComplex& c);

std::vector<FgAbGroup> homology(const SheafComplex& c, int max_deg);
std::vector<FgAbGroup> cohomology(const SheafComplex& c, int max_deg);

// -- functoriality ----------------------------------------------------------

// Chain-level matrix in degree n of composition with a monotone map: chains
// map to their images, images with a repeated element contribute zero. Source
// coefficients must equal the pullback of dst's coefficients g.
IntMatrix pushforward_chain_matrix(const MonotoneMap& f, const Sheaf& g,
                                   const BarComplex& src, const BarComplex& dst,
                                   int n);

// Induced maps H_i(source space, pullback of g) -> H_i(target space, g).
std::vector<GroupMap> pushforward(const MonotoneMap& f, const Sheaf& g, int max_deg);

// Homology supported in a closed subset: homology of the closed restriction.
std::vector<FgAbGroup> local_homology(const Sheaf& f, const std::vector<int>& y,
                                      int max_deg);

// -- exactness and comparison checks ----------------------------------------

struct SequenceReport {
  bool pass = false;
  // Degreewise groups of the three columns, 0..max_deg.
  std::vector<FgAbGroup> left, middle, right;
  std::string detail;  // first failed clause, empty when pass
};

// Open cover X = U v V: left = H_i(U n V), middle = H_i(U) + H_i(V), right =
// H_i(X); verifies zero composites, exactness at the middle column, and the
// boundary compatibility coker(middle->right) = ker(left->middle) one degree
// down.
SequenceReport mv_open_check(const Sheaf& f, const std::vector<int>& u,
                             const std::vector<int>& v, int max_deg);
// Closed cover X = Y v Z, same shape.
SequenceReport mv_closed_check(const Sheaf& f, const std::vector<int>& y,
                               const std::vector<int>& z, int max_deg);

struct ExcisionReport {
  bool pass = false;
  std::vector<FgAbGroup> inner, outer;  // homology supported in Y, on U vs on X
  std::string detail;
};

// Y closed and contained in the open U: the inclusion-induced map on homology
// supported in Y must be an isomorphism in every degree.
ExcisionReport excision_check(const Sheaf& f, const std::vector<int>& u,
                              const std::vector<int>& y, int max_deg);

struct ComparisonReport {
  bool pass = false;
  std::vector<FgAbGroup> groups;     // computed, degree 0..max_deg
  std::vector<FgAbGroup> predicted;  // formula side
  std::string detail;
};

// H_i of the derived tensor with a coefficient group, against
// (H_i tensor G) + Tor_1(H_{i-1}, G).
ComparisonReport universal_coefficients(const Sheaf& f, const FgAbGroup& g,
                                        int max_deg);

// H_n of the external product on the product space (flat replacement on each
// factor), against the sum of H_p tensor H_q and the Tor_1 terms.
ComparisonReport kunneth(const Sheaf& f1, const Sheaf& f2, int max_deg);

// Termwise integer dual of a standard resolution of length d+2: one
// direct-image summand per tag (x, j) with stalk Z^{components of U_y n U_x}
// at y. The dual of P_k is stored at homological degree -k, so the complex
// occupies degrees -(d+2)..0.
SheafComplex derived_dual(const Sheaf& f, int max_deg);

// H^i of the dual complex against Hom(H_i, Z) + Ext1(H_{i-1}, Z).
ComparisonReport duality_sequence_check(const Sheaf& f, int max_deg);

// -- cap product ------------------------------------------------------------

// Shared chain-level state for the evaluation pairing: cycles with f
// coefficients against cocycles with f2 coefficients, landing in chains with
// tensor(f, f2) coefficients.
class CapContext {
 public:
  CapContext(const Sheaf& f, const Sheaf& f2, int top);

  const BarComplex& bar() const { return bar_; }
  const CobarComplex& cobar() const { return cobar_; }
  const BarComplex& target_bar() const { return target_; }

  // Front/back-face evaluation with global sign (-1)^{pq}: the block
  // (x_0 < ... < x_p; a) against phi contributes
  // (x_q < ... < x_p; rho_{x_0 -> x_q}(a) tensor phi(x_0 < ... < x_q)).
  IntVector cap(int p, int q, const IntVector& z, const IntVector& w) const;

 private:
  Sheaf f_, f2_, t_;
  BarComplex bar_, target_;
  CobarComplex cobar_;
};

struct CapPairing {
  FgAbGroup source;  // tensor product of H_p and H^q
  FgAbGroup target;  // H_{p-q} with tensor coefficients
  GroupMap pairing;  // generator-pair classes to target classes
};

// Homology-level pairing H_p (coefficients f) x H^q (coefficients f2) into
// H_{p-q} (coefficients tensor(f, f2)); requires p >= q >= 0.
CapPairing cap_product(const Sheaf& f, const Sheaf& f2, int p, int q);

struct CheckReport {
  bool pass = false;
  std::string detail;
};

// Projection formula along a monotone map: pushing a class capped against a
// pulled-back cocycle equals pushing first and capping after, for every
// generator pair.
CheckReport cap_naturality_check(const MonotoneMap& f, const Sheaf& g,
                                 const Sheaf& g2, int p, int q);

// Pointwise comparable monotone maps induce equal morphisms on homology with
// constant coefficients.
CheckReport homotopy_check(const MonotoneMap& f, const MonotoneMap& g,
                           const FgAbGroup& coeff, int max_deg);

}  // namespace finsheaf
