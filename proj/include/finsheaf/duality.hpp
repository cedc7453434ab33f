#pragma once

#include <string>
#include <vector>

#include "finsheaf/homology.hpp"

namespace finsheaf {

// Integer dual of the derived-section data of the minimal-open indicator
// sheaves, assembled into one complex of sheaves. The stalk over x in
// homological degree k is free on the level-k chains whose top lies in U_x,
// the differential is the transposed coboundary, and restriction along
// x <= y drops the chains whose top leaves U_y. Homological degree k reads
// as cochain degree -k, so the content occupies cochain degrees
// [-height-1, 0], matching the sign convention of derived_dual.
struct DualizingComplex {
  SheafComplex cx;  // homological degrees 0 .. min(max_deg, height) + 1

  const FinitePoset& space() const { return cx.terms.front().space(); }
  // Free chain complex of the stalks over one element.
  ChainComplex stalk_complex(int x) const;
};

DualizingComplex dualizing_complex(PosetPtr space, int max_deg);

// H at cochain degree -i of the derived sections of f tensored against the
// dual complex, for i = 0..max_deg. f must live on the same space.
std::vector<FgAbGroup> dual_homology(const DualizingComplex& d, const Sheaf& f,
                                     int max_deg);

struct PvReport {
  bool pass = false;
  std::vector<char> element_pass;  // indexed by element
  std::string detail;              // first failure, empty when pass
};

// Per-element duality check: the derived sections of (indicator of U_x)
// tensored against the dual complex must reproduce the homology of the cone
// U_x, in every degree 0..max_deg and for every element x.
PvReport pv_check(PosetPtr space, int max_deg);

struct ManifoldReport {
  bool pass = false;
  int dim = -1;                        // common concentration degree when pass
  bool orientable = false;
  std::vector<int> edge_signs;         // per cover edge, +1 or -1, when pass
  std::vector<std::string> witnesses;  // failure descriptions when not
};

// Detects whether the dual complex is a shifted rank-one local system: every
// stalk complex must carry exactly one nonvanishing group, free of rank one,
// in a common degree, with every cover edge inducing an isomorphism on it.
// The edge signs form the local system; it is constant (orientable) exactly
// when the signs extend to a potential on the elements.
ManifoldReport homological_manifold_check(PosetPtr space, int max_deg);

struct RestrictionReport {
  bool agree = false;
  std::string detail;  // first stalkwise difference, empty when agreeing
};

// The dual complex of the whole space restricted to an open subset, against
// the dual complex computed on the subspace. The two need not agree; this
// reports stalkwise where the homology differs.
RestrictionReport restricted_dual_comparison(PosetPtr space, const std::vector<int>& u,
                                             int max_deg);

}  // namespace finsheaf
