#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "finsheaf/diagram.hpp"
#include "finsheaf/poset.hpp"

namespace finsheaf {

using PosetPtr = std::shared_ptr<const FinitePoset>;

// Stalk functor data on a finite space: one group per element, one map per
// cover edge, upward (restriction from the smaller minimal open's carrier).
// Path independence across cover paths is validated eagerly at construction;
// the composite map table rho(x, y) for every x <= y is a byproduct.
class Sheaf {
 public:
  Sheaf() = default;
  // cover_maps[k] belongs to space->covers()[k] and maps stalk(lower) ->
  // stalk(upper). Throws std::invalid_argument on shape, homomorphism or
  // path-independence violations.
  Sheaf(PosetPtr space, std::vector<FgAbGroup> stalks, std::vector<IntMatrix> cover_maps);

  const PosetPtr& space_ptr() const { return space_; }
  const FinitePoset& space() const { return *space_; }
  const FgAbGroup& stalk(int x) const { return stalks_[static_cast<size_t>(x)]; }
  const std::vector<FgAbGroup>& stalks() const { return stalks_; }
  const IntMatrix& cover_matrix(int k) const { return cover_maps_[static_cast<size_t>(k)]; }

  // Composite restriction matrix for x <= y (identity when x == y).
  const IntMatrix& rho_matrix(int x, int y) const;
  GroupMap rho(int x, int y) const;

  bool is_locally_constant() const;  // every edge map an isomorphism
  bool is_zero() const;

 private:
  PosetPtr space_;
  std::vector<FgAbGroup> stalks_;
  std::vector<IntMatrix> cover_maps_;
  std::vector<std::vector<IntMatrix>> rho_;  // [x][y] for x <= y
};

// Mirror data with maps running downward: edge (x covered by y) carries
// value(y) -> value(x).
class Cosheaf {
 public:
  Cosheaf() = default;
  Cosheaf(PosetPtr space, std::vector<FgAbGroup> values, std::vector<IntMatrix> cover_maps);

  const PosetPtr& space_ptr() const { return space_; }
  const FinitePoset& space() const { return *space_; }
  const FgAbGroup& value(int x) const { return values_[static_cast<size_t>(x)]; }
  const IntMatrix& cover_matrix(int k) const { return cover_maps_[static_cast<size_t>(k)]; }

  // Composite matrix value(y) -> value(x) for x <= y.
  const IntMatrix& down_matrix(int x, int y) const;
  GroupMap down(int x, int y) const;

  bool is_locally_constant() const;

 private:
  PosetPtr space_;
  std::vector<FgAbGroup> values_;
  std::vector<IntMatrix> cover_maps_;
  std::vector<std::vector<IntMatrix>> down_;
};

// Natural transformation: one component per element, commuting with the edge
// maps of both sides.
struct SheafMorphism {
  const Sheaf* src = nullptr;
  const Sheaf* dst = nullptr;
  std::vector<IntMatrix> components;

  bool is_valid() const;
  GroupMap component(int x) const;
  bool is_zero() const;

  static SheafMorphism identity(const Sheaf& f);
  static SheafMorphism zero(const Sheaf& src, const Sheaf& dst);
};

struct CosheafMorphism {
  const Cosheaf* src = nullptr;
  const Cosheaf* dst = nullptr;
  std::vector<IntMatrix> components;

  bool is_valid() const;
  GroupMap component(int x) const;

  static CosheafMorphism identity(const Cosheaf& q);
};

// Bounded complex of sheaves; diffs[i] maps terms[i+1] -> terms[i].
struct SheafComplex {
  int lo = 0;
  std::vector<Sheaf> terms;
  std::vector<SheafMorphism> diffs;

  int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
  bool validate() const;  // naturality plus stalkwise d after d = 0

  static SheafComplex single(Sheaf f, int degree = 0);
};

// -- constructors --------------------------------------------------------

Sheaf constant_sheaf(PosetPtr space, const FgAbGroup& g);

// F lives on the induced subposet of the open U (ascending element order);
// stalks outside U become zero, edges into or out of U become zero maps.
Sheaf extension_by_zero(PosetPtr space, const std::vector<int>& U, const Sheaf& f_on_u);

// Constant group on an open, zero outside.
Sheaf constant_on_open(PosetPtr space, const std::vector<int>& U, const FgAbGroup& g);

// Single stalk G at x, zero elsewhere.
Sheaf skyscraper(PosetPtr space, int x, const FgAbGroup& g);

// Direct image of the restriction to the closed set Y: the section group over
// U_x meet Y, which is the stalk itself inside Y and zero outside (the trace
// has minimum x when x lies in Y, and is empty otherwise).
Sheaf closed_restriction(PosetPtr space, const std::vector<int>& Y, const Sheaf& f);

// Stalks pulled back along a monotone map: stalk at x is F_{f(x)}.
Sheaf inverse_image(const MonotoneMap& f, const Sheaf& g);

// Restriction to an open subset, as a sheaf on the induced subposet.
Sheaf open_restriction(const Sheaf& f, const std::vector<int>& U);

Sheaf tensor(const Sheaf& a, const Sheaf& b);
Sheaf sum(const Sheaf& a, const Sheaf& b);

// Termwise tensor against a fixed sheaf, with the induced differentials.
SheafComplex tensor(const Sheaf& f, const SheafComplex& c);

// Value at x is Q(U meet U_x): the value of Q itself for x in U, the colimit
// presentation of the trace for x outside (which is nonzero whenever some
// element of U sits above x).
Cosheaf cosheaf_extension_by_zero(PosetPtr space, const std::vector<int>& U,
                                  const Cosheaf& q_on_u);
Cosheaf cosheaf_sum(const Cosheaf& a, const Cosheaf& b);

// -- section and value calculus ------------------------------------------

// Compatible families of stalks over a convex subset (limit of the stalk
// diagram); family coordinates are the concatenated stalk generators in
// ascending element order.
LimitResult stalk_limit(const Sheaf& f, const std::vector<int>& subset);

FgAbGroup sections(const Sheaf& f, const std::vector<int>& U);

// Matrix of the restriction map on compatible families, W superset of V.
IntMatrix sections_restriction(const Sheaf& f, const LimitResult& over_w,
                               const std::vector<int>& W, const LimitResult& over_v,
                               const std::vector<int>& V);

// Colimit of values over a convex subset; generator coordinates are the
// concatenated value generators in ascending element order.
ColimitResult value_colimit(const Cosheaf& q, const std::vector<int>& subset);

// Q(U). When U has a minimum m (so U = U_m) this is the stored value at m on
// the nose; otherwise the colimit presentation.
FgAbGroup cosheaf_value(const Cosheaf& q, const std::vector<int>& U);

// Generator-block matrix of the canonical map value(V) -> value(W), V inside W.
IntMatrix value_extension(const Cosheaf& q, const std::vector<int>& V,
                          const std::vector<int>& W);

// -- the two functors ------------------------------------------------------

// Values are colimits of stalks over minimal opens.
Cosheaf cos(const Sheaf& f);

// Stalks are compatible families of values over all connected non-empty opens
// inside the minimal open. Exponential in the minimal open's size.
Sheaf shf(const Cosheaf& q);

// shf with its working data kept: per element, the connected opens indexing
// the stalk limit (canonical order, matching the limit's object order) and the
// limit itself. Lets callers build comparison maps into or out of the stalks.
struct ShfData {
  std::vector<std::vector<std::vector<int>>> opens;
  std::vector<LimitResult> limits;
  Sheaf sheaf;
};
ShfData shf_data(const Cosheaf& q);

// All connected non-empty open subsets of the given open, each ascending,
// listed in a fixed deterministic order (by size, then lexicographically).
std::vector<std::vector<int>> connected_open_subsets(const FinitePoset& p,
                                                     const std::vector<int>& U);

}  // namespace finsheaf
