#pragma once

#include "finsheaf/abelian.hpp"

namespace finsheaf {

// Homology presentation at one position A --f--> B --g--> C together with the
// data needed to locate the class of a cycle.
class HomologyData {
 public:
  HomologyData() = default;
  HomologyData(FgAbGroup h, IntMatrix cycle_gens);

  const FgAbGroup& group() const { return h_; }
  // Columns generate { v in Z^{B.gens} : g(v) = 0 in C }; result generators.
  const IntMatrix& cycle_gens() const { return cycle_gens_; }
  // Coordinates (in result generators) of the class of a cycle vector.
  IntVector class_of(const IntVector& cycle) const;
  bool is_zero_class(const IntVector& cycle) const;
  // Representative cycle vector of result generator j.
  IntVector representative(Eigen::Index j) const { return cycle_gens_.col(j); }

 private:
  FgAbGroup h_;
  IntMatrix cycle_gens_;
  std::shared_ptr<const IntSolver> solver_;
};

HomologyData pair_homology_data(const GroupMap& f, const GroupMap& g);

// Bounded complex with differentials lowering degree by one; terms outside
// [lo, hi] are trivial.
class ChainComplex {
 public:
  ChainComplex() = default;
  // diffs[i] maps terms[i+1] -> terms[i]; diffs.size() == terms.size() - 1
  // (empty when fewer than two terms).
  ChainComplex(int lo, std::vector<FgAbGroup> terms, std::vector<GroupMap> diffs);

  static ChainComplex from_free(int lo, const std::vector<Eigen::Index>& ranks,
                                const std::vector<IntMatrix>& diffs);

  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(terms_.size()) - 1; }
  bool in_range(int n) const { return n >= lo() && n <= hi(); }

  const FgAbGroup& term(int n) const;        // trivial outside range
  GroupMap diff_out_of(int n) const;         // d_n : C_n -> C_{n-1}
  bool differentials_compose_to_zero() const;
  bool differentials_valid() const;

  FgAbGroup homology_at(int n) const;
  HomologyData homology_data(int n) const;

 private:
  int lo_ = 0;
  std::vector<FgAbGroup> terms_;
  std::vector<GroupMap> diffs_;
  static const FgAbGroup trivial_;
};

FgAbGroup complex_homology(const ChainComplex& c, int n);

// Cochain view: differentials raise degree by one.
class CochainComplex {
 public:
  CochainComplex() = default;
  CochainComplex(int lo, std::vector<FgAbGroup> terms, std::vector<GroupMap> diffs);

  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(terms_.size()) - 1; }

  const FgAbGroup& term(int n) const;
  GroupMap diff_at(int n) const;  // d^n : C^n -> C^{n+1}
  bool differentials_compose_to_zero() const;

  FgAbGroup cohomology_at(int n) const;
  HomologyData cohomology_data(int n) const;

 private:
  int lo_ = 0;
  std::vector<FgAbGroup> terms_;
  std::vector<GroupMap> diffs_;
  static const FgAbGroup trivial_;
};

// Homology-level map induced by a chain-level map f (source degree-n term ->
// target degree-n term) commuting with the differentials.
GroupMap induced_map(const HomologyData& src, const HomologyData& dst, const IntMatrix& f);

}  // namespace finsheaf
