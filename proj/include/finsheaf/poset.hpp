#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "finsheaf/int_types.hpp"

namespace finsheaf {

// Violations found in raw poset data; empty list means well-formed.
std::vector<std::string> validate_poset_data(const std::vector<std::string>& names,
                                             const std::vector<std::pair<int, int>>& covers);

// Finite T0 topological space as a poset: opens are up-sets, the minimal open
// around x is up_set(x). Element order is the input order and fixes every
// matrix and chain enumeration downstream.
class FinitePoset {
 public:
  // Throws std::invalid_argument listing all violations when the data fails
  // validate_poset_data (duplicate names, bad indices, cycles, non-Hasse covers).
  FinitePoset(std::vector<std::string> names, std::vector<std::pair<int, int>> covers);

  static FinitePoset from_names(std::vector<std::string> names,
                                const std::vector<std::pair<std::string, std::string>>& covers);

  // Builds from arbitrary strict-order pairs (a < b): closes transitively and
  // keeps only the covers. Throws on cycles.
  static FinitePoset from_relation(std::vector<std::string> names,
                                   const std::vector<std::pair<int, int>>& pairs);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_[static_cast<size_t>(i)]; }
  const std::vector<std::string>& names() const { return names_; }
  int index(const std::string& name) const;  // throws on unknown name

  // cover pairs (lower, upper) in input order; these generate the order
  const std::vector<std::pair<int, int>>& covers() const { return covers_; }
  bool leq(int a, int b) const { return leq_[static_cast<size_t>(a)][static_cast<size_t>(b)]; }
  bool lt(int a, int b) const { return a != b && leq(a, b); }
  bool comparable(int a, int b) const { return leq(a, b) || leq(b, a); }

  std::vector<int> up_set(int x) const;    // minimal open U_x, ascending indices
  std::vector<int> down_set(int x) const;  // closure of {x}
  std::vector<int> up_closure(const std::vector<int>& s) const;
  std::vector<int> down_closure(const std::vector<int>& s) const;
  bool is_up_set(const std::vector<int>& s) const;
  bool is_down_set(const std::vector<int>& s) const;

  // Connected components of the comparability graph inside subset, each
  // ascending, ordered by smallest member.
  std::vector<std::vector<int>> components(const std::vector<int>& subset) const;
  bool is_connected(const std::vector<int>& subset) const;

  // All strict chains x_0 < ... < x_n, ordered lexicographically by index.
  const std::vector<std::vector<int>>& chains(int n) const;
  // Strict chains with every member drawn from subset (ascending indices in).
  std::vector<std::vector<int>> chains_in(const std::vector<int>& subset, int n) const;
  int height() const;  // longest chain has height()+1 elements

  std::vector<int> maximal_elements() const;  // the open points
  std::vector<int> minimal_elements() const;  // the closed points

  static FinitePoset product(const FinitePoset& a, const FinitePoset& b);
  // index of (i, j) in the product: i * b.size() + j
  static int product_index(const FinitePoset& b, int i, int j) { return i * b.size() + j; }

  // Subposet on the given elements (ascending), covers recomputed from the
  // restricted order. On convex subsets these are the original covers between
  // retained elements.
  FinitePoset induced_subposet(const std::vector<int>& subset) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::pair<int, int>> covers_;
  std::vector<std::vector<char>> leq_;
  mutable std::vector<std::vector<std::vector<int>>> chain_cache_;
  mutable bool chains_done_ = false;
  void build_chains() const;
};

// Monotone (continuous) map between finite posets, stored as element images.
struct MonotoneMap {
  const FinitePoset* src = nullptr;
  const FinitePoset* dst = nullptr;
  std::vector<int> image;

  bool is_monotone() const;
  int operator()(int x) const { return image[static_cast<size_t>(x)]; }

  static MonotoneMap from_names(const FinitePoset& s, const FinitePoset& d,
                                const std::vector<std::pair<std::string, std::string>>& pairs);
};

// f <= g pointwise (the order-homotopy hypothesis).
bool pointwise_leq(const MonotoneMap& f, const MonotoneMap& g);

}  // namespace finsheaf
