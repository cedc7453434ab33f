#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "finsheaf/sheaf.hpp"
#include "test_util.hpp"

// Small spaces and sheaves shared across the test binaries. The circle model
// is the four-point space (two closed points a, b under two open points c, d);
// the two-sphere is its non-Hausdorff suspension.
namespace fixtures {

using finsheaf::FgAbGroup;
using finsheaf::FinitePoset;
using finsheaf::IntMatrix;
using finsheaf::PosetPtr;
using finsheaf::Sheaf;

inline PosetPtr point() {
  return std::make_shared<const FinitePoset>(std::vector<std::string>{"p"},
                                             std::vector<std::pair<int, int>>{});
}

inline PosetPtr s0() {
  return std::make_shared<const FinitePoset>(std::vector<std::string>{"p", "q"},
                                             std::vector<std::pair<int, int>>{});
}

inline PosetPtr sierpinski() {
  return std::make_shared<const FinitePoset>(std::vector<std::string>{"a", "b"},
                                             std::vector<std::pair<int, int>>{{0, 1}});
}

inline PosetPtr chain3() {
  return std::make_shared<const FinitePoset>(std::vector<std::string>{"a", "b", "c"},
                                             std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
}

// two closed points, one open point above both
inline PosetPtr vee() {
  return std::make_shared<const FinitePoset>(std::vector<std::string>{"a", "b", "c"},
                                             std::vector<std::pair<int, int>>{{0, 2}, {1, 2}});
}

inline PosetPtr diamond() {
  return std::make_shared<const FinitePoset>(
      std::vector<std::string>{"a", "b", "c", "d"},
      std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

inline PosetPtr circle() {
  return std::make_shared<const FinitePoset>(
      std::vector<std::string>{"a", "b", "c", "d"},
      std::vector<std::pair<int, int>>{{0, 2}, {0, 3}, {1, 2}, {1, 3}});
}

// non-Hausdorff suspension of the circle model
inline PosetPtr sphere2() {
  return std::make_shared<const FinitePoset>(
      std::vector<std::string>{"a", "b", "c", "d", "e", "f"},
      std::vector<std::pair<int, int>>{{0, 2}, {0, 3}, {1, 2}, {1, 3},
                                       {2, 4}, {2, 5}, {3, 4}, {3, 5}});
}

inline PosetPtr sphere3() {
  return std::make_shared<const FinitePoset>(
      std::vector<std::string>{"a", "b", "c", "d", "e", "f", "g", "h"},
      std::vector<std::pair<int, int>>{{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 4}, {2, 5}, {3, 4},
                                       {3, 5}, {4, 6}, {4, 7}, {5, 6}, {5, 7}});
}

inline PosetPtr torus() {
  return std::make_shared<const FinitePoset>(FinitePoset::product(*circle(), *circle()));
}

// rank-one local system on the circle model with a single -1 edge; the
// monodromy around the loop is -1
inline Sheaf twisted_circle(const FgAbGroup& g) {
  PosetPtr p = circle();
  std::vector<FgAbGroup> stalks(4, g);
  IntMatrix id = finsheaf::int_identity(g.gens());
  std::vector<IntMatrix> maps{id, id, id, IntMatrix(-id)};
  return Sheaf(std::move(p), std::move(stalks), std::move(maps));
}

}  // namespace fixtures
