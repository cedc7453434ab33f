#pragma once

#include "finsheaf/abelian.hpp"

namespace finsheaf {

// Finite diagram of finitely generated abelian groups. Edges carry matrices on
// presentation generators; multiple edges and self-edges are allowed.
struct Diagram {
  struct Edge {
    int src = 0, dst = 0;
    IntMatrix map;
  };
  std::vector<FgAbGroup> objects;
  std::vector<Edge> edges;

  bool validate() const;  // shapes + each edge a homomorphism
  Eigen::Index total_gens() const;
  Eigen::Index offset(int i) const;  // generator offset of object i
};

// Coequalizer presentation: sum of objects modulo (insertion of a) - (insertion
// of edge image of a) over all edges. Owns a copy of the diagram.
struct ColimitResult {
  FgAbGroup group;  // generators are the concatenated object generators
  std::shared_ptr<const Diagram> diagram;

  GroupMap insertion(int i) const;
};

ColimitResult colimit(Diagram d);

// Compatible families inside the product of the objects. Owns a copy of the
// diagram.
struct LimitResult {
  FgAbGroup group;   // one generator per column of family_gens
  IntMatrix family_gens;  // columns: families in concatenated object coordinates
  std::shared_ptr<const Diagram> diagram;

  GroupMap projection(int i) const;
  // Coordinates of a compatible family in result generators.
  IntVector family_class(const IntVector& family) const;
  bool is_family(const IntVector& family) const;

 private:
  friend LimitResult limit(Diagram d);
  std::shared_ptr<const IntSolver> solver_;
};

LimitResult limit(Diagram d);

}  // namespace finsheaf
