#include "finsheaf/diagram.hpp"

#include <memory>
#include <stdexcept>

namespace finsheaf {

bool Diagram::validate() const {
  for (const auto& e : edges) {
    if (e.src < 0 || e.dst < 0 || e.src >= static_cast<int>(objects.size()) ||
        e.dst >= static_cast<int>(objects.size()))
      return false;
    const FgAbGroup& s = objects[static_cast<size_t>(e.src)];
    const FgAbGroup& t = objects[static_cast<size_t>(e.dst)];
    if (e.map.rows() != t.gens() || e.map.cols() != s.gens()) return false;
    if (!GroupMap(s, t, e.map).is_valid()) return false;
  }
  return true;
}

Eigen::Index Diagram::total_gens() const {
  Eigen::Index t = 0;
  for (const auto& o : objects) t += o.gens();
  return t;
}

Eigen::Index Diagram::offset(int i) const {
  Eigen::Index t = 0;
  for (int k = 0; k < i; ++k) t += objects[static_cast<size_t>(k)].gens();
  return t;
}

GroupMap ColimitResult::insertion(int i) const {
  const FgAbGroup& obj = diagram->objects[static_cast<size_t>(i)];
  IntMatrix m = IntMatrix::Zero(group.gens(), obj.gens());
  Eigen::Index off = diagram->offset(i);
  for (Eigen::Index j = 0; j < obj.gens(); ++j) m(off + j, j) = 1;
  return GroupMap(obj, group, std::move(m));
}

ColimitResult colimit(Diagram diag) {
  auto holder = std::make_shared<const Diagram>(std::move(diag));
  const Diagram& d = *holder;
  Eigen::Index total = d.total_gens();
  std::vector<IntMatrix> obj_rels;
  obj_rels.reserve(d.objects.size());
  for (const auto& o : d.objects) obj_rels.push_back(o.rels());
  IntMatrix rels = IntMatrix::Zero(total, 0);
  {
    IntMatrix blk = block_diag(obj_rels);
    // block_diag stacks generator blocks in object order, matching offsets
    IntMatrix padded = IntMatrix::Zero(total, blk.cols());
    padded.topRows(blk.rows()) = blk;
    rels = padded;
  }
  Eigen::Index edge_cols = 0;
  for (const auto& e : d.edges) edge_cols += d.objects[static_cast<size_t>(e.src)].gens();
  IntMatrix glue = IntMatrix::Zero(total, edge_cols);
  Eigen::Index c = 0;
  for (const auto& e : d.edges) {
    Eigen::Index soff = d.offset(e.src), doff = d.offset(e.dst);
    Eigen::Index sg = d.objects[static_cast<size_t>(e.src)].gens();
    for (Eigen::Index j = 0; j < sg; ++j, ++c) {
      glue(soff + j, c) -= 1;
      glue.block(doff, c, e.map.rows(), 1) += e.map.col(j);
    }
  }
  ColimitResult out;
  out.group = FgAbGroup(total, hcat(rels, glue));
  out.diagram = holder;
  return out;
}

GroupMap LimitResult::projection(int i) const {
  const FgAbGroup& obj = diagram->objects[static_cast<size_t>(i)];
  Eigen::Index off = diagram->offset(i);
  IntMatrix m(obj.gens(), group.gens());
  for (Eigen::Index j = 0; j < group.gens(); ++j)
    m.col(j) = family_gens.block(off, j, obj.gens(), 1);
  return GroupMap(group, obj, std::move(m));
}

IntVector LimitResult::family_class(const IntVector& family) const {
  auto c = solver_->solve(family);
  if (!c) throw std::invalid_argument("family_class: not a compatible family");
  return *c;
}

bool LimitResult::is_family(const IntVector& family) const { return solver_->in_span(family); }

LimitResult limit(Diagram diag) {
  auto holder = std::make_shared<const Diagram>(std::move(diag));
  const Diagram& d = *holder;
  Eigen::Index total = d.total_gens();
  // Constraint rows: for each edge, (map applied to source block) - dst block
  // must vanish modulo the destination relations.
  Eigen::Index crows = 0;
  for (const auto& e : d.edges) crows += d.objects[static_cast<size_t>(e.dst)].gens();
  IntMatrix C = IntMatrix::Zero(crows, total);
  std::vector<IntMatrix> slack;
  Eigen::Index r = 0;
  for (const auto& e : d.edges) {
    const FgAbGroup& dst = d.objects[static_cast<size_t>(e.dst)];
    Eigen::Index soff = d.offset(e.src), doff = d.offset(e.dst);
    C.block(r, soff, e.map.rows(), e.map.cols()) += e.map;
    for (Eigen::Index j = 0; j < dst.gens(); ++j) C(r + j, doff + j) -= 1;
    slack.push_back(dst.rels());
    r += dst.gens();
  }
  IntMatrix allowed = block_diag(slack);
  if (allowed.rows() != crows) {
    IntMatrix padded = IntMatrix::Zero(crows, allowed.cols());
    if (allowed.rows() > 0) padded.topRows(allowed.rows()) = allowed;
    allowed = padded;
  }
  IntMatrix P = preimage_lattice(C, allowed);

  std::vector<IntMatrix> obj_rels;
  obj_rels.reserve(d.objects.size());
  for (const auto& o : d.objects) obj_rels.push_back(o.rels());
  IntMatrix Q = block_diag(obj_rels);
  if (Q.rows() != total) {
    IntMatrix padded = IntMatrix::Zero(total, Q.cols());
    if (Q.rows() > 0) padded.topRows(Q.rows()) = Q;
    Q = padded;
  }

  LimitResult out;
  out.group = subquotient(P, Q);
  out.family_gens = P;
  out.diagram = holder;
  out.solver_ = std::make_shared<IntSolver>(P);
  return out;
}

}  // namespace finsheaf
