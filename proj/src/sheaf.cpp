#include "finsheaf/sheaf.hpp"

#include <algorithm>
#include <stdexcept>

namespace finsheaf {

namespace {

bool same_space(const FinitePoset& a, const FinitePoset& b) {
  return a.names() == b.names() && a.covers() == b.covers();
}

// linear extension: covers always go forward (strictly smaller down sets come
// first)
std::vector<int> topo_order(const FinitePoset& p) {
  std::vector<int> order(static_cast<size_t>(p.size()));
  for (int i = 0; i < p.size(); ++i) order[static_cast<size_t>(i)] = i;
  std::vector<int> depth(static_cast<size_t>(p.size()), 0);
  for (int x = 0; x < p.size(); ++x)
    depth[static_cast<size_t>(x)] = static_cast<int>(p.down_set(x).size());
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (depth[static_cast<size_t>(a)] != depth[static_cast<size_t>(b)])
      return depth[static_cast<size_t>(a)] < depth[static_cast<size_t>(b)];
    return a < b;
  });
  return order;
}

Eigen::Index block_offset(const std::vector<FgAbGroup>& groups, const std::vector<int>& subset,
                          int member) {
  Eigen::Index off = 0;
  for (int z : subset) {
    if (z == member) return off;
    off += groups[static_cast<size_t>(z)].gens();
  }
  throw std::logic_error("block_offset: element not in subset");
}

}  // namespace

Sheaf::Sheaf(PosetPtr space, std::vector<FgAbGroup> stalks, std::vector<IntMatrix> cover_maps)
    : space_(std::move(space)), stalks_(std::move(stalks)), cover_maps_(std::move(cover_maps)) {
  const FinitePoset& p = *space_;
  if (static_cast<int>(stalks_.size()) != p.size())
    throw std::invalid_argument("sheaf: one stalk per element required");
  if (cover_maps_.size() != p.covers().size())
    throw std::invalid_argument("sheaf: one map per cover required");
  for (size_t k = 0; k < cover_maps_.size(); ++k) {
    auto [a, b] = p.covers()[k];
    const IntMatrix& m = cover_maps_[k];
    if (m.rows() != stalk(b).gens() || m.cols() != stalk(a).gens())
      throw std::invalid_argument("sheaf: map shape mismatch on cover (" + p.name(a) + "," +
                                  p.name(b) + ")");
    if (!GroupMap(stalk(a), stalk(b), m).is_valid())
      throw std::invalid_argument("sheaf: map on cover (" + p.name(a) + "," + p.name(b) +
                                  ") is not a homomorphism");
  }

  // composite table plus path-independence validation
  rho_.assign(static_cast<size_t>(p.size()), std::vector<IntMatrix>(static_cast<size_t>(p.size())));
  std::vector<int> order = topo_order(p);
  for (int x = 0; x < p.size(); ++x) {
    std::vector<char> seen(static_cast<size_t>(p.size()), 0);
    rho_[static_cast<size_t>(x)][static_cast<size_t>(x)] = int_identity(stalk(x).gens());
    seen[static_cast<size_t>(x)] = 1;
    for (int y : order) {
      if (!p.lt(x, y)) continue;
      for (size_t k = 0; k < cover_maps_.size(); ++k) {
        auto [w, up] = p.covers()[k];
        if (up != y || !seen[static_cast<size_t>(w)]) continue;
        IntMatrix cand = cover_maps_[k] * rho_[static_cast<size_t>(x)][static_cast<size_t>(w)];
        if (!seen[static_cast<size_t>(y)]) {
          rho_[static_cast<size_t>(x)][static_cast<size_t>(y)] = std::move(cand);
          seen[static_cast<size_t>(y)] = 1;
        } else {
          GroupMap lhs(stalk(x), stalk(y), cand);
          GroupMap rhs(stalk(x), stalk(y), rho_[static_cast<size_t>(x)][static_cast<size_t>(y)]);
          if (!lhs.equals(rhs))
            throw std::invalid_argument("sheaf: path independence fails between " + p.name(x) +
                                        " and " + p.name(y));
        }
      }
    }
  }
}

const IntMatrix& Sheaf::rho_matrix(int x, int y) const {
  if (!space_->leq(x, y)) throw std::invalid_argument("rho: elements not comparable");
  return rho_[static_cast<size_t>(x)][static_cast<size_t>(y)];
}

GroupMap Sheaf::rho(int x, int y) const { return GroupMap(stalk(x), stalk(y), rho_matrix(x, y)); }

bool Sheaf::is_locally_constant() const {
  for (size_t k = 0; k < cover_maps_.size(); ++k) {
    auto [a, b] = space_->covers()[k];
    if (!GroupMap(stalk(a), stalk(b), cover_maps_[k]).is_iso()) return false;
  }
  return true;
}

bool Sheaf::is_zero() const {
  for (const auto& s : stalks_)
    if (!s.is_trivial()) return false;
  return true;
}

Cosheaf::Cosheaf(PosetPtr space, std::vector<FgAbGroup> values, std::vector<IntMatrix> cover_maps)
    : space_(std::move(space)), values_(std::move(values)), cover_maps_(std::move(cover_maps)) {
  const FinitePoset& p = *space_;
  if (static_cast<int>(values_.size()) != p.size())
    throw std::invalid_argument("cosheaf: one value per element required");
  if (cover_maps_.size() != p.covers().size())
    throw std::invalid_argument("cosheaf: one map per cover required");
  for (size_t k = 0; k < cover_maps_.size(); ++k) {
    auto [a, b] = p.covers()[k];
    const IntMatrix& m = cover_maps_[k];
    if (m.rows() != value(a).gens() || m.cols() != value(b).gens())
      throw std::invalid_argument("cosheaf: map shape mismatch on cover (" + p.name(a) + "," +
                                  p.name(b) + ")");
    if (!GroupMap(value(b), value(a), m).is_valid())
      throw std::invalid_argument("cosheaf: map on cover (" + p.name(a) + "," + p.name(b) +
                                  ") is not a homomorphism");
  }

  down_.assign(static_cast<size_t>(p.size()), std::vector<IntMatrix>(static_cast<size_t>(p.size())));
  std::vector<int> order = topo_order(p);
  for (int x = 0; x < p.size(); ++x) {
    std::vector<char> seen(static_cast<size_t>(p.size()), 0);
    down_[static_cast<size_t>(x)][static_cast<size_t>(x)] = int_identity(value(x).gens());
    seen[static_cast<size_t>(x)] = 1;
    for (int y : order) {
      if (!p.lt(x, y)) continue;
      for (size_t k = 0; k < cover_maps_.size(); ++k) {
        auto [w, up] = p.covers()[k];
        if (up != y || !seen[static_cast<size_t>(w)]) continue;
        // value(y) -> value(w) -> ... -> value(x)
        IntMatrix cand = down_[static_cast<size_t>(x)][static_cast<size_t>(w)] * cover_maps_[k];
        if (!seen[static_cast<size_t>(y)]) {
          down_[static_cast<size_t>(x)][static_cast<size_t>(y)] = std::move(cand);
          seen[static_cast<size_t>(y)] = 1;
        } else {
          GroupMap lhs(value(y), value(x), cand);
          GroupMap rhs(value(y), value(x), down_[static_cast<size_t>(x)][static_cast<size_t>(y)]);
          if (!lhs.equals(rhs))
            throw std::invalid_argument("cosheaf: path independence fails between " + p.name(x) +
                                        " and " + p.name(y));
        }
      }
    }
  }
}

const IntMatrix& Cosheaf::down_matrix(int x, int y) const {
  if (!space_->leq(x, y)) throw std::invalid_argument("down: elements not comparable");
  return down_[static_cast<size_t>(x)][static_cast<size_t>(y)];
}

GroupMap Cosheaf::down(int x, int y) const {
  return GroupMap(value(y), value(x), down_matrix(x, y));
}

bool Cosheaf::is_locally_constant() const {
  for (size_t k = 0; k < cover_maps_.size(); ++k) {
    auto [a, b] = space_->covers()[k];
    if (!GroupMap(value(b), value(a), cover_maps_[k]).is_iso()) return false;
  }
  return true;
}

bool SheafMorphism::is_valid() const {
  if (!src || !dst || !same_space(src->space(), dst->space())) return false;
  const FinitePoset& p = src->space();
  if (components.size() != static_cast<size_t>(p.size())) return false;
  for (int x = 0; x < p.size(); ++x) {
    const IntMatrix& m = components[static_cast<size_t>(x)];
    if (m.rows() != dst->stalk(x).gens() || m.cols() != src->stalk(x).gens()) return false;
    if (!GroupMap(src->stalk(x), dst->stalk(x), m).is_valid()) return false;
  }
  for (size_t k = 0; k < p.covers().size(); ++k) {
    auto [a, b] = p.covers()[k];
    GroupMap lhs(src->stalk(a), dst->stalk(b),
                 IntMatrix(dst->cover_matrix(static_cast<int>(k)) *
                           components[static_cast<size_t>(a)]));
    GroupMap rhs(src->stalk(a), dst->stalk(b),
                 IntMatrix(components[static_cast<size_t>(b)] *
                           src->cover_matrix(static_cast<int>(k))));
    if (!lhs.equals(rhs)) return false;
  }
  return true;
}

GroupMap SheafMorphism::component(int x) const {
  return GroupMap(src->stalk(x), dst->stalk(x), components[static_cast<size_t>(x)]);
}

bool SheafMorphism::is_zero() const {
  for (int x = 0; x < src->space().size(); ++x)
    if (!component(x).is_zero_map()) return false;
  return true;
}

SheafMorphism SheafMorphism::identity(const Sheaf& f) {
  SheafMorphism m;
  m.src = &f;
  m.dst = &f;
  for (int x = 0; x < f.space().size(); ++x) m.components.push_back(int_identity(f.stalk(x).gens()));
  return m;
}

SheafMorphism SheafMorphism::zero(const Sheaf& src, const Sheaf& dst) {
  SheafMorphism m;
  m.src = &src;
  m.dst = &dst;
  for (int x = 0; x < src.space().size(); ++x)
    m.components.push_back(IntMatrix::Zero(dst.stalk(x).gens(), src.stalk(x).gens()));
  return m;
}

bool CosheafMorphism::is_valid() const {
  if (!src || !dst || !same_space(src->space(), dst->space())) return false;
  const FinitePoset& p = src->space();
  if (components.size() != static_cast<size_t>(p.size())) return false;
  for (int x = 0; x < p.size(); ++x) {
    const IntMatrix& m = components[static_cast<size_t>(x)];
    if (m.rows() != dst->value(x).gens() || m.cols() != src->value(x).gens()) return false;
    if (!GroupMap(src->value(x), dst->value(x), m).is_valid()) return false;
  }
  for (size_t k = 0; k < p.covers().size(); ++k) {
    auto [a, b] = p.covers()[k];
    GroupMap lhs(src->value(b), dst->value(a),
                 IntMatrix(dst->cover_matrix(static_cast<int>(k)) *
                           components[static_cast<size_t>(b)]));
    GroupMap rhs(src->value(b), dst->value(a),
                 IntMatrix(components[static_cast<size_t>(a)] *
                           src->cover_matrix(static_cast<int>(k))));
    if (!lhs.equals(rhs)) return false;
  }
  return true;
}

GroupMap CosheafMorphism::component(int x) const {
  return GroupMap(src->value(x), dst->value(x), components[static_cast<size_t>(x)]);
}

CosheafMorphism CosheafMorphism::identity(const Cosheaf& q) {
  CosheafMorphism m;
  m.src = &q;
  m.dst = &q;
  for (int x = 0; x < q.space().size(); ++x) m.components.push_back(int_identity(q.value(x).gens()));
  return m;
}

bool SheafComplex::validate() const {
  if (terms.empty()) return diffs.empty();
  if (diffs.size() + 1 != terms.size()) return false;
  const FinitePoset& p = terms[0].space();
  for (const auto& t : terms)
    if (!same_space(t.space(), p)) return false;
  // component checks straight against the stored terms, so the morphisms'
  // back pointers never matter
  for (size_t i = 0; i < diffs.size(); ++i) {
    const Sheaf& from = terms[i + 1];
    const Sheaf& to = terms[i];
    if (diffs[i].components.size() != static_cast<size_t>(p.size())) return false;
    for (int x = 0; x < p.size(); ++x) {
      const IntMatrix& m = diffs[i].components[static_cast<size_t>(x)];
      if (m.rows() != to.stalk(x).gens() || m.cols() != from.stalk(x).gens()) return false;
      if (!GroupMap(from.stalk(x), to.stalk(x), m).is_valid()) return false;
    }
    for (size_t k = 0; k < p.covers().size(); ++k) {
      auto [a, b] = p.covers()[k];
      GroupMap lhs(from.stalk(a), to.stalk(b),
                   IntMatrix(to.cover_matrix(static_cast<int>(k)) *
                             diffs[i].components[static_cast<size_t>(a)]));
      GroupMap rhs(from.stalk(a), to.stalk(b),
                   IntMatrix(diffs[i].components[static_cast<size_t>(b)] *
                             from.cover_matrix(static_cast<int>(k))));
      if (!lhs.equals(rhs)) return false;
    }
  }
  for (size_t i = 0; i + 1 < diffs.size(); ++i) {
    for (int x = 0; x < p.size(); ++x) {
      GroupMap comp(terms[i + 2].stalk(x), terms[i].stalk(x),
                    IntMatrix(diffs[i].components[static_cast<size_t>(x)] *
                              diffs[i + 1].components[static_cast<size_t>(x)]));
      if (!comp.is_zero_map()) return false;
    }
  }
  return true;
}

SheafComplex SheafComplex::single(Sheaf f, int degree) {
  SheafComplex c;
  c.lo = degree;
  c.terms.push_back(std::move(f));
  return c;
}

Sheaf constant_sheaf(PosetPtr space, const FgAbGroup& g) {
  std::vector<FgAbGroup> stalks(static_cast<size_t>(space->size()), g);
  std::vector<IntMatrix> maps(space->covers().size(), int_identity(g.gens()));
  return Sheaf(std::move(space), std::move(stalks), std::move(maps));
}

Sheaf extension_by_zero(PosetPtr space, const std::vector<int>& U, const Sheaf& f_on_u) {
  const FinitePoset& p = *space;
  if (!p.is_up_set(U)) throw std::invalid_argument("extension_by_zero: subset is not open");
  FinitePoset sub = p.induced_subposet(U);
  if (!same_space(sub, f_on_u.space()))
    throw std::invalid_argument("extension_by_zero: sheaf does not live on the given open");
  std::vector<int> pos(static_cast<size_t>(p.size()), -1);
  for (size_t i = 0; i < U.size(); ++i) pos[static_cast<size_t>(U[i])] = static_cast<int>(i);

  std::vector<FgAbGroup> stalks;
  for (int x = 0; x < p.size(); ++x)
    stalks.push_back(pos[static_cast<size_t>(x)] >= 0 ? f_on_u.stalk(pos[static_cast<size_t>(x)])
                                                      : FgAbGroup());
  std::vector<IntMatrix> maps;
  for (auto [a, b] : p.covers()) {
    int ia = pos[static_cast<size_t>(a)], ib = pos[static_cast<size_t>(b)];
    if (ia >= 0 && ib >= 0) {
      maps.push_back(f_on_u.rho_matrix(ia, ib));
    } else {
      maps.push_back(IntMatrix::Zero(stalks[static_cast<size_t>(b)].gens(),
                                     stalks[static_cast<size_t>(a)].gens()));
    }
  }
  return Sheaf(std::move(space), std::move(stalks), std::move(maps));
}

Sheaf constant_on_open(PosetPtr space, const std::vector<int>& U, const FgAbGroup& g) {
  if (!space->is_up_set(U)) throw std::invalid_argument("constant_on_open: subset is not open");
  if (U.empty()) {
    std::vector<FgAbGroup> stalks(static_cast<size_t>(space->size()));
    std::vector<IntMatrix> maps(space->covers().size(), IntMatrix::Zero(0, 0));
    return Sheaf(std::move(space), std::move(stalks), std::move(maps));
  }
  auto sub = std::make_shared<const FinitePoset>(space->induced_subposet(U));
  return extension_by_zero(std::move(space), U, constant_sheaf(sub, g));
}

Sheaf skyscraper(PosetPtr space, int x, const FgAbGroup& g) {
  const FinitePoset& p = *space;
  std::vector<FgAbGroup> stalks(static_cast<size_t>(p.size()));
  stalks[static_cast<size_t>(x)] = g;
  std::vector<IntMatrix> maps;
  for (auto [a, b] : p.covers())
    maps.push_back(IntMatrix::Zero(stalks[static_cast<size_t>(b)].gens(),
                                   stalks[static_cast<size_t>(a)].gens()));
  return Sheaf(std::move(space), std::move(stalks), std::move(maps));
}

Sheaf closed_restriction(PosetPtr space, const std::vector<int>& Y, const Sheaf& f) {
  const FinitePoset& p = *space;
  if (!p.is_down_set(Y)) throw std::invalid_argument("closed_restriction: subset is not closed");
  if (!same_space(p, f.space()))
    throw std::invalid_argument("closed_restriction: base mismatch");
  std::vector<char> in_y(static_cast<size_t>(p.size()), 0);
  for (int y : Y) in_y[static_cast<size_t>(y)] = 1;

  // U_x meet Y has minimum x when x lies in Y and is empty otherwise, so the
  // section group over the trace is the stalk itself or zero
  std::vector<FgAbGroup> stalks;
  for (int x = 0; x < p.size(); ++x)
    stalks.push_back(in_y[static_cast<size_t>(x)] ? f.stalk(x) : FgAbGroup());
  std::vector<IntMatrix> maps;
  for (size_t k = 0; k < p.covers().size(); ++k) {
    auto [a, b] = p.covers()[k];
    if (in_y[static_cast<size_t>(a)] && in_y[static_cast<size_t>(b)])
      maps.push_back(f.cover_matrix(static_cast<int>(k)));
    else
      maps.push_back(IntMatrix::Zero(stalks[static_cast<size_t>(b)].gens(),
                                     stalks[static_cast<size_t>(a)].gens()));
  }
  return Sheaf(std::move(space), std::move(stalks), std::move(maps));
}

Sheaf inverse_image(const MonotoneMap& f, const Sheaf& g) {
  if (!f.is_monotone() || !same_space(*f.dst, g.space()))
    throw std::invalid_argument("inverse_image: map and sheaf do not match");
  const FinitePoset& p = *f.src;
  std::vector<FgAbGroup> stalks;
  for (int x = 0; x < p.size(); ++x) stalks.push_back(g.stalk(f(x)));
  std::vector<IntMatrix> maps;
  for (auto [a, b] : p.covers()) maps.push_back(g.rho_matrix(f(a), f(b)));
  return Sheaf(std::make_shared<const FinitePoset>(p), std::move(stalks), std::move(maps));
}

Sheaf open_restriction(const Sheaf& f, const std::vector<int>& U) {
  const FinitePoset& p = f.space();
  if (!p.is_up_set(U)) throw std::invalid_argument("open_restriction: subset is not open");
  auto sub = std::make_shared<const FinitePoset>(p.induced_subposet(U));
  std::vector<int> u = U;
  std::sort(u.begin(), u.end());
  std::vector<FgAbGroup> stalks;
  for (int x : u) stalks.push_back(f.stalk(x));
  std::vector<IntMatrix> maps;
  for (auto [i, j] : sub->covers())
    maps.push_back(f.rho_matrix(u[static_cast<size_t>(i)], u[static_cast<size_t>(j)]));
  return Sheaf(sub, std::move(stalks), std::move(maps));
}

Sheaf tensor(const Sheaf& a, const Sheaf& b) {
  if (!same_space(a.space(), b.space())) throw std::invalid_argument("tensor: base mismatch");
  std::vector<FgAbGroup> stalks;
  for (int x = 0; x < a.space().size(); ++x)
    stalks.push_back(tensor_product(a.stalk(x), b.stalk(x)));
  std::vector<IntMatrix> maps;
  for (size_t k = 0; k < a.space().covers().size(); ++k)
    maps.push_back(kronecker(a.cover_matrix(static_cast<int>(k)),
                             b.cover_matrix(static_cast<int>(k))));
  return Sheaf(a.space_ptr(), std::move(stalks), std::move(maps));
}

SheafComplex tensor(const Sheaf& f, const SheafComplex& c) {
  SheafComplex out;
  out.lo = c.lo;
  for (const Sheaf& t : c.terms) out.terms.push_back(tensor(f, t));
  for (size_t i = 0; i < c.diffs.size(); ++i) {
    SheafMorphism m;
    m.src = &out.terms[i + 1];
    m.dst = &out.terms[i];
    for (int x = 0; x < f.space().size(); ++x)
      m.components.push_back(kronecker(int_identity(f.stalk(x).gens()),
                                       c.diffs[i].components[static_cast<size_t>(x)]));
    out.diffs.push_back(std::move(m));
  }
  return out;
}

Sheaf sum(const Sheaf& a, const Sheaf& b) {
  if (!same_space(a.space(), b.space())) throw std::invalid_argument("sum: base mismatch");
  std::vector<FgAbGroup> stalks;
  for (int x = 0; x < a.space().size(); ++x)
    stalks.push_back(direct_sum(a.stalk(x), b.stalk(x)));
  std::vector<IntMatrix> maps;
  for (size_t k = 0; k < a.space().covers().size(); ++k)
    maps.push_back(block_diag({a.cover_matrix(static_cast<int>(k)),
                               b.cover_matrix(static_cast<int>(k))}));
  return Sheaf(a.space_ptr(), std::move(stalks), std::move(maps));
}

Cosheaf cosheaf_extension_by_zero(PosetPtr space, const std::vector<int>& U,
                                  const Cosheaf& q_on_u) {
  const FinitePoset& p = *space;
  if (!p.is_up_set(U))
    throw std::invalid_argument("cosheaf_extension_by_zero: subset is not open");
  FinitePoset sub = p.induced_subposet(U);
  if (!same_space(sub, q_on_u.space()))
    throw std::invalid_argument("cosheaf_extension_by_zero: value data does not live on the open");
  std::vector<int> pos(static_cast<size_t>(p.size()), -1);
  for (size_t i = 0; i < U.size(); ++i) pos[static_cast<size_t>(U[i])] = static_cast<int>(i);

  // trace of the minimal open inside U, in local ids of the subposet
  std::vector<std::vector<int>> traces(static_cast<size_t>(p.size()));
  for (int x = 0; x < p.size(); ++x)
    for (int z : p.up_set(x))
      if (pos[static_cast<size_t>(z)] >= 0)
        traces[static_cast<size_t>(x)].push_back(pos[static_cast<size_t>(z)]);

  std::vector<FgAbGroup> locals;
  for (int u = 0; u < sub.size(); ++u) locals.push_back(q_on_u.value(u));

  std::vector<FgAbGroup> values;
  for (int x = 0; x < p.size(); ++x) {
    if (pos[static_cast<size_t>(x)] >= 0)
      values.push_back(q_on_u.value(pos[static_cast<size_t>(x)]));
    else
      values.push_back(value_colimit(q_on_u, traces[static_cast<size_t>(x)]).group);
  }

  std::vector<IntMatrix> maps;
  for (auto [a, b] : p.covers()) {
    int ia = pos[static_cast<size_t>(a)], ib = pos[static_cast<size_t>(b)];
    if (ia >= 0 && ib >= 0) {
      maps.push_back(q_on_u.down_matrix(ia, ib));
    } else if (ia < 0 && ib >= 0) {
      // insertion of the value at b into the colimit over the trace of a
      const auto& ta = traces[static_cast<size_t>(a)];
      Eigen::Index rows = values[static_cast<size_t>(a)].gens();
      IntMatrix m = IntMatrix::Zero(rows, q_on_u.value(ib).gens());
      Eigen::Index off = block_offset(locals, ta, ib);
      for (Eigen::Index i = 0; i < m.cols(); ++i) m(off + i, i) = 1;
      maps.push_back(std::move(m));
    } else {
      maps.push_back(value_extension(q_on_u, traces[static_cast<size_t>(b)],
                                     traces[static_cast<size_t>(a)]));
    }
  }
  return Cosheaf(std::move(space), std::move(values), std::move(maps));
}

Cosheaf cosheaf_sum(const Cosheaf& a, const Cosheaf& b) {
  if (!same_space(a.space(), b.space())) throw std::invalid_argument("cosheaf_sum: base mismatch");
  std::vector<FgAbGroup> values;
  for (int x = 0; x < a.space().size(); ++x)
    values.push_back(direct_sum(a.value(x), b.value(x)));
  std::vector<IntMatrix> maps;
  for (size_t k = 0; k < a.space().covers().size(); ++k)
    maps.push_back(block_diag({a.cover_matrix(static_cast<int>(k)),
                               b.cover_matrix(static_cast<int>(k))}));
  return Cosheaf(a.space_ptr(), std::move(values), std::move(maps));
}

LimitResult stalk_limit(const Sheaf& f, const std::vector<int>& subset) {
  std::vector<int> s = subset;
  std::sort(s.begin(), s.end());
  Diagram d;
  std::vector<int> pos(static_cast<size_t>(f.space().size()), -1);
  for (size_t i = 0; i < s.size(); ++i) {
    d.objects.push_back(f.stalk(s[i]));
    pos[static_cast<size_t>(s[i])] = static_cast<int>(i);
  }
  const auto& covers = f.space().covers();
  for (size_t k = 0; k < covers.size(); ++k) {
    auto [a, b] = covers[k];
    int ia = pos[static_cast<size_t>(a)], ib = pos[static_cast<size_t>(b)];
    if (ia >= 0 && ib >= 0)
      d.edges.push_back({ia, ib, f.cover_matrix(static_cast<int>(k))});
  }
  return limit(std::move(d));
}

FgAbGroup sections(const Sheaf& f, const std::vector<int>& U) {
  if (!f.space().is_up_set(U)) throw std::invalid_argument("sections: subset is not open");
  return stalk_limit(f, U).group;
}

IntMatrix sections_restriction(const Sheaf& f, const LimitResult& over_w,
                               const std::vector<int>& W, const LimitResult& over_v,
                               const std::vector<int>& V) {
  std::vector<int> ws = W, vs = V;
  std::sort(ws.begin(), ws.end());
  std::sort(vs.begin(), vs.end());
  Eigen::Index vtotal = 0;
  for (int z : vs) vtotal += f.stalk(z).gens();
  IntMatrix out(over_v.group.gens(), over_w.group.gens());
  for (Eigen::Index j = 0; j < over_w.group.gens(); ++j) {
    IntVector fam(vtotal);
    Eigen::Index r = 0;
    for (int z : vs) {
      Eigen::Index off = 0;
      for (int w : ws) {
        if (w == z) break;
        off += f.stalk(w).gens();
      }
      fam.segment(r, f.stalk(z).gens()) = over_w.family_gens.block(off, j, f.stalk(z).gens(), 1);
      r += f.stalk(z).gens();
    }
    out.col(j) = over_v.family_class(fam);
  }
  return out;
}

ColimitResult value_colimit(const Cosheaf& q, const std::vector<int>& subset) {
  std::vector<int> s = subset;
  std::sort(s.begin(), s.end());
  Diagram d;
  std::vector<int> pos(static_cast<size_t>(q.space().size()), -1);
  for (size_t i = 0; i < s.size(); ++i) {
    d.objects.push_back(q.value(s[i]));
    pos[static_cast<size_t>(s[i])] = static_cast<int>(i);
  }
  const auto& covers = q.space().covers();
  for (size_t k = 0; k < covers.size(); ++k) {
    auto [a, b] = covers[k];
    int ia = pos[static_cast<size_t>(a)], ib = pos[static_cast<size_t>(b)];
    if (ia >= 0 && ib >= 0)
      d.edges.push_back({ib, ia, q.cover_matrix(static_cast<int>(k))});
  }
  return colimit(std::move(d));
}

FgAbGroup cosheaf_value(const Cosheaf& q, const std::vector<int>& U) {
  if (!q.space().is_up_set(U)) throw std::invalid_argument("cosheaf_value: subset is not open");
  for (int m : U) {
    bool minimum = true;
    for (int z : U)
      if (!q.space().leq(m, z)) {
        minimum = false;
        break;
      }
    if (minimum) return q.value(m);  // U = U_m, stored functor data applies
  }
  return value_colimit(q, U).group;
}

IntMatrix value_extension(const Cosheaf& q, const std::vector<int>& V,
                          const std::vector<int>& W) {
  std::vector<int> vs = V, ws = W;
  std::sort(vs.begin(), vs.end());
  std::sort(ws.begin(), ws.end());
  std::vector<FgAbGroup> vals;
  for (int x = 0; x < q.space().size(); ++x) vals.push_back(q.value(x));
  Eigen::Index vtotal = 0, wtotal = 0;
  for (int z : vs) vtotal += q.value(z).gens();
  for (int z : ws) wtotal += q.value(z).gens();
  IntMatrix out = IntMatrix::Zero(wtotal, vtotal);
  for (int z : vs) {
    Eigen::Index r = block_offset(vals, ws, z);
    Eigen::Index c = block_offset(vals, vs, z);
    for (Eigen::Index i = 0; i < q.value(z).gens(); ++i) out(r + i, c + i) = 1;
  }
  return out;
}

Cosheaf cos(const Sheaf& f) {
  const FinitePoset& p = f.space();
  std::vector<FgAbGroup> values;
  std::vector<std::vector<int>> opens;
  for (int x = 0; x < p.size(); ++x) {
    std::vector<int> u = p.up_set(x);
    Diagram d;
    std::vector<int> pos(static_cast<size_t>(p.size()), -1);
    for (size_t i = 0; i < u.size(); ++i) {
      d.objects.push_back(f.stalk(u[i]));
      pos[static_cast<size_t>(u[i])] = static_cast<int>(i);
    }
    const auto& covers = p.covers();
    for (size_t k = 0; k < covers.size(); ++k) {
      auto [a, b] = covers[k];
      int ia = pos[static_cast<size_t>(a)], ib = pos[static_cast<size_t>(b)];
      if (ia >= 0 && ib >= 0)
        d.edges.push_back({ia, ib, f.cover_matrix(static_cast<int>(k))});
    }
    values.push_back(colimit(std::move(d)).group);
    opens.push_back(std::move(u));
  }

  std::vector<FgAbGroup> stalk_list;
  for (int x = 0; x < p.size(); ++x) stalk_list.push_back(f.stalk(x));
  std::vector<IntMatrix> maps;
  for (auto [a, b] : p.covers()) {
    // generator blocks of the smaller open land at their offsets in the larger
    const auto& ua = opens[static_cast<size_t>(a)];
    const auto& ub = opens[static_cast<size_t>(b)];
    Eigen::Index rows = values[static_cast<size_t>(a)].gens();
    Eigen::Index cols = values[static_cast<size_t>(b)].gens();
    IntMatrix m = IntMatrix::Zero(rows, cols);
    for (int z : ub) {
      Eigen::Index r = block_offset(stalk_list, ua, z);
      Eigen::Index c = block_offset(stalk_list, ub, z);
      for (Eigen::Index i = 0; i < f.stalk(z).gens(); ++i) m(r + i, c + i) = 1;
    }
    maps.push_back(std::move(m));
  }
  return Cosheaf(f.space_ptr(), std::move(values), std::move(maps));
}

std::vector<std::vector<int>> connected_open_subsets(const FinitePoset& p,
                                                     const std::vector<int>& U) {
  std::vector<int> u = U;
  std::sort(u.begin(), u.end());
  std::vector<std::vector<int>> out;
  const size_t n = u.size();
  if (n > 20) throw std::invalid_argument("connected_open_subsets: open too large");
  for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
    std::vector<int> v;
    for (size_t i = 0; i < n; ++i)
      if (mask & (1ul << i)) v.push_back(u[i]);
    if (!p.is_up_set(v)) continue;
    if (!p.is_connected(v)) continue;
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

Sheaf shf(const Cosheaf& q) { return shf_data(q).sheaf; }

ShfData shf_data(const Cosheaf& q) {
  const FinitePoset& p = q.space();
  std::vector<std::vector<std::vector<int>>> opens_at;  // connected opens per element
  std::vector<LimitResult> limits;
  std::vector<std::vector<Eigen::Index>> obj_offsets;   // family coordinate offsets
  for (int x = 0; x < p.size(); ++x) {
    auto opens = connected_open_subsets(p, p.up_set(x));
    Diagram d;
    std::vector<Eigen::Index> offs;
    Eigen::Index off = 0;
    for (const auto& v : opens) {
      FgAbGroup g = value_colimit(q, v).group;
      offs.push_back(off);
      off += g.gens();
      d.objects.push_back(std::move(g));
    }
    for (size_t i = 0; i < opens.size(); ++i)
      for (size_t j = 0; j < opens.size(); ++j) {
        if (i == j) continue;
        if (!std::includes(opens[j].begin(), opens[j].end(), opens[i].begin(), opens[i].end()))
          continue;
        // keep only covering inclusions; composites follow by functoriality
        bool direct = true;
        for (size_t k = 0; k < opens.size() && direct; ++k) {
          if (k == i || k == j) continue;
          if (std::includes(opens[k].begin(), opens[k].end(), opens[i].begin(), opens[i].end()) &&
              std::includes(opens[j].begin(), opens[j].end(), opens[k].begin(), opens[k].end()))
            direct = false;
        }
        if (direct)
          d.edges.push_back({static_cast<int>(i), static_cast<int>(j),
                             value_extension(q, opens[i], opens[j])});
      }
    limits.push_back(limit(std::move(d)));
    opens_at.push_back(std::move(opens));
    obj_offsets.push_back(std::move(offs));
  }

  std::vector<FgAbGroup> stalks;
  for (int x = 0; x < p.size(); ++x) stalks.push_back(limits[static_cast<size_t>(x)].group);
  std::vector<IntMatrix> maps;
  for (auto [a, b] : p.covers()) {
    const auto& big = opens_at[static_cast<size_t>(a)];
    const auto& small = opens_at[static_cast<size_t>(b)];
    const LimitResult& la = limits[static_cast<size_t>(a)];
    const LimitResult& lb = limits[static_cast<size_t>(b)];
    Eigen::Index small_total = 0;
    for (const auto& v : small)
      for (int z : v) small_total += q.value(z).gens();
    IntMatrix m(lb.group.gens(), la.group.gens());
    for (Eigen::Index j = 0; j < la.group.gens(); ++j) {
      IntVector fam(small_total);
      Eigen::Index r = 0;
      for (const auto& v : small) {
        auto it = std::find(big.begin(), big.end(), v);
        size_t bi = static_cast<size_t>(it - big.begin());
        Eigen::Index g = la.diagram->objects[bi].gens();
        fam.segment(r, g) =
            la.family_gens.block(obj_offsets[static_cast<size_t>(a)][bi], j, g, 1);
        r += g;
      }
      m.col(j) = lb.family_class(fam);
    }
    maps.push_back(std::move(m));
  }
  ShfData out;
  out.sheaf = Sheaf(q.space_ptr(), std::move(stalks), std::move(maps));
  out.opens = std::move(opens_at);
  out.limits = std::move(limits);
  return out;
}

}  // namespace finsheaf
