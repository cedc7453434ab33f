#include "finsheaf/duality.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <utility>

namespace finsheaf {

namespace {

std::vector<int> all_elements(const FinitePoset& p) {
  std::vector<int> out(static_cast<size_t>(p.size()));
  for (int x = 0; x < p.size(); ++x) out[static_cast<size_t>(x)] = x;
  return out;
}

// positions, within the lex chain list at level k, of chains with top in U_x
std::vector<int> qualifying(const FinitePoset& p, int k, int x) {
  std::vector<int> out;
  const auto& cs = p.chains(k);
  for (size_t i = 0; i < cs.size(); ++i)
    if (p.leq(x, cs[i].back())) out.push_back(static_cast<int>(i));
  return out;
}

// projection keeping the coordinates listed in `to`; to must refine from
IntMatrix selection(const std::vector<int>& to, const std::vector<int>& from) {
  IntMatrix m = IntMatrix::Zero(static_cast<Eigen::Index>(to.size()),
                                static_cast<Eigen::Index>(from.size()));
  size_t i = 0;
  for (size_t j = 0; j < from.size(); ++j) {
    while (i < to.size() && to[i] < from[j]) ++i;
    if (i < to.size() && to[i] == from[j])
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1;
  }
  return m;
}

IntMatrix submatrix(const IntMatrix& m, const std::vector<int>& rows,
                    const std::vector<int>& cols) {
  IntMatrix out(static_cast<Eigen::Index>(rows.size()),
                static_cast<Eigen::Index>(cols.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          m(rows[i], cols[j]);
  return out;
}

}  // namespace

ChainComplex DualizingComplex::stalk_complex(int x) const {
  std::vector<Eigen::Index> ranks;
  for (const Sheaf& t : cx.terms) ranks.push_back(t.stalk(x).gens());
  std::vector<IntMatrix> ds;
  for (const SheafMorphism& m : cx.diffs)
    ds.push_back(m.components[static_cast<size_t>(x)]);
  return ChainComplex::from_free(cx.lo, ranks, ds);
}

DualizingComplex dualizing_complex(PosetPtr space, int max_deg) {
  if (max_deg < 0) throw std::invalid_argument("dualizing_complex: negative degree");
  const FinitePoset& p = *space;
  const int h = p.height();
  const int hi = std::min(max_deg, h) + 1;

  // Coboundaries of the constant sheaf: one row and column per chain, in lex
  // order. The coboundary of the indicator of U_x is the submatrix on the
  // qualifying chains, since an entry between two qualifying chains never
  // crosses a vanishing stalk.
  CobarComplex glob(constant_sheaf(space, FgAbGroup::free_group(1)), all_elements(p), h);
  std::vector<IntMatrix> delta;
  for (int k = 0; k < hi; ++k) delta.push_back(glob.complex().diff_at(k).matrix());

  std::vector<std::vector<std::vector<int>>> qual(static_cast<size_t>(hi) + 1);
  for (int k = 0; k <= hi; ++k)
    for (int x = 0; x < p.size(); ++x)
      qual[static_cast<size_t>(k)].push_back(qualifying(p, k, x));

  SheafComplex cx;
  cx.lo = 0;
  for (int k = 0; k <= hi; ++k) {
    const auto& q = qual[static_cast<size_t>(k)];
    std::vector<FgAbGroup> stalks;
    for (int x = 0; x < p.size(); ++x)
      stalks.push_back(
          FgAbGroup::free_group(static_cast<Eigen::Index>(q[static_cast<size_t>(x)].size())));
    std::vector<IntMatrix> maps;
    for (auto [a, b] : p.covers())
      maps.push_back(selection(q[static_cast<size_t>(b)], q[static_cast<size_t>(a)]));
    cx.terms.push_back(Sheaf(space, std::move(stalks), std::move(maps)));
  }
  for (int k = 0; k < hi; ++k) {
    SheafMorphism m;
    m.src = &cx.terms[static_cast<size_t>(k) + 1];
    m.dst = &cx.terms[static_cast<size_t>(k)];
    for (int x = 0; x < p.size(); ++x)
      m.components.push_back(submatrix(delta[static_cast<size_t>(k)],
                                       qual[static_cast<size_t>(k) + 1][static_cast<size_t>(x)],
                                       qual[static_cast<size_t>(k)][static_cast<size_t>(x)])
                                 .transpose());
    cx.diffs.push_back(std::move(m));
  }
  return DualizingComplex{std::move(cx)};
}

std::vector<FgAbGroup> dual_homology(const DualizingComplex& d, const Sheaf& f,
                                     int max_deg) {
  if (max_deg < 0) throw std::invalid_argument("dual_homology: negative degree");
  CochainComplex tot = cobar_total(tensor(f, d.cx));
  std::vector<FgAbGroup> out;
  for (int i = 0; i <= max_deg; ++i) out.push_back(tot.cohomology_at(-i));
  return out;
}

PvReport pv_check(PosetPtr space, int max_deg) {
  if (max_deg < 0) throw std::invalid_argument("pv_check: negative degree");
  const FinitePoset& p = *space;
  DualizingComplex d = dualizing_complex(space, p.height());
  PvReport rep;
  rep.pass = true;
  rep.element_pass.assign(static_cast<size_t>(p.size()), 1);
  for (int x = 0; x < p.size(); ++x) {
    std::vector<int> ux = p.up_set(x);
    Sheaf zu = constant_on_open(space, ux, FgAbGroup::free_group(1));
    std::vector<FgAbGroup> got = dual_homology(d, zu, max_deg);
    auto sub = std::make_shared<const FinitePoset>(p.induced_subposet(ux));
    std::vector<FgAbGroup> want =
        homology(constant_sheaf(std::move(sub), FgAbGroup::free_group(1)), max_deg);
    for (int i = 0; i <= max_deg; ++i)
      if (!got[static_cast<size_t>(i)].same_invariants(want[static_cast<size_t>(i)])) {
        rep.element_pass[static_cast<size_t>(x)] = 0;
        rep.pass = false;
        if (rep.detail.empty())
          rep.detail = "element " + p.name(x) + ": degree " + std::to_string(i) + " disagrees";
        break;
      }
  }
  return rep;
}

ManifoldReport homological_manifold_check(PosetPtr space, int max_deg) {
  if (max_deg < 0)
    throw std::invalid_argument("homological_manifold_check: negative degree");
  const FinitePoset& p = *space;
  DualizingComplex d = dualizing_complex(space, max_deg);
  const int top = d.cx.hi();
  ManifoldReport rep;

  std::vector<ChainComplex> stalkcx;
  for (int x = 0; x < p.size(); ++x) stalkcx.push_back(d.stalk_complex(x));

  int n = -1;
  bool ok = true;
  for (int x = 0; x < p.size(); ++x) {
    int found = -1;
    bool clean = true;
    for (int k = 0; k <= top; ++k) {
      FgAbGroup hk = stalkcx[static_cast<size_t>(x)].homology_at(k);
      if (hk.is_trivial()) continue;
      if (found >= 0) {
        rep.witnesses.push_back("element " + p.name(x) + ": data in degrees " +
                                std::to_string(found) + " and " + std::to_string(k));
        clean = false;
        break;
      }
      found = k;
      if (hk.rank() != 1 || !hk.invariant_factors().empty()) {
        rep.witnesses.push_back("element " + p.name(x) + ": degree " + std::to_string(k) +
                                " is not free of rank one");
        clean = false;
      }
    }
    if (found < 0) {
      rep.witnesses.push_back("element " + p.name(x) + ": stalk complex is acyclic");
      ok = false;
      continue;
    }
    if (!clean) {
      ok = false;
      continue;
    }
    if (n < 0) {
      n = found;
    } else if (n != found) {
      rep.witnesses.push_back("element " + p.name(x) + ": degree " + std::to_string(found) +
                              " does not match degree " + std::to_string(n));
      ok = false;
    }
  }
  if (!ok || n < 0) return rep;

  rep.dim = n;
  std::vector<HomologyData> data;
  for (int x = 0; x < p.size(); ++x)
    data.push_back(stalkcx[static_cast<size_t>(x)].homology_data(n));
  const auto& covers = p.covers();
  std::vector<int> sign(covers.size(), 0);
  for (size_t e = 0; e < covers.size(); ++e) {
    auto [a, b] = covers[e];
    GroupMap g = induced_map(data[static_cast<size_t>(a)], data[static_cast<size_t>(b)],
                             d.cx.terms[static_cast<size_t>(n)].rho_matrix(a, b));
    if (!g.is_iso()) {
      rep.witnesses.push_back("edge " + p.name(a) + "->" + p.name(b) +
                              ": induced map is not invertible");
      ok = false;
      continue;
    }
    sign[e] = g.canonical_matrix()(0, 0) > 0 ? 1 : -1;
  }
  if (!ok) return rep;

  rep.pass = true;
  rep.edge_signs = sign;
  // orientable when the edge signs are differences of a sign potential
  std::vector<int> pot(static_cast<size_t>(p.size()), 0);
  bool orient = true;
  for (int root = 0; root < p.size(); ++root) {
    if (pot[static_cast<size_t>(root)] != 0) continue;
    pot[static_cast<size_t>(root)] = 1;
    std::vector<int> stack = {root};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (size_t e = 0; e < covers.size(); ++e) {
        auto [a, b] = covers[e];
        int other = a == v ? b : b == v ? a : -1;
        if (other < 0) continue;
        int want = sign[e] * pot[static_cast<size_t>(v)];
        if (pot[static_cast<size_t>(other)] == 0) {
          pot[static_cast<size_t>(other)] = want;
          stack.push_back(other);
        } else if (pot[static_cast<size_t>(other)] != want) {
          orient = false;
        }
      }
    }
  }
  rep.orientable = orient;
  return rep;
}

RestrictionReport restricted_dual_comparison(PosetPtr space, const std::vector<int>& u,
                                             int max_deg) {
  if (max_deg < 0) throw std::invalid_argument("restricted_dual: negative degree");
  const FinitePoset& p = *space;
  if (!p.is_up_set(u)) throw std::invalid_argument("restricted_dual: subset is not open");
  if (u.empty()) throw std::invalid_argument("restricted_dual: empty subset");

  std::vector<int> su = u;
  std::sort(su.begin(), su.end());
  auto sub = std::make_shared<const FinitePoset>(p.induced_subposet(su));
  DualizingComplex whole = dualizing_complex(space, max_deg);
  DualizingComplex small = dualizing_complex(std::move(sub), max_deg);

  RestrictionReport rep;
  rep.agree = true;
  const int top = std::max(whole.cx.hi(), small.cx.hi());
  for (size_t i = 0; i < su.size(); ++i) {
    ChainComplex a = whole.stalk_complex(su[i]);
    ChainComplex b = small.stalk_complex(static_cast<int>(i));
    for (int k = 0; k <= top; ++k)
      if (!a.homology_at(k).same_invariants(b.homology_at(k))) {
        rep.agree = false;
        if (rep.detail.empty())
          rep.detail =
              "element " + p.name(su[i]) + ": degree " + std::to_string(k) + " differs";
      }
  }
  return rep;
}

}  // namespace finsheaf
