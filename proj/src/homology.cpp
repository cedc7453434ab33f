#include <algorithm>
#include <memory>
#include <stdexcept>
#include <utility>

#include "finsheaf/homology.hpp"

namespace finsheaf {

namespace {

std::vector<int> all_elements(const FinitePoset& p) {
  std::vector<int> out(static_cast<size_t>(p.size()));
  for (int x = 0; x < p.size(); ++x) out[static_cast<size_t>(x)] = x;
  return out;
}

std::vector<int> sorted_intersection(std::vector<int> a, std::vector<int> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool covers_space(const FinitePoset& p, const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<char> hit(static_cast<size_t>(p.size()), 0);
  for (int x : a) hit[static_cast<size_t>(x)] = 1;
  for (int x : b) hit[static_cast<size_t>(x)] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

// Common body of the two Mayer-Vietoris checks; the supports are two subsets
// whose chains exhaust the chains of the space.
SequenceReport mv_core(const Sheaf& f, const std::vector<int>& a, const std::vector<int>& b,
                       int max_deg) {
  SequenceReport rep;
  std::vector<int> inter = sorted_intersection(a, b);
  BarComplex bi(f, inter, max_deg + 1);
  BarComplex ba(f, a, max_deg + 1);
  BarComplex bb(f, b, max_deg + 1);
  BarComplex bx(f, all_elements(f.space()), max_deg + 1);

  std::vector<GroupMap> into_middle, onto_whole;
  for (int i = 0; i <= max_deg; ++i) {
    HomologyData hi = bi.complex().homology_data(i);
    HomologyData ha = ba.complex().homology_data(i);
    HomologyData hb = bb.complex().homology_data(i);
    HomologyData hx = bx.complex().homology_data(i);
    GroupMap au = induced_map(hi, ha, bar_inclusion_matrix(bi, ba, i));
    GroupMap av = induced_map(hi, hb, bar_inclusion_matrix(bi, bb, i));
    GroupMap bu = induced_map(ha, hx, bar_inclusion_matrix(ba, bx, i));
    GroupMap bv = induced_map(hb, hx, bar_inclusion_matrix(bb, bx, i));
    FgAbGroup middle = direct_sum(ha.group(), hb.group());
    into_middle.push_back(
        GroupMap(hi.group(), middle, vcat(au.matrix(), IntMatrix(-av.matrix()))));
    onto_whole.push_back(GroupMap(middle, hx.group(), hcat(bu.matrix(), bv.matrix())));
    rep.left.push_back(hi.group());
    rep.middle.push_back(middle);
    rep.right.push_back(hx.group());
  }

  rep.pass = true;
  auto fail = [&](int i, const std::string& what) {
    if (rep.pass) rep.detail = "degree " + std::to_string(i) + ": " + what;
    rep.pass = false;
  };
  for (int i = 0; i <= max_deg; ++i) {
    size_t s = static_cast<size_t>(i);
    if (!onto_whole[s].compose_after(into_middle[s]).is_zero_map())
      fail(i, "composite through the middle column is not zero");
    if (!pair_homology(into_middle[s], onto_whole[s]).is_trivial())
      fail(i, "sequence is not exact at the middle column");
    FgAbGroup boundary_src = onto_whole[s].cokernel();
    FgAbGroup boundary_dst = i == 0 ? FgAbGroup() : into_middle[s - 1].kernel();
    if (!boundary_src.same_invariants(boundary_dst))
      fail(i, "cokernel onto the whole space does not match the kernel below");
  }
  return rep;
}

IntVector kron_segment(const IntMatrix& rho, const IntVector& za, const IntVector& wq) {
  IntVector ra = rho * za;
  IntVector out = IntVector::Zero(ra.size() * wq.size());
  for (Eigen::Index i = 0; i < ra.size(); ++i)
    for (Eigen::Index j = 0; j < wq.size(); ++j) out(i * wq.size() + j) = ra(i) * wq(j);
  return out;
}

}  // namespace

SequenceReport mv_open_check(const Sheaf& f, const std::vector<int>& u,
                             const std::vector<int>& v, int max_deg) {
  const FinitePoset& p = f.space();
  if (!p.is_up_set(u) || !p.is_up_set(v))
    throw std::invalid_argument("mv_open: both cover pieces must be open");
  if (!covers_space(p, u, v)) throw std::invalid_argument("mv_open: pieces must cover the space");
  return mv_core(f, u, v, max_deg);
}

SequenceReport mv_closed_check(const Sheaf& f, const std::vector<int>& y,
                               const std::vector<int>& z, int max_deg) {
  const FinitePoset& p = f.space();
  if (!p.is_down_set(y) || !p.is_down_set(z))
    throw std::invalid_argument("mv_closed: both cover pieces must be closed");
  if (!covers_space(p, y, z))
    throw std::invalid_argument("mv_closed: pieces must cover the space");
  return mv_core(f, y, z, max_deg);
}

ExcisionReport excision_check(const Sheaf& f, const std::vector<int>& u,
                              const std::vector<int>& y, int max_deg) {
  const FinitePoset& p = f.space();
  if (!p.is_up_set(u)) throw std::invalid_argument("excision: U must be open");
  if (!p.is_down_set(y)) throw std::invalid_argument("excision: Y must be closed");
  std::vector<int> inter = sorted_intersection(u, y);
  if (inter.size() != y.size())
    throw std::invalid_argument("excision: Y must lie inside U");

  ExcisionReport rep;
  Sheaf fy = closed_restriction(f.space_ptr(), y, f);
  std::vector<int> su = u;
  std::sort(su.begin(), su.end());
  BarComplex inner(fy, su, max_deg + 1);
  BarComplex outer(fy, all_elements(p), max_deg + 1);
  rep.pass = true;
  for (int i = 0; i <= max_deg; ++i) {
    HomologyData hin = inner.complex().homology_data(i);
    HomologyData hout = outer.complex().homology_data(i);
    GroupMap m = induced_map(hin, hout, bar_inclusion_matrix(inner, outer, i));
    rep.inner.push_back(hin.group());
    rep.outer.push_back(hout.group());
    if (!m.is_iso() && rep.pass) {
      rep.pass = false;
      rep.detail = "degree " + std::to_string(i) + ": supported homology map is not an isomorphism";
    }
  }
  return rep;
}

ComparisonReport universal_coefficients(const Sheaf& f, const FgAbGroup& g, int max_deg) {
  if (max_deg < 0) throw std::invalid_argument("universal_coefficients: negative degree");
  int len = max_deg + 2;
  Resolution res = standard_resolution(f, len);
  IntMatrix rp = column_span_basis(g.rels());
  Eigen::Index gg = g.gens(), s = rp.cols();

  auto tagc = [&](int k) {
    return k < 0 ? Eigen::Index(0) : static_cast<Eigen::Index>(res.tags(k).size());
  };
  std::vector<Eigen::Index> ranks;
  for (int n = 0; n <= len; ++n) ranks.push_back(tagc(n) * gg + tagc(n - 1) * s);
  std::vector<IntMatrix> diffs;
  for (int n = 1; n <= len; ++n) {
    IntMatrix d = IntMatrix::Zero(ranks[static_cast<size_t>(n - 1)], ranks[static_cast<size_t>(n)]);
    IntMatrix aa = kronecker(res.colim_matrix(n), int_identity(gg));
    d.block(0, 0, aa.rows(), aa.cols()) = aa;
    IntMatrix ba = kronecker(int_identity(tagc(n - 1)), rp);
    if (n % 2 == 0) ba = -ba;  // sign (-1)^{n-1} on the coefficient step
    d.block(0, tagc(n) * gg, ba.rows(), ba.cols()) = ba;
    if (n >= 2) {
      IntMatrix bb = kronecker(res.colim_matrix(n - 1), int_identity(s));
      d.block(tagc(n - 1) * gg, tagc(n) * gg, bb.rows(), bb.cols()) = bb;
    }
    diffs.push_back(std::move(d));
  }
  ChainComplex total = ChainComplex::from_free(0, ranks, diffs);

  ComparisonReport rep;
  rep.pass = true;
  ChainComplex base = res.colim_complex();
  for (int i = 0; i <= max_deg; ++i) {
    rep.groups.push_back(total.homology_at(i));
    FgAbGroup want = tensor_product(base.homology_at(i), g);
    if (i > 0) want = direct_sum(want, tor1_group(base.homology_at(i - 1), g));
    rep.predicted.push_back(want);
    if (!rep.groups.back().same_invariants(want) && rep.pass) {
      rep.pass = false;
      rep.detail = "degree " + std::to_string(i) + ": groups do not match the coefficient formula";
    }
  }
  return rep;
}

ComparisonReport kunneth(const Sheaf& f1, const Sheaf& f2, int max_deg) {
  if (max_deg < 0) throw std::invalid_argument("kunneth: negative degree");
  int len = max_deg + 2;
  Resolution r1 = standard_resolution(f1, len);
  Resolution r2 = standard_resolution(f2, len);
  auto t1 = [&](int pdeg) { return static_cast<Eigen::Index>(r1.tags(pdeg).size()); };
  auto t2 = [&](int qdeg) { return static_cast<Eigen::Index>(r2.tags(qdeg).size()); };

  std::vector<Eigen::Index> ranks;
  std::vector<std::vector<Eigen::Index>> offs;  // per n, offset of the (p, n-p) block
  for (int n = 0; n <= len; ++n) {
    Eigen::Index r = 0;
    std::vector<Eigen::Index> o;
    for (int pdeg = 0; pdeg <= n; ++pdeg) {
      o.push_back(r);
      r += t1(pdeg) * t2(n - pdeg);
    }
    offs.push_back(std::move(o));
    ranks.push_back(r);
  }
  std::vector<IntMatrix> diffs;
  for (int n = 1; n <= len; ++n) {
    IntMatrix d = IntMatrix::Zero(ranks[static_cast<size_t>(n - 1)], ranks[static_cast<size_t>(n)]);
    for (int pdeg = 0; pdeg <= n; ++pdeg) {
      int qdeg = n - pdeg;
      Eigen::Index src = offs[static_cast<size_t>(n)][static_cast<size_t>(pdeg)];
      if (t1(pdeg) * t2(qdeg) == 0) continue;
      if (pdeg >= 1) {
        IntMatrix h = kronecker(r1.colim_matrix(pdeg), int_identity(t2(qdeg)));
        d.block(offs[static_cast<size_t>(n - 1)][static_cast<size_t>(pdeg - 1)], src, h.rows(),
                h.cols()) += h;
      }
      if (qdeg >= 1) {
        IntMatrix v = kronecker(int_identity(t1(pdeg)), r2.colim_matrix(qdeg));
        if (pdeg % 2 != 0) v = -v;
        d.block(offs[static_cast<size_t>(n - 1)][static_cast<size_t>(pdeg)], src, v.rows(),
                v.cols()) += v;
      }
    }
    diffs.push_back(std::move(d));
  }
  ChainComplex total = ChainComplex::from_free(0, ranks, diffs);

  ComparisonReport rep;
  rep.pass = true;
  ChainComplex b1 = r1.colim_complex(), b2 = r2.colim_complex();
  for (int n = 0; n <= max_deg; ++n) {
    rep.groups.push_back(total.homology_at(n));
    FgAbGroup want;
    for (int pdeg = 0; pdeg <= n; ++pdeg)
      want = direct_sum(want, tensor_product(b1.homology_at(pdeg), b2.homology_at(n - pdeg)));
    for (int pdeg = 0; pdeg <= n - 1; ++pdeg)
      want = direct_sum(want, tor1_group(b1.homology_at(pdeg), b2.homology_at(n - 1 - pdeg)));
    rep.predicted.push_back(want);
    if (!rep.groups.back().same_invariants(want) && rep.pass) {
      rep.pass = false;
      rep.detail = "degree " + std::to_string(n) + ": groups do not match the product formula";
    }
  }
  return rep;
}

SheafComplex derived_dual(const Sheaf& f, int max_deg) {
  if (max_deg < 0) throw std::invalid_argument("derived_dual: negative degree");
  int len = max_deg + 2;
  Resolution res = standard_resolution(f, len);
  const FinitePoset& p = f.space();
  PosetPtr space = f.space_ptr();

  // component lists of U_y meet U_x, per level, element, tag
  std::vector<std::vector<std::vector<std::vector<std::vector<int>>>>> comps(
      static_cast<size_t>(len + 1));
  for (int k = 0; k <= len; ++k) {
    comps[static_cast<size_t>(k)].resize(static_cast<size_t>(p.size()));
    for (int y = 0; y < p.size(); ++y) {
      auto& per_tag = comps[static_cast<size_t>(k)][static_cast<size_t>(y)];
      for (const auto& [x, j] : res.tags(k))
        per_tag.push_back(p.components(sorted_intersection(p.up_set(y), p.up_set(x))));
    }
  }
  auto rank_at = [&](int k, int y) {
    Eigen::Index r = 0;
    for (const auto& cl : comps[static_cast<size_t>(k)][static_cast<size_t>(y)])
      r += static_cast<Eigen::Index>(cl.size());
    return r;
  };
  // position of the component of (k, y, tag) containing element e
  auto comp_of = [&](int k, int y, size_t tag, int e) {
    const auto& cl = comps[static_cast<size_t>(k)][static_cast<size_t>(y)][tag];
    for (size_t c = 0; c < cl.size(); ++c)
      if (std::find(cl[c].begin(), cl[c].end(), e) != cl[c].end()) return static_cast<int>(c);
    return -1;
  };

  std::vector<Sheaf> duals;
  for (int k = 0; k <= len; ++k) {
    std::vector<FgAbGroup> stalks;
    for (int y = 0; y < p.size(); ++y) stalks.push_back(FgAbGroup::free_group(rank_at(k, y)));
    std::vector<IntMatrix> maps;
    for (auto [a, b] : p.covers()) {
      IntMatrix m = IntMatrix::Zero(stalks[static_cast<size_t>(b)].gens(),
                                    stalks[static_cast<size_t>(a)].gens());
      Eigen::Index col = 0, row0 = 0;
      for (size_t tag = 0; tag < res.tags(k).size(); ++tag) {
        const auto& ca = comps[static_cast<size_t>(k)][static_cast<size_t>(a)][tag];
        const auto& cb = comps[static_cast<size_t>(k)][static_cast<size_t>(b)][tag];
        for (size_t c = 0; c < ca.size(); ++c)
          for (size_t cprime = 0; cprime < cb.size(); ++cprime)
            if (std::find(ca[c].begin(), ca[c].end(), cb[cprime].front()) != ca[c].end())
              m(row0 + static_cast<Eigen::Index>(cprime), col + static_cast<Eigen::Index>(c)) = 1;
        col += static_cast<Eigen::Index>(ca.size());
        row0 += static_cast<Eigen::Index>(cb.size());
      }
      maps.push_back(std::move(m));
    }
    duals.push_back(Sheaf(space, std::move(stalks), std::move(maps)));
  }

  // dual of d_{k+1} runs from the dual of P_k to the dual of P_{k+1}
  std::vector<std::vector<IntMatrix>> deltas;  // [k][y]
  for (int k = 0; k + 1 <= len; ++k) {
    const IntMatrix& l = res.colim_matrix(k + 1);
    std::vector<IntMatrix> comp_mats;
    for (int y = 0; y < p.size(); ++y) {
      IntMatrix m = IntMatrix::Zero(rank_at(k + 1, y), rank_at(k, y));
      Eigen::Index row0 = 0;
      for (size_t beta = 0; beta < res.tags(k + 1).size(); ++beta) {
        const auto& cb = comps[static_cast<size_t>(k + 1)][static_cast<size_t>(y)][beta];
        Eigen::Index col0 = 0;
        for (size_t alpha = 0; alpha < res.tags(k).size(); ++alpha) {
          const auto& ca = comps[static_cast<size_t>(k)][static_cast<size_t>(y)][alpha];
          const Int& coeff = l(static_cast<Eigen::Index>(alpha), static_cast<Eigen::Index>(beta));
          if (coeff != 0)
            for (size_t cprime = 0; cprime < cb.size(); ++cprime) {
              int c = comp_of(k, y, alpha, cb[cprime].front());
              m(row0 + static_cast<Eigen::Index>(cprime), col0 + c) += coeff;
            }
          col0 += static_cast<Eigen::Index>(ca.size());
        }
        row0 += static_cast<Eigen::Index>(cb.size());
      }
      comp_mats.push_back(std::move(m));
    }
    deltas.push_back(std::move(comp_mats));
  }

  SheafComplex out;
  out.lo = -len;
  for (int i = 0; i <= len; ++i) out.terms.push_back(duals[static_cast<size_t>(len - i)]);
  for (int i = 0; i + 1 <= len; ++i) {
    SheafMorphism d;
    d.components = deltas[static_cast<size_t>(len - 1 - i)];
    out.diffs.push_back(std::move(d));
  }
  return out;
}

ComparisonReport duality_sequence_check(const Sheaf& f, int max_deg) {
  SheafComplex dual = derived_dual(f, max_deg);
  std::vector<FgAbGroup> hs = homology(f, max_deg);
  CochainComplex total = cobar_total(dual);
  ComparisonReport rep;
  rep.pass = true;
  FgAbGroup z = FgAbGroup::free_group(1);
  for (int i = 0; i <= max_deg; ++i) {
    rep.groups.push_back(total.cohomology_at(i));
    FgAbGroup want = hom_group(hs[static_cast<size_t>(i)], z);
    if (i > 0) want = direct_sum(want, ext1_group(hs[static_cast<size_t>(i - 1)], z));
    rep.predicted.push_back(want);
    if (!rep.groups.back().same_invariants(want) && rep.pass) {
      rep.pass = false;
      rep.detail = "degree " + std::to_string(i) + ": dual groups do not match the sequence";
    }
  }
  return rep;
}

CapContext::CapContext(const Sheaf& f, const Sheaf& f2, int top)
    : f_(f), f2_(f2), t_(tensor(f, f2)) {
  std::vector<int> elems = all_elements(f_.space());
  bar_ = BarComplex(f_, elems, top);
  target_ = BarComplex(t_, elems, top);
  cobar_ = CobarComplex(f2_, elems, top);
}

IntVector CapContext::cap(int p, int q, const IntVector& z, const IntVector& w) const {
  IntVector out = IntVector::Zero(target_.complex().term(p - q).gens());
  const auto& list = bar_.chain_list(p);
  bool flip = (p % 2 != 0) && (q % 2 != 0);
  for (size_t i = 0; i < list.size(); ++i) {
    const auto& c = list[i];
    std::vector<int> front(c.begin(), c.begin() + q + 1);
    std::vector<int> back(c.begin() + q, c.end());
    int jw = cobar_.chain_position(q, front);
    int jt = target_.chain_position(p - q, back);
    const IntMatrix& rho = f_.rho_matrix(c.front(), c[static_cast<size_t>(q)]);
    IntVector za = z.segment(bar_.block_offset(p, static_cast<int>(i)),
                             f_.stalk(c.front()).gens());
    IntVector wq = w.segment(cobar_.block_offset(q, jw),
                             f2_.stalk(c[static_cast<size_t>(q)]).gens());
    IntVector piece = kron_segment(rho, za, wq);
    if (flip) piece = -piece;
    out.segment(target_.block_offset(p - q, jt), piece.size()) += piece;
  }
  return out;
}

CapPairing cap_product(const Sheaf& f, const Sheaf& f2, int p, int q) {
  if (p < q || q < 0) throw std::invalid_argument("cap_product: need p >= q >= 0");
  CapContext ctx(f, f2, p + 1);
  HomologyData hp = ctx.bar().complex().homology_data(p);
  HomologyData hq = ctx.cobar().complex().cohomology_data(q);
  HomologyData ht = ctx.target_bar().complex().homology_data(p - q);

  CapPairing out;
  out.source = tensor_product(hp.group(), hq.group());
  out.target = ht.group();
  IntMatrix m(out.target.gens(), out.source.gens());
  for (Eigen::Index i = 0; i < hp.group().gens(); ++i)
    for (Eigen::Index j = 0; j < hq.group().gens(); ++j)
      m.col(i * hq.group().gens() + j) =
          ht.class_of(ctx.cap(p, q, hp.representative(i), hq.representative(j)));
  out.pairing = GroupMap(out.source, out.target, std::move(m));
  return out;
}

CheckReport cap_naturality_check(const MonotoneMap& f, const Sheaf& g, const Sheaf& g2,
                                 int p, int q) {
  if (p < q || q < 0) throw std::invalid_argument("cap_naturality: need p >= q >= 0");
  if (!f.is_monotone()) throw std::invalid_argument("cap_naturality: map is not monotone");
  Sheaf fg = inverse_image(f, g);
  Sheaf fg2 = inverse_image(f, g2);
  CapContext up(fg, fg2, p + 1);
  CapContext down(g, g2, p + 1);

  // chain-level pullback of a level-q cochain: evaluate on the image chain,
  // zero when the image degenerates
  auto pull = [&](const IntVector& w) {
    IntVector out = IntVector::Zero(up.cobar().complex().term(q).gens());
    const auto& list = up.cobar().chain_list(q);
    for (size_t i = 0; i < list.size(); ++i) {
      std::vector<int> image;
      for (int x : list[i]) image.push_back(f(x));
      bool strict = true;
      for (size_t t = 0; t + 1 < image.size(); ++t)
        if (image[t] == image[t + 1]) strict = false;
      if (!strict) continue;
      int j = down.cobar().chain_position(q, image);
      Eigen::Index sz = g2.stalk(image.back()).gens();
      out.segment(up.cobar().block_offset(q, static_cast<int>(i)), sz) =
          w.segment(down.cobar().block_offset(q, j), sz);
    }
    return out;
  };

  IntMatrix push_f = pushforward_chain_matrix(f, g, up.bar(), down.bar(), p);
  IntMatrix push_t =
      pushforward_chain_matrix(f, down.target_bar().coefficients(), up.target_bar(),
                               down.target_bar(), p - q);

  HomologyData hp_up = up.bar().complex().homology_data(p);
  HomologyData hq_down = down.cobar().complex().cohomology_data(q);
  HomologyData ht_down = down.target_bar().complex().homology_data(p - q);

  CheckReport rep;
  rep.pass = true;
  for (Eigen::Index i = 0; i < hp_up.group().gens(); ++i)
    for (Eigen::Index j = 0; j < hq_down.group().gens(); ++j) {
      IntVector alpha = hp_up.representative(i);
      IntVector beta = hq_down.representative(j);
      IntVector lhs = push_t * up.cap(p, q, alpha, pull(beta));
      IntVector rhs = down.cap(p, q, IntVector(push_f * alpha), beta);
      if (!ht_down.group().same_element(ht_down.class_of(lhs), ht_down.class_of(rhs))) {
        rep.pass = false;
        rep.detail = "projection formula fails on generator pair (" + std::to_string(i) + ", " +
                     std::to_string(j) + ")";
        return rep;
      }
    }
  return rep;
}

CheckReport homotopy_check(const MonotoneMap& f, const MonotoneMap& g, const FgAbGroup& coeff,
                           int max_deg) {
  if (!f.is_monotone() || !g.is_monotone())
    throw std::invalid_argument("homotopy_check: maps must be monotone");
  if (!pointwise_leq(f, g))
    throw std::invalid_argument("homotopy_check: maps must be pointwise comparable");
  auto dst = std::make_shared<const FinitePoset>(*f.dst);
  Sheaf target = constant_sheaf(dst, coeff);
  std::vector<GroupMap> mf = pushforward(f, target, max_deg);
  std::vector<GroupMap> mg = pushforward(g, target, max_deg);
  CheckReport rep;
  rep.pass = true;
  for (int i = 0; i <= max_deg; ++i)
    if (!mf[static_cast<size_t>(i)].equals(mg[static_cast<size_t>(i)])) {
      rep.pass = false;
      rep.detail = "induced maps differ in degree " + std::to_string(i);
      return rep;
    }
  return rep;
}

}  // namespace finsheaf
