#include <algorithm>
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

// Direct sum of the coefficient groups of a chain list; pick(i) selects the
// carrier element of chain i.
template <typename Pick>
FgAbGroup block_group(const Sheaf& f, const std::vector<std::vector<int>>& list,
                      Pick pick) {
  Eigen::Index gens = 0, relcols = 0;
  for (size_t i = 0; i < list.size(); ++i) {
    const FgAbGroup& g = f.stalk(pick(static_cast<int>(i)));
    gens += g.gens();
    relcols += g.rels().cols();
  }
  IntMatrix rels = IntMatrix::Zero(gens, relcols);
  Eigen::Index r = 0, c = 0;
  for (size_t i = 0; i < list.size(); ++i) {
    const FgAbGroup& g = f.stalk(pick(static_cast<int>(i)));
    rels.block(r, c, g.gens(), g.rels().cols()) = g.rels();
    r += g.gens();
    c += g.rels().cols();
  }
  return FgAbGroup(gens, std::move(rels));
}

int find_chain(const std::vector<std::vector<int>>& list, const std::vector<int>& c) {
  auto it = std::lower_bound(list.begin(), list.end(), c);
  if (it == list.end() || *it != c) return -1;
  return static_cast<int>(it - list.begin());
}

static const std::vector<std::vector<int>> kNoChains;

}  // namespace

BarComplex::BarComplex(Sheaf f, std::vector<int> support, int max_deg)
    : f_(std::move(f)), support_(std::move(support)) {
  const FinitePoset& p = f_.space();
  for (int n = 0; n <= max_deg; ++n) {
    auto cs = p.chains_in(support_, n);
    if (cs.empty()) break;
    lists_.push_back(std::move(cs));
  }
  std::vector<FgAbGroup> terms;
  for (const auto& list : lists_) {
    std::vector<Eigen::Index> offs;
    Eigen::Index off = 0;
    for (const auto& c : list) {
      offs.push_back(off);
      off += f_.stalk(c.front()).gens();
    }
    offsets_.push_back(std::move(offs));
    terms.push_back(block_group(f_, list, [&](int i) { return list[static_cast<size_t>(i)].front(); }));
  }
  std::vector<GroupMap> diffs;
  for (int n = 1; n <= top(); ++n) {
    const auto& src = lists_[static_cast<size_t>(n)];
    IntMatrix d = IntMatrix::Zero(terms[static_cast<size_t>(n - 1)].gens(),
                                  terms[static_cast<size_t>(n)].gens());
    for (size_t i = 0; i < src.size(); ++i) {
      const auto& c = src[i];
      Eigen::Index col = offsets_[static_cast<size_t>(n)][i];
      Eigen::Index g = f_.stalk(c.front()).gens();
      for (int k = 0; k <= n; ++k) {
        std::vector<int> face = c;
        face.erase(face.begin() + k);
        int j = find_chain(lists_[static_cast<size_t>(n - 1)], face);
        Eigen::Index row = offsets_[static_cast<size_t>(n - 1)][static_cast<size_t>(j)];
        if (k == 0) {
          const IntMatrix& rho = f_.rho_matrix(c[0], c[1]);
          d.block(row, col, rho.rows(), g) += rho;
        } else {
          Int s = (k % 2 == 0) ? 1 : -1;
          for (Eigen::Index t = 0; t < g; ++t) d(row + t, col + t) += s;
        }
      }
    }
    diffs.push_back(GroupMap(terms[static_cast<size_t>(n)], terms[static_cast<size_t>(n - 1)],
                             std::move(d)));
  }
  cx_ = ChainComplex(0, std::move(terms), std::move(diffs));
}

const std::vector<std::vector<int>>& BarComplex::chain_list(int n) const {
  if (n < 0 || n > top()) return kNoChains;
  return lists_[static_cast<size_t>(n)];
}

Eigen::Index BarComplex::block_offset(int n, int i) const {
  return offsets_[static_cast<size_t>(n)][static_cast<size_t>(i)];
}

int BarComplex::chain_position(int n, const std::vector<int>& chain) const {
  if (n < 0 || n > top()) return -1;
  return find_chain(lists_[static_cast<size_t>(n)], chain);
}

CobarComplex::CobarComplex(Sheaf f, std::vector<int> support, int max_deg)
    : f_(std::move(f)), support_(std::move(support)) {
  const FinitePoset& p = f_.space();
  for (int n = 0; n <= max_deg; ++n) {
    auto cs = p.chains_in(support_, n);
    if (cs.empty()) break;
    lists_.push_back(std::move(cs));
  }
  std::vector<FgAbGroup> terms;
  for (const auto& list : lists_) {
    std::vector<Eigen::Index> offs;
    Eigen::Index off = 0;
    for (const auto& c : list) {
      offs.push_back(off);
      off += f_.stalk(c.back()).gens();
    }
    offsets_.push_back(std::move(offs));
    terms.push_back(block_group(f_, list, [&](int i) { return list[static_cast<size_t>(i)].back(); }));
  }
  std::vector<GroupMap> diffs;
  for (int n = 0; n + 1 <= top(); ++n) {
    const auto& tgt = lists_[static_cast<size_t>(n + 1)];
    IntMatrix d = IntMatrix::Zero(terms[static_cast<size_t>(n + 1)].gens(),
                                  terms[static_cast<size_t>(n)].gens());
    for (size_t i = 0; i < tgt.size(); ++i) {
      const auto& c = tgt[i];
      Eigen::Index row = offsets_[static_cast<size_t>(n + 1)][i];
      Eigen::Index g = f_.stalk(c.back()).gens();
      for (int k = 0; k <= n + 1; ++k) {
        std::vector<int> face = c;
        face.erase(face.begin() + k);
        int j = find_chain(lists_[static_cast<size_t>(n)], face);
        Eigen::Index col = offsets_[static_cast<size_t>(n)][static_cast<size_t>(j)];
        Int s = (k % 2 == 0) ? 1 : -1;
        if (k == n + 1) {
          const IntMatrix& rho = f_.rho_matrix(c[static_cast<size_t>(n)], c[static_cast<size_t>(n + 1)]);
          d.block(row, col, g, rho.cols()) += s * rho;
        } else {
          for (Eigen::Index t = 0; t < g; ++t) d(row + t, col + t) += s;
        }
      }
    }
    diffs.push_back(GroupMap(terms[static_cast<size_t>(n)], terms[static_cast<size_t>(n + 1)],
                             std::move(d)));
  }
  cx_ = CochainComplex(0, std::move(terms), std::move(diffs));
}

const std::vector<std::vector<int>>& CobarComplex::chain_list(int n) const {
  if (n < 0 || n > top()) return kNoChains;
  return lists_[static_cast<size_t>(n)];
}

Eigen::Index CobarComplex::block_offset(int n, int i) const {
  return offsets_[static_cast<size_t>(n)][static_cast<size_t>(i)];
}

int CobarComplex::chain_position(int n, const std::vector<int>& chain) const {
  if (n < 0 || n > top()) return -1;
  return find_chain(lists_[static_cast<size_t>(n)], chain);
}

IntMatrix bar_morphism_matrix(const SheafMorphism& m, const BarComplex& src,
                              const BarComplex& dst, int n) {
  IntMatrix out = IntMatrix::Zero(dst.complex().term(n).gens(), src.complex().term(n).gens());
  const auto& list = src.chain_list(n);
  for (size_t i = 0; i < list.size(); ++i) {
    int x = list[i].front();
    const IntMatrix& comp = m.components[static_cast<size_t>(x)];
    int j = dst.chain_position(n, list[i]);
    out.block(dst.block_offset(n, j), src.block_offset(n, static_cast<int>(i)), comp.rows(),
              comp.cols()) = comp;
  }
  return out;
}

IntMatrix cobar_morphism_matrix(const SheafMorphism& m, const CobarComplex& src,
                                const CobarComplex& dst, int n) {
  IntMatrix out = IntMatrix::Zero(dst.complex().term(n).gens(), src.complex().term(n).gens());
  const auto& list = src.chain_list(n);
  for (size_t i = 0; i < list.size(); ++i) {
    int x = list[i].back();
    const IntMatrix& comp = m.components[static_cast<size_t>(x)];
    int j = dst.chain_position(n, list[i]);
    out.block(dst.block_offset(n, j), src.block_offset(n, static_cast<int>(i)), comp.rows(),
              comp.cols()) = comp;
  }
  return out;
}

IntMatrix bar_inclusion_matrix(const BarComplex& src, const BarComplex& dst, int n) {
  IntMatrix out = IntMatrix::Zero(dst.complex().term(n).gens(), src.complex().term(n).gens());
  const auto& list = src.chain_list(n);
  for (size_t i = 0; i < list.size(); ++i) {
    int j = dst.chain_position(n, list[i]);
    if (j < 0) throw std::invalid_argument("bar_inclusion_matrix: chain missing from target");
    Eigen::Index g = src.coefficients().stalk(list[i].front()).gens();
    for (Eigen::Index t = 0; t < g; ++t)
      out(dst.block_offset(n, j) + t, src.block_offset(n, static_cast<int>(i)) + t) = 1;
  }
  return out;
}

std::vector<FgAbGroup> bar_homology(const Sheaf& f, int max_deg) {
  BarComplex b(f, all_elements(f.space()), max_deg + 1);
  std::vector<FgAbGroup> out;
  for (int i = 0; i <= max_deg; ++i) out.push_back(b.complex().homology_at(i));
  return out;
}

std::vector<FgAbGroup> cohomology(const Sheaf& f, int max_deg) {
  CobarComplex c(f, all_elements(f.space()), max_deg + 1);
  std::vector<FgAbGroup> out;
  for (int i = 0; i <= max_deg; ++i) out.push_back(c.complex().cohomology_at(i));
  return out;
}

ChainComplex bar_total(const SheafComplex& c) {
  if (c.terms.empty()) return ChainComplex();
  int height = c.terms.front().space().height();
  std::vector<BarComplex> columns;
  std::vector<int> elems = all_elements(c.terms.front().space());
  for (const Sheaf& t : c.terms) columns.emplace_back(t, elems, height);
  int lo = c.lo;
  int hi = c.hi() + height;
  auto column_term = [&](int m, int k) -> const FgAbGroup& {
    return columns[static_cast<size_t>(m - c.lo)].complex().term(k);
  };
  std::vector<FgAbGroup> terms;
  std::vector<std::vector<Eigen::Index>> offs;  // per total degree, per m
  for (int n = lo; n <= hi; ++n) {
    Eigen::Index gens = 0, relc = 0;
    std::vector<Eigen::Index> o;
    for (int m = c.lo; m <= c.hi(); ++m) {
      o.push_back(gens);
      const FgAbGroup& g = column_term(m, n - m);
      gens += g.gens();
      relc += g.rels().cols();
    }
    IntMatrix rels = IntMatrix::Zero(gens, relc);
    Eigen::Index r = 0, cc = 0;
    for (int m = c.lo; m <= c.hi(); ++m) {
      const FgAbGroup& g = column_term(m, n - m);
      rels.block(r, cc, g.gens(), g.rels().cols()) = g.rels();
      r += g.gens();
      cc += g.rels().cols();
    }
    offs.push_back(std::move(o));
    terms.push_back(FgAbGroup(gens, std::move(rels)));
  }
  std::vector<GroupMap> diffs;
  for (int n = lo + 1; n <= hi; ++n) {
    IntMatrix d = IntMatrix::Zero(terms[static_cast<size_t>(n - 1 - lo)].gens(),
                                  terms[static_cast<size_t>(n - lo)].gens());
    for (int m = c.lo; m <= c.hi(); ++m) {
      int k = n - m;
      size_t col_ix = static_cast<size_t>(m - c.lo);
      const BarComplex& col = columns[col_ix];
      Eigen::Index srcoff = offs[static_cast<size_t>(n - lo)][col_ix];
      if (column_term(m, k).gens() == 0) continue;
      // vertical boundary within the column
      if (k >= 1 && k <= col.top()) {
        const IntMatrix v = col.complex().diff_out_of(k).matrix();
        d.block(offs[static_cast<size_t>(n - 1 - lo)][col_ix], srcoff, v.rows(), v.cols()) += v;
      }
      // coefficient map into the next column, sign (-1)^k
      if (m > c.lo) {
        const SheafMorphism& phi = c.diffs[static_cast<size_t>(m - 1 - c.lo)];
        IntMatrix h = bar_morphism_matrix(phi, col, columns[col_ix - 1], k);
        if (k % 2 != 0) h = -h;
        d.block(offs[static_cast<size_t>(n - 1 - lo)][col_ix - 1], srcoff, h.rows(), h.cols()) += h;
      }
    }
    diffs.push_back(GroupMap(terms[static_cast<size_t>(n - lo)],
                             terms[static_cast<size_t>(n - 1 - lo)], std::move(d)));
  }
  return ChainComplex(lo, std::move(terms), std::move(diffs));
}

CochainComplex cobar_total(const SheafComplex& c) {
  if (c.terms.empty()) return CochainComplex();
  int height = c.terms.front().space().height();
  std::vector<CobarComplex> columns;
  std::vector<int> elems = all_elements(c.terms.front().space());
  for (const Sheaf& t : c.terms) columns.emplace_back(t, elems, height);
  // total degree n collects level r = n + m cochains of the degree-m term
  int lo = -c.hi();
  int hi = height - c.lo;
  auto column_term = [&](int m, int r) -> const FgAbGroup& {
    return columns[static_cast<size_t>(m - c.lo)].complex().term(r);
  };
  std::vector<FgAbGroup> terms;
  std::vector<std::vector<Eigen::Index>> offs;
  for (int n = lo; n <= hi; ++n) {
    Eigen::Index gens = 0, relc = 0;
    std::vector<Eigen::Index> o;
    for (int m = c.lo; m <= c.hi(); ++m) {
      o.push_back(gens);
      const FgAbGroup& g = column_term(m, n + m);
      gens += g.gens();
      relc += g.rels().cols();
    }
    IntMatrix rels = IntMatrix::Zero(gens, relc);
    Eigen::Index r = 0, cc = 0;
    for (int m = c.lo; m <= c.hi(); ++m) {
      const FgAbGroup& g = column_term(m, n + m);
      rels.block(r, cc, g.gens(), g.rels().cols()) = g.rels();
      r += g.gens();
      cc += g.rels().cols();
    }
    offs.push_back(std::move(o));
    terms.push_back(FgAbGroup(gens, std::move(rels)));
  }
  std::vector<GroupMap> diffs;
  for (int n = lo; n < hi; ++n) {
    IntMatrix d = IntMatrix::Zero(terms[static_cast<size_t>(n + 1 - lo)].gens(),
                                  terms[static_cast<size_t>(n - lo)].gens());
    for (int m = c.lo; m <= c.hi(); ++m) {
      int r = n + m;
      size_t col_ix = static_cast<size_t>(m - c.lo);
      const CobarComplex& col = columns[col_ix];
      Eigen::Index srcoff = offs[static_cast<size_t>(n - lo)][col_ix];
      if (column_term(m, r).gens() == 0) continue;
      // cochain step within the column
      if (r >= 0 && r < col.top()) {
        const IntMatrix v = col.complex().diff_at(r).matrix();
        d.block(offs[static_cast<size_t>(n + 1 - lo)][col_ix], srcoff, v.rows(), v.cols()) += v;
      }
      // coefficient map into the previous homological degree, sign (-1)^r
      if (m > c.lo) {
        const SheafMorphism& phi = c.diffs[static_cast<size_t>(m - 1 - c.lo)];
        IntMatrix h = cobar_morphism_matrix(phi, col, columns[col_ix - 1], r);
        if (r % 2 != 0) h = -h;
        d.block(offs[static_cast<size_t>(n + 1 - lo)][col_ix - 1], srcoff, h.rows(), h.cols()) += h;
      }
    }
    diffs.push_back(GroupMap(terms[static_cast<size_t>(n - lo)],
                             terms[static_cast<size_t>(n + 1 - lo)], std::move(d)));
  }
  return CochainComplex(lo, std::move(terms), std::move(diffs));
}

std::vector<FgAbGroup> homology(const SheafComplex& c, int max_deg) {
  ChainComplex t = bar_total(c);
  std::vector<FgAbGroup> out;
  for (int i = 0; i <= max_deg; ++i) out.push_back(t.homology_at(i));
  return out;
}

std::vector<FgAbGroup> cohomology(const SheafComplex& c, int max_deg) {
  CochainComplex t = cobar_total(c);
  std::vector<FgAbGroup> out;
  for (int i = 0; i <= max_deg; ++i) out.push_back(t.cohomology_at(i));
  return out;
}

IntMatrix pushforward_chain_matrix(const MonotoneMap& f, const Sheaf& g,
                                   const BarComplex& src, const BarComplex& dst, int n) {
  IntMatrix out = IntMatrix::Zero(dst.complex().term(n).gens(), src.complex().term(n).gens());
  const auto& list = src.chain_list(n);
  for (size_t i = 0; i < list.size(); ++i) {
    std::vector<int> image;
    image.reserve(list[i].size());
    for (int x : list[i]) image.push_back(f(x));
    bool strict = true;
    for (size_t t = 0; t + 1 < image.size(); ++t)
      if (image[t] == image[t + 1]) strict = false;
    if (!strict) continue;
    int j = dst.chain_position(n, image);
    Eigen::Index sz = g.stalk(image.front()).gens();
    for (Eigen::Index t = 0; t < sz; ++t)
      out(dst.block_offset(n, j) + t, src.block_offset(n, static_cast<int>(i)) + t) = 1;
  }
  return out;
}

std::vector<GroupMap> pushforward(const MonotoneMap& f, const Sheaf& g, int max_deg) {
  if (!f.is_monotone()) throw std::invalid_argument("pushforward: map is not monotone");
  Sheaf fg = inverse_image(f, g);
  BarComplex src(fg, all_elements(fg.space()), max_deg + 1);
  BarComplex dst(g, all_elements(g.space()), max_deg + 1);
  std::vector<GroupMap> out;
  for (int i = 0; i <= max_deg; ++i) {
    IntMatrix m = pushforward_chain_matrix(f, g, src, dst, i);
    out.push_back(induced_map(src.complex().homology_data(i), dst.complex().homology_data(i), m));
  }
  return out;
}

}  // namespace finsheaf
