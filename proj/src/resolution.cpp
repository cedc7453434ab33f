#include <stdexcept>
#include <utility>

#include "finsheaf/homology.hpp"

namespace finsheaf {

Sheaf tagged_sum_sheaf(PosetPtr space, const TermTags& tags) {
  const FinitePoset& p = *space;
  auto rank_at = [&](int y) {
    Eigen::Index r = 0;
    for (const auto& [x, j] : tags)
      if (p.leq(x, y)) ++r;
    return r;
  };
  std::vector<FgAbGroup> stalks;
  for (int y = 0; y < p.size(); ++y) stalks.push_back(FgAbGroup::free_group(rank_at(y)));
  std::vector<IntMatrix> maps;
  for (auto [a, b] : p.covers()) {
    IntMatrix m = IntMatrix::Zero(stalks[static_cast<size_t>(b)].gens(),
                                  stalks[static_cast<size_t>(a)].gens());
    Eigen::Index pa = 0, pb = 0;
    for (const auto& [x, j] : tags) {
      bool below_a = p.leq(x, a), below_b = p.leq(x, b);
      if (below_a) m(pb, pa) = 1;  // a <= b, so every tag below a is below b
      if (below_a) ++pa;
      if (below_b) ++pb;
    }
    maps.push_back(std::move(m));
  }
  return Sheaf(std::move(space), std::move(stalks), std::move(maps));
}

namespace {

// Coordinates over the tags below y, in tag order.
std::vector<Eigen::Index> tag_slots(const FinitePoset& p, const TermTags& tags, int y) {
  std::vector<Eigen::Index> out;
  for (size_t t = 0; t < tags.size(); ++t)
    if (p.leq(tags[t].first, y)) out.push_back(static_cast<Eigen::Index>(t));
  return out;
}

}  // namespace

const IntMatrix& Resolution::component(int k, int x) const {
  return comps_[static_cast<size_t>(k)][static_cast<size_t>(x)];
}

SheafMorphism Resolution::diff(int k) const {
  return SheafMorphism{&terms_[static_cast<size_t>(k)], &terms_[static_cast<size_t>(k - 1)],
                       comps_[static_cast<size_t>(k)]};
}

SheafMorphism Resolution::augmentation() const {
  return SheafMorphism{&terms_[0], &base_, comps_[0]};
}

const IntMatrix& Resolution::colim_matrix(int k) const {
  return colim_[static_cast<size_t>(k - 1)];
}

ChainComplex Resolution::colim_complex() const {
  std::vector<Eigen::Index> ranks;
  for (const auto& t : tags_) ranks.push_back(static_cast<Eigen::Index>(t.size()));
  return ChainComplex::from_free(0, ranks, colim_);
}

Resolution standard_resolution(const Sheaf& f, int length) {
  if (length < 0) throw std::invalid_argument("standard_resolution: negative length");
  Resolution res;
  res.base_ = f;
  const FinitePoset& p = f.space();
  PosetPtr space = f.space_ptr();

  TermTags tags0;
  for (int x = 0; x < p.size(); ++x)
    for (Eigen::Index j = 0; j < f.stalk(x).gens(); ++j) tags0.push_back({x, j});
  res.tags_.push_back(tags0);
  res.terms_.push_back(tagged_sum_sheaf(space, tags0));

  // augmentation: the (x, j) summand lands in the stalk at z through rho(x, z)
  std::vector<IntMatrix> aug;
  for (int z = 0; z < p.size(); ++z) {
    auto slots = tag_slots(p, tags0, z);
    IntMatrix m(f.stalk(z).gens(), static_cast<Eigen::Index>(slots.size()));
    for (size_t c = 0; c < slots.size(); ++c) {
      const auto& [x, j] = tags0[static_cast<size_t>(slots[c])];
      m.col(static_cast<Eigen::Index>(c)) = f.rho_matrix(x, z).col(j);
    }
    aug.push_back(std::move(m));
  }
  res.comps_.push_back(std::move(aug));

  // stalkwise kernel lattices of the last differential
  std::vector<IntMatrix> kernels;
  for (int z = 0; z < p.size(); ++z)
    kernels.push_back(preimage_lattice(res.comps_[0][static_cast<size_t>(z)], f.stalk(z).rels()));

  for (int k = 1; k <= length; ++k) {
    TermTags tags;
    for (int y = 0; y < p.size(); ++y)
      for (Eigen::Index j = 0; j < kernels[static_cast<size_t>(y)].cols(); ++j)
        tags.push_back({y, j});
    const TermTags& prev_tags = res.tags_.back();
    const Sheaf prev = res.terms_.back();  // copy: the vector may reallocate
    res.terms_.push_back(tagged_sum_sheaf(space, tags));

    std::vector<IntMatrix> comps;
    for (int z = 0; z < p.size(); ++z) {
      auto slots = tag_slots(p, tags, z);
      IntMatrix m(prev.stalk(z).gens(), static_cast<Eigen::Index>(slots.size()));
      for (size_t c = 0; c < slots.size(); ++c) {
        const auto& [y, j] = tags[static_cast<size_t>(slots[c])];
        m.col(static_cast<Eigen::Index>(c)) =
            prev.rho_matrix(y, z) * kernels[static_cast<size_t>(y)].col(j);
      }
      comps.push_back(std::move(m));
    }

    IntMatrix l = IntMatrix::Zero(static_cast<Eigen::Index>(prev_tags.size()),
                                  static_cast<Eigen::Index>(tags.size()));
    for (size_t c = 0; c < tags.size(); ++c) {
      const auto& [y, j] = tags[c];
      auto below = tag_slots(p, prev_tags, y);
      for (size_t t = 0; t < below.size(); ++t)
        l(below[t], static_cast<Eigen::Index>(c)) =
            kernels[static_cast<size_t>(y)](static_cast<Eigen::Index>(t), j);
    }

    std::vector<IntMatrix> next;
    for (int z = 0; z < p.size(); ++z) next.push_back(kernel_basis(comps[static_cast<size_t>(z)]));
    kernels = std::move(next);

    res.tags_.push_back(std::move(tags));
    res.comps_.push_back(std::move(comps));
    res.colim_.push_back(std::move(l));
  }
  return res;
}

FgAbGroup cosections(const Sheaf& f) {
  const FinitePoset& p = f.space();
  Diagram d;
  d.objects = f.stalks();
  for (size_t k = 0; k < p.covers().size(); ++k) {
    auto [a, b] = p.covers()[k];
    d.edges.push_back({a, b, f.cover_matrix(static_cast<int>(k))});
  }
  return colimit(std::move(d)).group;
}

std::vector<FgAbGroup> homology(const Sheaf& f, int max_deg) {
  if (max_deg < 0) throw std::invalid_argument("homology: negative degree");
  Resolution res = standard_resolution(f, max_deg + 2);
  ChainComplex cx = res.colim_complex();
  std::vector<FgAbGroup> out;
  for (int i = 0; i <= max_deg; ++i) out.push_back(cx.homology_at(i));
  return out;
}

std::vector<FgAbGroup> local_homology(const Sheaf& f, const std::vector<int>& y, int max_deg) {
  return homology(closed_restriction(f.space_ptr(), y, f), max_deg);
}

}  // namespace finsheaf
