#include "finsheaf/complex.hpp"

#include <stdexcept>

namespace finsheaf {

const FgAbGroup ChainComplex::trivial_{};
const FgAbGroup CochainComplex::trivial_{};

HomologyData::HomologyData(FgAbGroup h, IntMatrix cycle_gens)
    : h_(std::move(h)),
      cycle_gens_(std::move(cycle_gens)),
      solver_(std::make_shared<IntSolver>(cycle_gens_)) {}

IntVector HomologyData::class_of(const IntVector& cycle) const {
  auto c = solver_->solve(cycle);
  if (!c) throw std::invalid_argument("class_of: vector is not a cycle");
  return *c;
}

bool HomologyData::is_zero_class(const IntVector& cycle) const {
  return h_.is_zero_element(class_of(cycle));
}

HomologyData pair_homology_data(const GroupMap& f, const GroupMap& g) {
  if (f.dst().gens() != g.src().gens())
    throw std::invalid_argument("pair_homology_data: maps are not composable");
  IntMatrix P = preimage_lattice(g.matrix(), g.dst().rels());
  IntMatrix Q = hcat(f.matrix(), g.src().rels());
  return HomologyData(subquotient(P, Q), P);
}

ChainComplex::ChainComplex(int lo, std::vector<FgAbGroup> terms, std::vector<GroupMap> diffs)
    : lo_(lo), terms_(std::move(terms)), diffs_(std::move(diffs)) {
  size_t want = terms_.size() < 2 ? 0 : terms_.size() - 1;
  if (diffs_.size() != want)
    throw std::invalid_argument("ChainComplex: differential count mismatch");
  for (size_t i = 0; i < diffs_.size(); ++i)
    if (diffs_[i].src().gens() != terms_[i + 1].gens() ||
        diffs_[i].dst().gens() != terms_[i].gens())
      throw std::invalid_argument("ChainComplex: differential shape mismatch");
}

ChainComplex ChainComplex::from_free(int lo, const std::vector<Eigen::Index>& ranks,
                                     const std::vector<IntMatrix>& diffs) {
  std::vector<FgAbGroup> terms;
  terms.reserve(ranks.size());
  for (auto r : ranks) terms.push_back(FgAbGroup::free_group(r));
  std::vector<GroupMap> maps;
  for (size_t i = 0; i + 1 < ranks.size(); ++i)
    maps.emplace_back(terms[i + 1], terms[i], diffs[i]);
  return ChainComplex(lo, std::move(terms), std::move(maps));
}

const FgAbGroup& ChainComplex::term(int n) const {
  if (!in_range(n)) return trivial_;
  return terms_[static_cast<size_t>(n - lo_)];
}

GroupMap ChainComplex::diff_out_of(int n) const {
  if (n - 1 >= lo() && n <= hi() && !diffs_.empty() && n > lo())
    return diffs_[static_cast<size_t>(n - 1 - lo_)];
  return GroupMap::zero(term(n), term(n - 1));
}

bool ChainComplex::differentials_compose_to_zero() const {
  for (int n = lo() + 2; n <= hi(); ++n)
    if (!diff_out_of(n - 1).compose_after(diff_out_of(n)).is_zero_map()) return false;
  return true;
}

bool ChainComplex::differentials_valid() const {
  for (const auto& d : diffs_)
    if (!d.is_valid()) return false;
  return true;
}

FgAbGroup ChainComplex::homology_at(int n) const { return homology_data(n).group(); }

HomologyData ChainComplex::homology_data(int n) const {
  return pair_homology_data(diff_out_of(n + 1), diff_out_of(n));
}

FgAbGroup complex_homology(const ChainComplex& c, int n) { return c.homology_at(n); }

CochainComplex::CochainComplex(int lo, std::vector<FgAbGroup> terms, std::vector<GroupMap> diffs)
    : lo_(lo), terms_(std::move(terms)), diffs_(std::move(diffs)) {
  size_t want = terms_.size() < 2 ? 0 : terms_.size() - 1;
  if (diffs_.size() != want)
    throw std::invalid_argument("CochainComplex: differential count mismatch");
  for (size_t i = 0; i < diffs_.size(); ++i)
    if (diffs_[i].src().gens() != terms_[i].gens() ||
        diffs_[i].dst().gens() != terms_[i + 1].gens())
      throw std::invalid_argument("CochainComplex: differential shape mismatch");
}

const FgAbGroup& CochainComplex::term(int n) const {
  if (n < lo() || n > hi()) return trivial_;
  return terms_[static_cast<size_t>(n - lo_)];
}

GroupMap CochainComplex::diff_at(int n) const {
  if (n >= lo() && n + 1 <= hi()) return diffs_[static_cast<size_t>(n - lo_)];
  return GroupMap::zero(term(n), term(n + 1));
}

bool CochainComplex::differentials_compose_to_zero() const {
  for (int n = lo(); n + 2 <= hi(); ++n)
    if (!diff_at(n + 1).compose_after(diff_at(n)).is_zero_map()) return false;
  return true;
}

FgAbGroup CochainComplex::cohomology_at(int n) const { return cohomology_data(n).group(); }

HomologyData CochainComplex::cohomology_data(int n) const {
  return pair_homology_data(diff_at(n - 1), diff_at(n));
}

GroupMap induced_map(const HomologyData& src, const HomologyData& dst, const IntMatrix& f) {
  IntMatrix m(dst.group().gens(), src.group().gens());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    m.col(j) = dst.class_of(IntVector(f * src.representative(j)));
  return GroupMap(src.group(), dst.group(), std::move(m));
}

}  // namespace finsheaf
