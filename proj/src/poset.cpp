#include "finsheaf/poset.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace finsheaf {

namespace {

std::vector<std::vector<char>> reflexive_transitive_closure(int n,
                                                            const std::vector<std::pair<int, int>>& covers) {
  std::vector<std::vector<char>> leq(static_cast<size_t>(n),
                                     std::vector<char>(static_cast<size_t>(n), 0));
  for (int i = 0; i < n; ++i) leq[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
  for (auto [a, b] : covers) leq[static_cast<size_t>(a)][static_cast<size_t>(b)] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (leq[static_cast<size_t>(i)][static_cast<size_t>(k)])
        for (int j = 0; j < n; ++j)
          if (leq[static_cast<size_t>(k)][static_cast<size_t>(j)])
            leq[static_cast<size_t>(i)][static_cast<size_t>(j)] = 1;
  return leq;
}

}  // namespace

std::vector<std::string> validate_poset_data(const std::vector<std::string>& names,
                                             const std::vector<std::pair<int, int>>& covers) {
  std::vector<std::string> report;
  const int n = static_cast<int>(names.size());
  if (n == 0) report.push_back("no elements");
  {
    std::set<std::string> seen;
    for (const auto& nm : names) {
      if (nm.empty()) report.push_back("empty element name");
      if (!seen.insert(nm).second) report.push_back("duplicate element '" + nm + "'");
    }
  }
  std::vector<std::pair<int, int>> usable;
  std::set<std::pair<int, int>> cov_seen;
  for (auto [a, b] : covers) {
    if (a < 0 || b < 0 || a >= n || b >= n) {
      report.push_back("cover references unknown element (" + std::to_string(a) + "," +
                       std::to_string(b) + ")");
      continue;
    }
    const std::string pair = "(" + names[static_cast<size_t>(a)] + "," +
                             names[static_cast<size_t>(b)] + ")";
    if (a == b) {
      report.push_back("self cover " + pair);
      continue;
    }
    if (!cov_seen.insert({a, b}).second) {
      report.push_back("duplicate cover " + pair);
      continue;
    }
    usable.emplace_back(a, b);
  }
  auto leq = reflexive_transitive_closure(n, usable);
  bool cyclic = false;
  for (int i = 0; i < n && !cyclic; ++i)
    for (int j = i + 1; j < n && !cyclic; ++j)
      if (leq[static_cast<size_t>(i)][static_cast<size_t>(j)] &&
          leq[static_cast<size_t>(j)][static_cast<size_t>(i)])
        cyclic = true;
  if (cyclic) {
    report.push_back("cycle");
    return report;  // Hasse test is meaningless on a cyclic relation
  }
  for (auto [a, b] : usable) {
    for (int z = 0; z < n; ++z)
      if (z != a && z != b && leq[static_cast<size_t>(a)][static_cast<size_t>(z)] &&
          leq[static_cast<size_t>(z)][static_cast<size_t>(b)]) {
        report.push_back("non-Hasse edge (" + names[static_cast<size_t>(a)] + "," +
                         names[static_cast<size_t>(b)] + ")");
        break;
      }
  }
  return report;
}

FinitePoset::FinitePoset(std::vector<std::string> names, std::vector<std::pair<int, int>> covers)
    : names_(std::move(names)), covers_(std::move(covers)) {
  auto report = validate_poset_data(names_, covers_);
  if (!report.empty()) {
    std::string msg = "poset:";
    for (const auto& r : report) msg += " " + r + ";";
    throw std::invalid_argument(msg);
  }
  leq_ = reflexive_transitive_closure(size(), covers_);
}

FinitePoset FinitePoset::from_names(std::vector<std::string> names,
                                    const std::vector<std::pair<std::string, std::string>>& covers) {
  std::vector<std::pair<int, int>> idx;
  idx.reserve(covers.size());
  auto find = [&](const std::string& nm) {
    auto it = std::find(names.begin(), names.end(), nm);
    if (it == names.end()) throw std::invalid_argument("poset: unknown element '" + nm + "'");
    return static_cast<int>(it - names.begin());
  };
  for (const auto& [a, b] : covers) idx.emplace_back(find(a), find(b));
  return FinitePoset(std::move(names), std::move(idx));
}

FinitePoset FinitePoset::from_relation(std::vector<std::string> names,
                                       const std::vector<std::pair<int, int>>& pairs) {
  const int n = static_cast<int>(names.size());
  auto leq = reflexive_transitive_closure(n, pairs);
  auto lt = [&](int a, int b) { return a != b && leq[static_cast<size_t>(a)][static_cast<size_t>(b)]; };
  std::vector<std::pair<int, int>> covers;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!lt(a, b)) continue;
      bool cover = true;
      for (int z = 0; z < n && cover; ++z)
        if (z != a && z != b && lt(a, z) && lt(z, b)) cover = false;
      if (cover) covers.emplace_back(a, b);
    }
  return FinitePoset(std::move(names), std::move(covers));
}

int FinitePoset::index(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (names_[static_cast<size_t>(i)] == name) return i;
  throw std::invalid_argument("poset: unknown element '" + name + "'");
}

std::vector<int> FinitePoset::up_set(int x) const {
  std::vector<int> out;
  for (int y = 0; y < size(); ++y)
    if (leq(x, y)) out.push_back(y);
  return out;
}

std::vector<int> FinitePoset::down_set(int x) const {
  std::vector<int> out;
  for (int y = 0; y < size(); ++y)
    if (leq(y, x)) out.push_back(y);
  return out;
}

std::vector<int> FinitePoset::up_closure(const std::vector<int>& s) const {
  std::vector<char> in(static_cast<size_t>(size()), 0);
  for (int x : s)
    for (int y = 0; y < size(); ++y)
      if (leq(x, y)) in[static_cast<size_t>(y)] = 1;
  std::vector<int> out;
  for (int y = 0; y < size(); ++y)
    if (in[static_cast<size_t>(y)]) out.push_back(y);
  return out;
}

std::vector<int> FinitePoset::down_closure(const std::vector<int>& s) const {
  std::vector<char> in(static_cast<size_t>(size()), 0);
  for (int x : s)
    for (int y = 0; y < size(); ++y)
      if (leq(y, x)) in[static_cast<size_t>(y)] = 1;
  std::vector<int> out;
  for (int y = 0; y < size(); ++y)
    if (in[static_cast<size_t>(y)]) out.push_back(y);
  return out;
}

bool FinitePoset::is_up_set(const std::vector<int>& s) const {
  std::vector<char> in(static_cast<size_t>(size()), 0);
  for (int x : s) in.at(static_cast<size_t>(x)) = 1;
  for (int x : s)
    for (int y = 0; y < size(); ++y)
      if (leq(x, y) && !in[static_cast<size_t>(y)]) return false;
  return true;
}

bool FinitePoset::is_down_set(const std::vector<int>& s) const {
  std::vector<char> in(static_cast<size_t>(size()), 0);
  for (int x : s) in.at(static_cast<size_t>(x)) = 1;
  for (int x : s)
    for (int y = 0; y < size(); ++y)
      if (leq(y, x) && !in[static_cast<size_t>(y)]) return false;
  return true;
}

std::vector<std::vector<int>> FinitePoset::components(const std::vector<int>& subset) const {
  std::vector<std::vector<int>> out;
  std::vector<char> done(subset.size(), 0);
  for (size_t i = 0; i < subset.size(); ++i) {
    if (done[i]) continue;
    std::vector<size_t> stack{i};
    std::vector<int> comp;
    done[i] = 1;
    while (!stack.empty()) {
      size_t k = stack.back();
      stack.pop_back();
      comp.push_back(subset[k]);
      for (size_t j = 0; j < subset.size(); ++j)
        if (!done[j] && comparable(subset[k], subset[j])) {
          done[j] = 1;
          stack.push_back(j);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

bool FinitePoset::is_connected(const std::vector<int>& subset) const {
  return components(subset).size() == 1;
}

void FinitePoset::build_chains() const {
  if (chains_done_) return;
  chain_cache_.clear();
  std::vector<std::vector<int>> cur;
  for (int x = 0; x < size(); ++x) cur.push_back({x});
  while (!cur.empty()) {
    chain_cache_.push_back(cur);
    std::vector<std::vector<int>> next;
    for (const auto& c : cur)
      for (int y = 0; y < size(); ++y)
        if (lt(c.back(), y)) {
          auto e = c;
          e.push_back(y);
          next.push_back(std::move(e));
        }
    cur = std::move(next);
  }
  chains_done_ = true;
}

const std::vector<std::vector<int>>& FinitePoset::chains(int n) const {
  build_chains();
  static const std::vector<std::vector<int>> empty;
  if (n < 0 || n >= static_cast<int>(chain_cache_.size())) return empty;
  return chain_cache_[static_cast<size_t>(n)];
}

std::vector<std::vector<int>> FinitePoset::chains_in(const std::vector<int>& subset, int n) const {
  std::vector<std::vector<int>> out;
  if (n < 0) return out;
  std::vector<int> s = subset;
  std::sort(s.begin(), s.end());
  std::vector<std::vector<int>> cur;
  for (int x : s) cur.push_back({x});
  for (int len = 0; len < n; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& c : cur)
      for (int y : s)
        if (lt(c.back(), y)) {
          auto e = c;
          e.push_back(y);
          next.push_back(std::move(e));
        }
    cur = std::move(next);
    if (cur.empty()) break;
  }
  return cur;
}

int FinitePoset::height() const {
  build_chains();
  return static_cast<int>(chain_cache_.size()) - 1;
}

std::vector<int> FinitePoset::maximal_elements() const {
  std::vector<int> out;
  for (int x = 0; x < size(); ++x) {
    bool max = true;
    for (int y = 0; y < size() && max; ++y)
      if (lt(x, y)) max = false;
    if (max) out.push_back(x);
  }
  return out;
}

std::vector<int> FinitePoset::minimal_elements() const {
  std::vector<int> out;
  for (int x = 0; x < size(); ++x) {
    bool min = true;
    for (int y = 0; y < size() && min; ++y)
      if (lt(y, x)) min = false;
    if (min) out.push_back(x);
  }
  return out;
}

FinitePoset FinitePoset::product(const FinitePoset& a, const FinitePoset& b) {
  std::vector<std::string> names;
  names.reserve(static_cast<size_t>(a.size()) * static_cast<size_t>(b.size()));
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j) names.push_back("(" + a.name(i) + "," + b.name(j) + ")");
  std::vector<std::pair<int, int>> covers;
  for (auto [l, u] : a.covers())
    for (int j = 0; j < b.size(); ++j)
      covers.emplace_back(product_index(b, l, j), product_index(b, u, j));
  for (int i = 0; i < a.size(); ++i)
    for (auto [l, u] : b.covers())
      covers.emplace_back(product_index(b, i, l), product_index(b, i, u));
  return FinitePoset(std::move(names), std::move(covers));
}

FinitePoset FinitePoset::induced_subposet(const std::vector<int>& subset) const {
  std::vector<std::string> names;
  for (int x : subset) names.push_back(name(x));
  const int m = static_cast<int>(subset.size());
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (!lt(subset[static_cast<size_t>(i)], subset[static_cast<size_t>(j)])) continue;
      bool cover = true;
      for (int k = 0; k < m && cover; ++k)
        if (k != i && k != j && lt(subset[static_cast<size_t>(i)], subset[static_cast<size_t>(k)]) &&
            lt(subset[static_cast<size_t>(k)], subset[static_cast<size_t>(j)]))
          cover = false;
      if (cover) covers.emplace_back(i, j);
    }
  return FinitePoset(std::move(names), std::move(covers));
}

bool MonotoneMap::is_monotone() const {
  if (!src || !dst || image.size() != static_cast<size_t>(src->size())) return false;
  for (int v : image)
    if (v < 0 || v >= dst->size()) return false;
  for (auto [a, b] : src->covers())
    if (!dst->leq(image[static_cast<size_t>(a)], image[static_cast<size_t>(b)])) return false;
  return true;
}

MonotoneMap MonotoneMap::from_names(const FinitePoset& s, const FinitePoset& d,
                                    const std::vector<std::pair<std::string, std::string>>& pairs) {
  MonotoneMap m;
  m.src = &s;
  m.dst = &d;
  m.image.assign(static_cast<size_t>(s.size()), -1);
  for (const auto& [a, b] : pairs) m.image[static_cast<size_t>(s.index(a))] = d.index(b);
  for (int v : m.image)
    if (v < 0) throw std::invalid_argument("monotone map: incomplete element assignment");
  return m;
}

bool pointwise_leq(const MonotoneMap& f, const MonotoneMap& g) {
  if (f.src != g.src || f.dst != g.dst) return false;
  for (int x = 0; x < f.src->size(); ++x)
    if (!f.dst->leq(f(x), g(x))) return false;
  return true;
}

}  // namespace finsheaf
