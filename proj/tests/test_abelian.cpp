#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "finsheaf/abelian.hpp"
#include "test_util.hpp"

using namespace finsheaf;
using namespace testutil;

namespace {

// All matrices defining homomorphisms src -> dst between finite groups in
// canonical presentation, by exhaustive entry enumeration.
std::vector<IntMatrix> all_homs(const FgAbGroup& src, const FgAbGroup& dst) {
  std::vector<IntMatrix> out;
  Eigen::Index rows = dst.gens(), cols = src.gens();
  std::vector<long> bound(static_cast<size_t>(rows));
  for (Eigen::Index i = 0; i < rows; ++i)
    bound[static_cast<size_t>(i)] = to_long(dst.invariant_factors()[static_cast<size_t>(i)]);
  std::vector<long> digits(static_cast<size_t>(rows * cols), 0);
  while (true) {
    IntMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j)
        m(i, j) = digits[static_cast<size_t>(i * cols + j)];
    GroupMap f(src, dst, m);
    if (f.is_valid()) out.push_back(m);
    Eigen::Index k = 0;
    for (; k < rows * cols; ++k) {
      auto& d = digits[static_cast<size_t>(k)];
      if (++d < bound[static_cast<size_t>(k / cols)]) break;
      d = 0;
    }
    if (k == rows * cols) break;
  }
  return out;
}

long order_of(const FgAbGroup& g) {
  REQUIRE(g.rank() == 0);
  return to_long(g.torsion_order());
}

}  // namespace

TEST_CASE("normal form of the 2-generator reference presentation") {
  FgAbGroup g = normalize(2, from_rows({{2, 0}, {0, 0}}));
  CHECK(g.rank() == 1);
  CHECK(invariants_of(g) == "Z^1 2");
}

TEST_CASE("normal form basics") {
  CHECK(FgAbGroup().is_trivial());
  CHECK(FgAbGroup::free_group(3).rank() == 3);
  CHECK(FgAbGroup::free_group(3).is_free());
  CHECK(invariants_of(FgAbGroup::cyclic(12)) == "Z^0 12");
  CHECK(invariants_of(FgAbGroup::cyclic(0)) == "Z^1");
  CHECK(FgAbGroup::cyclic(1).is_trivial());
  CHECK(invariants_of(FgAbGroup::from_invariants(2, {2, 6})) == "Z^2 2 6");

  // Z/6 + Z/4 has invariant factors 2, 12
  FgAbGroup s = direct_sum(FgAbGroup::cyclic(6), FgAbGroup::cyclic(4));
  CHECK(invariants_of(s) == "Z^0 2 12");
  CHECK(s.torsion_order() == 24);

  // unit relations kill generators
  CHECK(normalize(2, from_rows({{1, 0}, {0, 1}})).is_trivial());
}

TEST_CASE("normal form is invariant under presentation changes") {
  std::mt19937 rng(101);
  for (int trial = 0; trial < 25; ++trial) {
    Eigen::Index g = 1 + static_cast<Eigen::Index>(rng() % 4);
    Eigen::Index r = static_cast<Eigen::Index>(rng() % 5);
    IntMatrix rels = random_matrix(rng, g, r, -6, 6);
    FgAbGroup base = normalize(g, rels);

    // generator change by a unimodular matrix
    IntMatrix a = random_unimodular(rng, g);
    CHECK(base.same_invariants(normalize(g, IntMatrix(a * rels))));

    // relation mixing, duplicated and zero relations
    IntMatrix b = random_unimodular(rng, r);
    IntMatrix mixed = hcat(IntMatrix(rels * b), hcat(rels.leftCols(r), zeros(g, 2)));
    CHECK(base.same_invariants(normalize(g, mixed)));
  }
}

TEST_CASE("canonical coordinates round-trip") {
  std::mt19937 rng(55);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::Index g = 1 + static_cast<Eigen::Index>(rng() % 4);
    IntMatrix rels = random_matrix(rng, g, static_cast<Eigen::Index>(rng() % 4), -8, 8);
    FgAbGroup grp = normalize(g, rels);
    for (Eigen::Index j = 0; j < grp.canonical_gens(); ++j) {
      IntVector c = grp.canonical_coords(grp.canonical_lift(j));
      for (Eigen::Index i = 0; i < c.size(); ++i) CHECK(c(i) == (i == j ? 1 : 0));
    }
    // relations are the zero element
    for (Eigen::Index j = 0; j < rels.cols(); ++j)
      CHECK(grp.is_zero_element(IntVector(rels.col(j))));
  }

  FgAbGroup g26 = FgAbGroup::from_invariants(1, {2, 6});
  // free coordinate first, torsion reduced into [0, d)
  IntVector v = from_entries({-3, 5, -5});
  IntVector c = g26.canonical_coords(v);
  CHECK(c(0) == -3);
  CHECK(c(1) == 1);
  CHECK(c(2) == 1);
  CHECK(g26.canonical_modulus(0) == 0);
  CHECK(g26.canonical_modulus(1) == 2);
  CHECK(g26.canonical_modulus(2) == 6);
  CHECK(g26.same_element(v, IntVector(v + 2 * g26.rels().col(0))));
}

TEST_CASE("map validity detects non-homomorphisms") {
  FgAbGroup z = FgAbGroup::free_group(1);
  FgAbGroup z2 = FgAbGroup::cyclic(2);
  FgAbGroup z4 = FgAbGroup::cyclic(4);

  CHECK(GroupMap(z2, z, from_rows({{1}})).is_valid() == false);  // 2 must die
  CHECK(GroupMap(z2, z4, from_rows({{1}})).is_valid() == false);
  CHECK(GroupMap(z2, z4, from_rows({{2}})).is_valid());
  CHECK(GroupMap(z4, z2, from_rows({{1}})).is_valid());
  CHECK(GroupMap::identity(z2).is_valid());
  CHECK(GroupMap::zero(z2, z).is_valid());
}

TEST_CASE("kernel, image, cokernel of reference maps") {
  FgAbGroup z = FgAbGroup::free_group(1);
  GroupMap times2(z, z, from_rows({{2}}));
  CHECK(times2.kernel().is_trivial());
  CHECK(invariants_of(times2.image()) == "Z^1");
  CHECK(invariants_of(times2.cokernel()) == "Z^0 2");
  CHECK_FALSE(times2.is_iso());
  CHECK(GroupMap::identity(z).is_iso());

  FgAbGroup z4 = FgAbGroup::cyclic(4);
  GroupMap doubling(z4, z4, from_rows({{2}}));
  CHECK(invariants_of(doubling.kernel()) == "Z^0 2");
  CHECK(invariants_of(doubling.image()) == "Z^0 2");
  CHECK(invariants_of(doubling.cokernel()) == "Z^0 2");

  GroupMap sum(FgAbGroup::free_group(2), z, from_rows({{1, 1}}));
  CHECK(invariants_of(sum.kernel()) == "Z^1");
  CHECK(sum.cokernel().is_trivial());

  // composite and equality mod relations
  GroupMap four = doubling.compose_after(doubling);
  CHECK(four.is_zero_map());
  CHECK(four.equals(GroupMap::zero(z4, z4)));
}

TEST_CASE("kernel and cokernel sizes balance on random maps of finite groups") {
  std::mt19937 rng(202);
  std::vector<FgAbGroup> pool = {FgAbGroup::cyclic(2), FgAbGroup::cyclic(8),
                                 FgAbGroup::from_invariants(0, {2, 4}),
                                 FgAbGroup::from_invariants(0, {3, 9})};
  for (int trial = 0; trial < 30; ++trial) {
    const FgAbGroup& a = pool[rng() % pool.size()];
    const FgAbGroup& b = pool[rng() % pool.size()];
    IntMatrix m = random_matrix(rng, b.gens(), a.gens(), 0, 11);
    GroupMap f(a, b, m);
    if (!f.is_valid()) continue;
    // |ker| * |im| = |A| and |im| * |coker| = |B|
    CHECK(order_of(f.kernel()) * order_of(f.image()) == order_of(a));
    CHECK(order_of(f.image()) * order_of(f.cokernel()) == order_of(b));
  }
}

TEST_CASE("subquotients and preimage lattices") {
  // (2Z x 3Z) / (6Z x 3Z) is cyclic of order 3
  IntMatrix p = from_rows({{2, 0}, {0, 3}});
  IntMatrix q = from_rows({{6, 0}, {0, 3}});
  CHECK(invariants_of(subquotient(p, q)) == "Z^0 3");
  CHECK(subquotient(p, p).is_trivial());

  // preimage of the even lattice under doubling is everything
  IntMatrix m = from_rows({{2}});
  IntMatrix r = from_rows({{2}});
  IntMatrix lat = preimage_lattice(m, r);
  IntSolver s(lat);
  CHECK(s.in_span(from_entries({1})));

  // x + y even
  IntMatrix sum = from_rows({{1, 1}});
  IntMatrix parity = preimage_lattice(sum, from_rows({{2}}));
  IntSolver ps(parity);
  CHECK(ps.in_span(from_entries({1, 1})));
  CHECK(ps.in_span(from_entries({2, 0})));
  CHECK_FALSE(ps.in_span(from_entries({1, 0})));
}

TEST_CASE("homology of a composable pair") {
  FgAbGroup z = FgAbGroup::free_group(1);
  GroupMap f(z, z, from_rows({{2}}));
  GroupMap g(z, FgAbGroup::cyclic(5), from_rows({{0}}));
  CHECK(invariants_of(pair_homology(f, g)) == "Z^0 2");

  // exact pair has trivial homology: Z --1--> Z --0--> Z
  GroupMap one(z, z, from_rows({{1}}));
  GroupMap zero(z, z, from_rows({{0}}));
  CHECK(pair_homology(one, zero).is_trivial());
}

TEST_CASE("tensor, hom, ext and tor closed forms") {
  FgAbGroup z = FgAbGroup::free_group(1);
  FgAbGroup z2 = FgAbGroup::cyclic(2);
  FgAbGroup z4 = FgAbGroup::cyclic(4);
  FgAbGroup z6 = FgAbGroup::cyclic(6);

  CHECK(invariants_of(tensor_product(z4, z6)) == "Z^0 2");
  CHECK(invariants_of(tensor_product(FgAbGroup::free_group(2), FgAbGroup::cyclic(3))) ==
        "Z^0 3 3");
  CHECK(invariants_of(tensor_product(z, z)) == "Z^1");

  CHECK(invariants_of(hom_group(z, z)) == "Z^1");
  CHECK(hom_group(z2, z).is_trivial());
  CHECK(invariants_of(hom_group(z4, z6)) == "Z^0 2");
  CHECK(invariants_of(hom_group(z, z6)) == "Z^0 6");

  CHECK(invariants_of(ext1_group(z2, z)) == "Z^0 2");
  CHECK(ext1_group(z, z6).is_trivial());
  CHECK(invariants_of(ext1_group(z4, z6)) == "Z^0 2");

  CHECK(invariants_of(tor1_group(z2, z4)) == "Z^0 2");
  CHECK(tor1_group(z, z6).is_trivial());
  CHECK(tor1_group(z2, z).is_trivial());
  CHECK(invariants_of(tor1_group(z6, z4)) == "Z^0 2");
}

TEST_CASE("derived functor sizes against exhaustive enumeration") {
  std::vector<FgAbGroup> finite = {FgAbGroup::cyclic(2),
                                   FgAbGroup::cyclic(3),
                                   FgAbGroup::cyclic(4),
                                   FgAbGroup::cyclic(9),
                                   FgAbGroup::from_invariants(0, {2, 4}),
                                   FgAbGroup::from_invariants(0, {2, 2, 4}),
                                   FgAbGroup::from_invariants(0, {3, 12}),
                                   FgAbGroup::from_invariants(0, {8, 8})};
  for (const auto& a : finite)
    for (const auto& b : finite) {
      long homs = static_cast<long>(all_homs(a, b).size());
      CHECK(order_of(hom_group(a, b)) == homs);
      // finite groups: ext has the same size as hom, tor the same as tensor
      CHECK(order_of(ext1_group(a, b)) == homs);
      long gcd_product = 1;
      for (const Int& da : a.invariant_factors())
        for (const Int& db : b.invariant_factors())
          gcd_product *= std::gcd(to_long(da), to_long(db));
      CHECK(order_of(tensor_product(a, b)) == gcd_product);
      CHECK(order_of(tor1_group(a, b)) == gcd_product);
    }
}

TEST_CASE("canonical matrix of a map between canonical presentations") {
  FgAbGroup g = FgAbGroup::from_invariants(1, {2, 4});
  IntMatrix id = GroupMap::identity(g).canonical_matrix();
  CHECK(mat_eq(id, int_identity(3)));

  // doubling on Z/4 seen through canonical coordinates
  FgAbGroup z4 = FgAbGroup::cyclic(4);
  GroupMap d(z4, z4, from_rows({{2}}));
  CHECK(d.canonical_matrix()(0, 0) == 2);
}
