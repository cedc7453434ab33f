#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "finsheaf/duality.hpp"
#include "fixtures.hpp"
#include "random_gen.hpp"
#include "test_util.hpp"

using namespace finsheaf;
using fixtures::chain3;
using fixtures::circle;
using fixtures::diamond;
using fixtures::point;
using fixtures::s0;
using fixtures::sierpinski;
using fixtures::sphere2;
using fixtures::sphere3;
using fixtures::twisted_circle;
using fixtures::vee;
using testutil::invariants_of;

namespace {

Sheaf constant_z(PosetPtr p) { return constant_sheaf(p, FgAbGroup::free_group(1)); }

bool all_terms_free(const DualizingComplex& d) {
  for (const Sheaf& t : d.cx.terms)
    for (int x = 0; x < t.space().size(); ++x)
      if (!t.stalk(x).is_free()) return false;
  return true;
}

}  // namespace

TEST_CASE("a point dualizes to the integers in degree zero") {
  auto d = dualizing_complex(point(), 0);
  CHECK(d.cx.lo == 0);
  CHECK(d.cx.terms.size() == 2);
  CHECK(d.cx.validate());
  CHECK(all_terms_free(d));
  ChainComplex sc = d.stalk_complex(0);
  CHECK(invariants_of(sc.homology_at(0)) == "Z^1");
  CHECK(sc.homology_at(1).is_trivial());

  auto pv = pv_check(point(), 1);
  CHECK(pv.pass);
  CHECK(pv.element_pass.size() == 1);

  auto mf = homological_manifold_check(point(), 1);
  CHECK(mf.pass);
  CHECK(mf.dim == 0);
  CHECK(mf.orientable);
  CHECK(mf.edge_signs.empty());

  CHECK_THROWS_WITH_AS(dualizing_complex(point(), -1), "dualizing_complex: negative degree",
                       std::invalid_argument);
}

TEST_CASE("the two point space with one open point dualizes to a skyscraper") {
  auto p = sierpinski();
  auto d = dualizing_complex(p, 2);
  CHECK(d.cx.validate());
  CHECK(all_terms_free(d));
  // degree zero counts single points visible from each element, degree one
  // counts the single edge, visible from both
  CHECK(d.cx.terms[0].stalk(0).gens() == 2);
  CHECK(d.cx.terms[0].stalk(1).gens() == 1);
  CHECK(d.cx.terms[1].stalk(0).gens() == 1);
  CHECK(d.cx.terms[1].stalk(1).gens() == 1);

  ChainComplex at_closed = d.stalk_complex(0);
  CHECK(invariants_of(at_closed.homology_at(0)) == "Z^1");
  CHECK(at_closed.homology_at(1).is_trivial());
  ChainComplex at_open = d.stalk_complex(1);
  CHECK(at_open.homology_at(0).is_trivial());
  CHECK(at_open.homology_at(1).is_trivial());

  auto pv = pv_check(p, 1);
  CHECK_FALSE(pv.pass);
  CHECK(pv.element_pass[0] == 1);
  CHECK(pv.element_pass[1] == 0);
  CHECK_FALSE(pv.detail.empty());

  auto mf = homological_manifold_check(p, 2);
  CHECK_FALSE(mf.pass);
  CHECK_FALSE(mf.witnesses.empty());
}

TEST_CASE("the circle model is an orientable homology manifold of dimension one") {
  auto p = circle();
  auto d = dualizing_complex(p, 2);
  CHECK(d.cx.validate());
  for (int x = 0; x < p->size(); ++x) {
    ChainComplex sc = d.stalk_complex(x);
    CHECK(sc.homology_at(0).is_trivial());
    CHECK(invariants_of(sc.homology_at(1)) == "Z^1");
    CHECK(sc.homology_at(2).is_trivial());
  }

  auto mf = homological_manifold_check(p, 2);
  CHECK(mf.pass);
  CHECK(mf.dim == 1);
  CHECK(mf.orientable);
  CHECK(mf.edge_signs.size() == p->covers().size());
  for (int s : mf.edge_signs) CHECK((s == 1 || s == -1));

  CHECK(pv_check(p, 2).pass);
}

TEST_CASE("sphere models concentrate in their dimension") {
  auto m2 = homological_manifold_check(sphere2(), 3);
  CHECK(m2.pass);
  CHECK(m2.dim == 2);
  CHECK(m2.orientable);

  auto m3 = homological_manifold_check(sphere3(), 4);
  CHECK(m3.pass);
  CHECK(m3.dim == 3);
  CHECK(m3.orientable);

  auto m0 = homological_manifold_check(s0(), 1);
  CHECK(m0.pass);
  CHECK(m0.dim == 0);
  CHECK(m0.orientable);
}

TEST_CASE("global duality reproduces homology where the per element check passes") {
  std::vector<PosetPtr> spaces = {point(), s0(), circle(), sphere2()};
  for (auto& p : spaces) {
    int deg = p->height() + 1;
    auto d = dualizing_complex(p, p->height());
    auto got = dual_homology(d, constant_z(p), deg);
    auto want = homology(constant_z(p), deg);
    for (size_t i = 0; i < want.size(); ++i) CHECK(got[i].same_invariants(want[i]));
  }

  // twisted coefficients on the circle
  auto p = circle();
  auto d = dualizing_complex(p, p->height());
  Sheaf tw = twisted_circle(FgAbGroup::free_group(1));
  auto got = dual_homology(d, tw, 2);
  auto want = homology(tw, 2);
  for (size_t i = 0; i < want.size(); ++i) CHECK(got[i].same_invariants(want[i]));
  CHECK(invariants_of(got[0]) == "Z^0 2");
  CHECK(got[1].is_trivial());
}

TEST_CASE("the manifold verdict implies the per element duality verdict") {
  std::vector<PosetPtr> spaces = {point(),   s0(),     sierpinski(), chain3(),
                                  vee(),     diamond(), circle(),    sphere2()};
  for (auto& p : spaces) {
    int deg = p->height() + 1;
    bool manifold = homological_manifold_check(p, deg).pass;
    bool pv = pv_check(p, deg).pass;
    CAPTURE(p->size());
    if (manifold) CHECK(pv);
  }
}

TEST_CASE("dual stalks match the degreewise integer dual of derived sections") {
  randgen::Rng rng(2024);
  std::vector<PosetPtr> spaces = {sierpinski(), chain3(), circle(), sphere2()};
  for (int iter = 0; iter < 3; ++iter) spaces.push_back(randgen::random_poset(rng, 5));
  for (auto& p : spaces) {
    int hi = p->height() + 1;
    auto d = dualizing_complex(p, p->height());
    CHECK(d.cx.validate());
    CHECK(all_terms_free(d));
    for (int x = 0; x < p->size(); ++x) {
      auto coh = cohomology(constant_on_open(p, p->up_set(x), FgAbGroup::free_group(1)),
                            hi + 1);
      ChainComplex sc = d.stalk_complex(x);
      for (int k = 0; k <= hi; ++k) {
        FgAbGroup expected =
            direct_sum(hom_group(coh[static_cast<size_t>(k)], FgAbGroup::free_group(1)),
                       ext1_group(coh[static_cast<size_t>(k) + 1], FgAbGroup::free_group(1)));
        CAPTURE(x);
        CAPTURE(k);
        CHECK(sc.homology_at(k).same_invariants(expected));
      }
    }
  }
}

TEST_CASE("restricting the dual differs from the dual of the restriction") {
  auto p = circle();
  std::vector<int> ua = p->up_set(0);
  auto rep = restricted_dual_comparison(p, ua, 2);
  CHECK_FALSE(rep.agree);
  CHECK_FALSE(rep.detail.empty());

  std::vector<int> whole = {0, 1, 2, 3};
  CHECK(restricted_dual_comparison(p, whole, 2).agree);

  std::vector<int> top_only = {2};
  auto c3 = chain3();
  CHECK_FALSE(restricted_dual_comparison(c3, top_only, 2).agree);

  std::vector<int> not_open = {0};
  CHECK_THROWS_WITH_AS(restricted_dual_comparison(p, not_open, 1),
                       "restricted_dual: subset is not open", std::invalid_argument);
  std::vector<int> empty;
  CHECK_THROWS_WITH_AS(restricted_dual_comparison(p, empty, 1),
                       "restricted_dual: empty subset", std::invalid_argument);
}

TEST_CASE("report shapes are consistent on random spaces") {
  randgen::Rng rng(515);
  for (int iter = 0; iter < 6; ++iter) {
    auto p = randgen::random_poset(rng, 6);
    int deg = p->height() + 1;
    auto d = dualizing_complex(p, p->height());
    CHECK(d.cx.lo == 0);
    CHECK(d.cx.terms.size() == static_cast<size_t>(p->height()) + 2);
    CHECK(d.cx.validate());
    CHECK(all_terms_free(d));

    auto pv = pv_check(p, deg);
    CHECK(pv.element_pass.size() == static_cast<size_t>(p->size()));
    bool every = true;
    for (char c : pv.element_pass) every = every && c;
    CHECK(pv.pass == every);

    auto mf = homological_manifold_check(p, deg);
    if (mf.pass) {
      CHECK(mf.dim >= 0);
      CHECK(mf.edge_signs.size() == p->covers().size());
      for (int s : mf.edge_signs) CHECK((s == 1 || s == -1));
    } else {
      CHECK_FALSE(mf.witnesses.empty());
    }
  }
}
