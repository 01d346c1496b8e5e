#include <doctest.h>

#include "ainf/catalogue.hpp"
#include "ainf/error.hpp"

using namespace ainf;

TEST_CASE("catalogue claims hold") {
  for (const auto& name : catalogue_names()) {
    CAPTURE(name);
    CatalogueEntry e = catalogue_lookup(name);
    CHECK(e.name == name);
    CHECK(verify_entry(e).empty());
  }
  CHECK_THROWS_AS(catalogue_lookup("klein_bottle"), SchemaError);
}

TEST_CASE("catalogue sizes") {
  CHECK(exterior_algebra(1).structure.cat.dim() == 2);
  CHECK(exterior_algebra(2).structure.cat.dim() == 4);
  CHECK(heisenberg_dg().structure.cat.dim() == 8);
  auto path = quiver_dg_category(2, 0);
  CHECK(path.structure.cat.dim() == 1);
  CHECK(path.structure.m.components.empty());
  auto hm = heisenberg_minimal();
  CHECK(hm.structure.cat.dim() == 6);
  CHECK(hm.structure.m.has(3));
}

TEST_CASE("random structures are valid and reproducible") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    CAPTURE(seed);
    CatalogueEntry e = random_structure(seed);
    CHECK(check_relations(e.structure.cat, e.structure.m, 6).empty());
    CHECK_FALSE(e.structure.m.has(1));
    CatalogueEntry again = random_structure(seed);
    CHECK(again.structure.cat == e.structure.cat);
    CHECK(again.structure.m == e.structure.m);
  }
}

TEST_CASE("isotopy twists") {
  auto e = exterior_algebra(2);
  for (uint64_t seed = 0; seed < 10; ++seed) {
    TwistedEntry t = random_isotopy_twist(e, seed, 5);
    CHECK(check_relations(t.entry.structure.cat, t.entry.structure.m, 5).empty());
    AInfFunctor f = desuspend_functor(e.structure.cat.basis, t.isotopy);
    CHECK(check_functor(e.structure.cat, e.structure.cat, f, e.structure.m, t.entry.structure.m, 5).empty());
  }
  // zero gauge: unchanged
  CatalogueEntry z = e;
  z.structure.m = transport(e.structure.cat, e.structure.m, exp_cofunctor(e.structure.cat, Coderivation{0, {}}, 5), 5);
  CHECK(z.structure.m == e.structure.m);
}
