#include <doctest.h>

#include "ainf/catalogue.hpp"
#include "ainf/error.hpp"
#include "ainf/transfer.hpp"

using namespace ainf;

namespace {

int find(const CategoryPresentation& c, const std::string& name) {
  for (int i = 0; i < c.dim(); ++i)
    if (c.basis[i].name == name) return i;
  FAIL("no basis element " << name);
  return -1;
}

Vec unit(int i) { return Vec{{i, Scalar(1)}}; }

void check_model(const CategoryPresentation& cat, const MultiplicationFamily& m, const MinimalModel& mm, int w) {
  CHECK_FALSE(mm.h.m.has(1));
  CHECK(check_relations(mm.h.cat, mm.h.m, w).empty());
  CHECK(check_functor(mm.h.cat, cat, mm.f, mm.h.m, m, w).empty());
  CHECK(check_functor_bar(mm.h.cat, cat, mm.f, mm.h.m, m, w).empty());
  CHECK(mm.f.get(1) == mm.contraction.f1);
  // the transferred m_2 is the induced composition
  CHECK(mm.h.m.get(2) == cohomology_category(cat, m).h.m.get(2));
  // tree expansion and inductive formula agree componentwise
  MinimalModel ind = transfer_inductive(cat, m, mm.contraction, w);
  CHECK(ind.h.m == mm.h.m);
  CHECK(ind.f == mm.f);
}

}  // namespace

TEST_CASE("contraction of a minimal input is trivial") {
  auto e = exterior_algebra(2);
  ContractionData c = contraction_from_dg(e.structure.cat, e.structure.m);
  CHECK(c.h1.empty());
  for (int i = 0; i < e.structure.cat.dim(); ++i) {
    CHECK(c.f1.at(Word{i}) == unit(i));
    CHECK(c.g1.at(Word{i}) == unit(i));
  }
  // transfer along the identity contraction reproduces the structure
  MinimalModel mm = transfer(e.structure.cat, e.structure.m, c, 5);
  CHECK(mm.h.m == e.structure.m);
  CHECK(mm.f == AInfFunctor::identity(e.structure.cat));
  check_model(e.structure.cat, e.structure.m, mm, 5);
}

TEST_CASE("Heisenberg transfer") {
  auto h = heisenberg_dg();
  const auto& cat = h.structure.cat;
  const auto& m = h.structure.m;
  ContractionData c = contraction_from_dg(cat, m);
  CHECK(contraction_defect(cat, m, c).empty());
  MinimalModel mm = transfer(cat, m, c, 5);
  check_model(cat, m, mm, 5);
  CHECK(mm.provenance.size() == 4);

  const auto& H = mm.h.cat;
  int x = find(H, "[x]"), y = find(H, "[y]"), xz = find(H, "[xz]"), yz = find(H, "[yz]");
  Vec m3 = mm.h.m.get(3).count(Word{x, x, y}) ? mm.h.m.get(3).at(Word{x, x, y}) : Vec{};
  CHECK_FALSE(m3.empty());

  MasseyProduct oracle = massey_oracle(cat, m, c, unit(x), unit(x), unit(y));
  REQUIRE(oracle.defined);
  CHECK(oracle.value == unit(xz));
  Vec neg;
  add_scaled(neg, m3, Scalar(-1));
  CHECK((equal_modulo(m3, oracle.value, oracle.indeterminacy, H.dim()) ||
         equal_modulo(neg, oracle.value, oracle.indeterminacy, H.dim())));
  CHECK_FALSE(equal_modulo(oracle.value, Vec{}, oracle.indeterminacy, H.dim()));

  MasseyProduct xyy = massey_oracle(cat, m, c, unit(x), unit(y), unit(y));
  REQUIRE(xyy.defined);
  CHECK((xyy.value == unit(yz) || xyy.value == Vec{{yz, Scalar(-1)}}));
  // [x][y] = 0 but the product with the top class is not
  MasseyProduct bad = massey_oracle(cat, m, c, unit(x), unit(xz), unit(y));
  CHECK_FALSE(bad.defined);
}

TEST_CASE("Massey product with trivial defining system") {
  auto e = exterior_algebra(1);
  ContractionData c = contraction_from_dg(e.structure.cat, e.structure.m);
  int x = find(e.structure.cat, "x");
  MasseyProduct p = massey_oracle(e.structure.cat, e.structure.m, c, unit(x), unit(x), unit(x));
  REQUIRE(p.defined);
  CHECK(p.value.empty());
}

TEST_CASE("formal inputs transfer to zero higher products") {
  for (int g = 1; g <= 3; ++g) {
    auto e = exterior_algebra(g);
    MinimalModel mm = minimal_model(e.structure.cat, e.structure.m, 4);
    for (int n = 3; n <= 4; ++n) CHECK_FALSE(mm.h.m.has(n));
  }
}

TEST_CASE("transfer on quiver dg categories") {
  for (uint64_t seed : {2u, 4u, 6u}) {
    auto q = quiver_dg_category(3, seed);
    MinimalModel mm = minimal_model(q.structure.cat, q.structure.m, 4);
    check_model(q.structure.cat, q.structure.m, mm, 4);
  }
}

TEST_CASE("transfer refuses non-dg input") {
  auto e = exterior_algebra(1);
  MultiplicationFamily m = e.structure.m;
  m.components[3][Word{1, 1, 1}][1] = Scalar(1);
  CHECK_THROWS_AS(contraction_from_dg(e.structure.cat, m), PreconditionFailed);
}
