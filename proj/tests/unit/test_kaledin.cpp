#include <doctest.h>

#include "ainf/catalogue.hpp"
#include "ainf/error.hpp"
#include "ainf/kaledin.hpp"
#include "ainf/transfer.hpp"

using namespace ainf;

namespace {

bool higher_vanish(const MultiplicationFamily& m, int w) {
  for (int i = 3; i <= w; ++i)
    if (m.has(i)) return false;
  return true;
}

}  // namespace

TEST_CASE("Kaledin cochain") {
  auto e = exterior_algebra(2);
  auto k = kaledin_cochain(e.structure.cat, e.structure.m, 4);
  CHECK(k.cochain.is_zero());
  CHECK(k.closed);
  CHECK(k.vanishes);

  auto h = heisenberg_minimal();
  auto kh = kaledin_cochain(h.structure.cat, h.structure.m, 3);
  CHECK(kh.closed);
  CHECK(kh.in_w2);
  CHECK_FALSE(kh.cochain.is_zero());
  CHECK(kh.cochain.min_weight() == 3);
  CHECK_FALSE(kh.vanishes);
  REQUIRE(kh.certificate);
  CHECK(kh.ambient.free_rank > 0);

  // coefficient (n - 2) on the weight n part
  Coderivation d = bar_codifferential(h.structure.cat.basis, h.structure.m);
  auto k4 = kaledin_cochain(h.structure.cat, h.structure.m, 4, false);
  CHECK(k4.closed);
  for (const auto& [w, row] : k4.cochain.comps)
    for (const auto& [o, c] : row) CHECK(c == Scalar(static_cast<long>(w.size()) - 2) * d.comps.at(w).at(o));

  CHECK_THROWS_AS(kaledin_cochain(heisenberg_dg().structure.cat, heisenberg_dg().structure.m, 3), PreconditionFailed);
  auto z = e;
  z.structure.cat.ring = coeff::RingDescriptor::integers();
  CHECK_THROWS_AS(kaledin_cochain(z.structure.cat, z.structure.m, 3), UnsupportedRing);
}

TEST_CASE("Kaledin class of a twist is closed and exact") {
  auto e = exterior_algebra(2);
  for (uint64_t seed = 0; seed < 5; ++seed) {
    CAPTURE(seed);
    auto t = random_isotopy_twist(e, seed, 5);
    auto k = kaledin_cochain(t.entry.structure.cat, t.entry.structure.m, 5, false);
    CHECK(k.closed);
    REQUIRE(k.vanishes);
    // substitute the primitive back
    Coderivation d = bar_codifferential(e.structure.cat.basis, t.entry.structure.m).truncated(5);
    CHECK(coderivation_bracket(e.structure.cat.basis, d, *k.primitive, 5) == k.cochain);
  }
}

TEST_CASE("obstruction class") {
  auto e = exterior_algebra(2);
  const auto& cat = e.structure.cat;
  // m_3 = [d_2, ψ0] by construction
  Coderivation d2 = bar_codifferential(cat.basis, e.structure.m);
  Coderivation psi0;
  for (uint64_t seed = 11; psi0.is_zero(); ++seed) psi0 = random_gauge(cat, seed, 2, 2);
  Coderivation d3 = coderivation_bracket(cat.basis, d2, psi0, 3).truncated(3);
  MultiplicationFamily m = multiplications_from_bar(cat.basis, d2 + d3);
  m.normalize();
  REQUIRE(m.has(3));
  auto v = obstruction_class(cat, m, 2);
  REQUIRE(v.vanishes);
  CHECK(coderivation_bracket(cat.basis, d2, *v.primitive, 3) == d3);

  auto zero = obstruction_class(cat, e.structure.m, 2);
  CHECK(zero.vanishes);
  CHECK(zero.primitive->is_zero());

  auto h = heisenberg_minimal();
  auto hv = obstruction_class(h.structure.cat, h.structure.m, 2);
  CHECK_FALSE(hv.vanishes);
  REQUIRE(hv.certificate);
  CHECK(coeff::verify_certificate(hv.equation.matrix, hv.equation.rhs, *hv.certificate, h.structure.cat.ring));
  CHECK_THROWS_AS(obstruction_class(h.structure.cat, h.structure.m, 3), PreconditionFailed);
}

TEST_CASE("certify formality") {
  SUBCASE("formal entries need no gauge") {
    for (const char* name : {"exterior_algebra(1)", "exterior_algebra(3)", "quiver_dg_category(3,0)"}) {
      auto e = catalogue_lookup(name);
      auto v = certify_formality(e.structure.cat, e.structure.m, 5);
      REQUIRE(v.formal());
      CHECK(v.certificate->gauges.empty());
      CHECK(verify_certificate(e.structure.cat, e.structure.m, *v.certificate));
    }
  }
  SUBCASE("Heisenberg") {
    auto h = heisenberg_minimal();
    auto v = certify_formality(h.structure.cat, h.structure.m, 4);
    REQUIRE(v.witness);
    CHECK(v.witness->weight == 3);
    CHECK(v.witness->gauges.empty());
    CHECK(verify_witness(h.structure.cat, h.structure.m, *v.witness));
    // a tampered obstruction no longer matches
    auto bad = *v.witness;
    bad.obstruction.clear();
    CHECK_FALSE(verify_witness(h.structure.cat, h.structure.m, bad));
  }
  SUBCASE("twists of formal structures") {
    for (const char* name : {"exterior_algebra(1)", "exterior_algebra(2)", "quiver_dg_category(3,0)"}) {
      auto e = catalogue_lookup(name);
      for (uint64_t seed = 0; seed < 4; ++seed) {
        CAPTURE(name);
        CAPTURE(seed);
        auto t = random_isotopy_twist(e, seed, 5);
        const auto& cat = t.entry.structure.cat;
        auto v = certify_formality(cat, t.entry.structure.m, 5);
        REQUIRE(v.formal());
        const auto& c = *v.certificate;
        CHECK(verify_certificate(cat, t.entry.structure.m, c));
        MultiplicationFamily moved = transport(cat, t.entry.structure.m, c.isotopy, 5);
        moved.normalize();
        CHECK(higher_vanish(moved, 5));
        CHECK(moved.get(2) == e.structure.m.get(2));
        for (const auto& g : c.gauges) CHECK(g.tau.min_weight() == g.weight);
        for (const auto& g : c.gauges) CHECK(g.tau.max_weight() == g.weight);
      }
    }
  }
  SUBCASE("verdict is invariant under twisting") {
    auto h = heisenberg_minimal(5);
    for (uint64_t seed = 0; seed < 3; ++seed) {
      auto t = random_isotopy_twist(h, seed, 5);
      auto v = certify_formality(t.entry.structure.cat, t.entry.structure.m, 5);
      REQUIRE(v.witness);
      CHECK(v.witness->weight == 3);
      CHECK(verify_witness(t.entry.structure.cat, t.entry.structure.m, *v.witness));
    }
  }
}

TEST_CASE("Kaledin gauge invariance") {
  SUBCASE("identity") {
    auto h = heisenberg_minimal();
    auto r = gauge_invariance_check(h.structure.cat, h.structure.m, h.structure.m, Cofunctor::identity(h.structure.cat), 4);
    CHECK(r.holds());
    CHECK(r.correction.is_zero());
    CHECK(r.transported == r.target);
    CHECK(functor_derivative(Cofunctor::identity(h.structure.cat)).comps.empty());
  }
  SUBCASE("random isotopies") {
    for (uint64_t seed = 0; seed < 6; ++seed) {
      CAPTURE(seed);
      auto base = random_structure(seed, RandomBounds{2, 2, 5});
      auto t = random_isotopy_twist(base, seed + 100, 5);
      auto r = gauge_invariance_check(base.structure.cat, base.structure.m, t.entry.structure.m, t.isotopy, 5);
      CHECK(r.holds());
    }
  }
  SUBCASE("invalid isotopy") {
    auto h = heisenberg_minimal();
    auto f = Cofunctor::identity(h.structure.cat);
    auto other = h.structure.m;
    other.components.erase(3);
    CHECK_THROWS_AS(gauge_invariance_check(h.structure.cat, h.structure.m, other, f, 4), PreconditionFailed);
  }
}
