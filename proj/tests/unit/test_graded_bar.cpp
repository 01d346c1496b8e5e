#include <doctest.h>

#include "ainf/acat.hpp"
#include "ainf/bar.hpp"
#include "ainf/catalogue.hpp"
#include "ainf/error.hpp"
#include "support/random.hpp"

using namespace ainf;
using testsupport::Rng;

namespace {

CategoryPresentation one_object(const std::vector<std::pair<std::string, int>>& elems) {
  CategoryPresentation c;
  c.add_object("pt");
  for (const auto& [n, d] : elems) c.add_element(n, d, 0, 0);
  return c;
}

// Random map of fixed arity and degree on a one-object category.
GradedMap random_map(Rng& rng, const CategoryPresentation& cat, int arity, int degree) {
  GradedMap g{degree, {}};
  for (const auto& w : cat.composable_words(arity))
    for (int o = 0; o < cat.dim(); ++o)
      if (cat.basis.degree(o) == cat.basis.word_degree(w) + degree && rng.coin(0.5)) {
        Scalar v = rng.small_integer(3);
        if (!v.is_zero()) g.table[w][o] = v;
      }
  return g;
}

}  // namespace

TEST_CASE("suspension signs") {
  auto cat = one_object({{"a", 0}, {"b", 1}, {"c", 2}});
  // d_1 = -s m_1 s^{-1} on a single element
  GradedMap m1{1, {{Word{1}, Vec{{2, Scalar(1)}}}}};
  GradedMap d1 = suspend_multiplication(cat.basis, m1, 1);
  CHECK(d1.table.at(Word{1}).at(2) == Scalar(-1));
  CHECK(suspend_multiplication(cat.basis, GradedMap{0, {}}, 2).table.empty());
  CHECK_THROWS_AS(suspend_multiplication(cat.basis, GradedMap{1, {}}, 2), Error);

  Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    int arity = rng.uniform(1, 3);
    GradedMap m = random_map(rng, cat, arity, 2 - arity);
    GradedMap d = suspend_multiplication(cat.basis, m, arity);
    CHECK(degree_violations(cat.basis, d, true).empty());
    CHECK(desuspend_multiplication(cat.basis, d, arity) == m);
  }
}

TEST_CASE("koszul evaluation") {
  auto cat = one_object({{"x", 1}, {"y", 1}, {"e", 0}});
  GradedMap f{1, {{Word{1}, Vec{{2, Scalar(1)}}}}};  // odd map
  TensorVec r = koszul_evaluate(cat.basis, {{1, nullptr}, {1, &f}}, Word{0, 1}, false);
  CHECK(r.size() == 1);
  CHECK(r.at(Word{0, 2}) == Scalar(-1));
  GradedMap g0{0, {{Word{0}, Vec{{1, Scalar(2)}}}}};
  TensorVec plain = koszul_evaluate(cat.basis, {{1, &g0}, {1, &g0}}, Word{0, 0}, false);
  CHECK(plain.at(Word{1, 1}) == Scalar(4));

  // iterated evaluation agrees with single-pass evaluation
  Rng rng(2);
  auto big = one_object({{"a", 0}, {"b", 1}, {"c", 1}, {"d", 2}});
  for (int t = 0; t < 50; ++t) {
    GradedMap p = random_map(rng, big, 1, rng.uniform(-1, 1));
    GradedMap q = random_map(rng, big, 2, rng.uniform(-1, 1));
    for (const auto& w : big.composable_words(3)) {
      TensorVec once = koszul_evaluate(big.basis, {{1, &p}, {2, &q}}, w, false);
      TensorVec first = koszul_evaluate(big.basis, {{1, nullptr}, {2, &q}}, w, false);
      TensorVec second = koszul_evaluate(big.basis, {{1, &p}, {1, nullptr}}, first, false);
      // (p ⊗ q) = (p ⊗ id)(id ⊗ q) with no extra sign: q passes nothing after p
      CHECK(once == second);
    }
  }
}

TEST_CASE("comultiplication") {
  CHECK(comultiplication_split(Word{4}).empty());
  CHECK(comultiplication_split(Word{1, 2, 3}).size() == 2);
  Word w{1, 2, 3, 4};
  // (Δ ⊗ 1)Δ = (1 ⊗ Δ)Δ as lists of triples
  std::vector<std::vector<Word>> left, right;
  for (auto& [a, b] : comultiplication_split(w))
    for (auto& [a1, a2] : comultiplication_split(a)) left.push_back({a1, a2, b});
  for (auto& [a, b] : comultiplication_split(w))
    for (auto& [b1, b2] : comultiplication_split(b)) right.push_back({a, b1, b2});
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  CHECK(left == right);
}

TEST_CASE("co-Leibniz identity of coderivation extensions") {
  auto e = exterior_algebra(2);
  const auto& cat = e.structure.cat;
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    Coderivation d = testsupport::random_coderivation(rng, cat, rng.uniform(-1, 1), 1, 3);
    for (const auto& w : cat.composable_words(3)) {
      TensorVec dw = extend_coderivation(cat.basis, d, w);
      // Δ(D w) written as pairs (left, right) flattened with a split marker
      std::map<std::pair<Word, Word>, Scalar> lhs, rhs;
      for (const auto& [u, c] : dw)
        for (auto& pr : comultiplication_split(u)) {
          auto [it, ins] = lhs.try_emplace(pr, c);
          if (!ins) it->second += c;
        }
      for (auto& [a, b] : comultiplication_split(w)) {
        for (const auto& [u, c] : extend_coderivation(cat.basis, d, a)) {
          auto [it, ins] = rhs.try_emplace({u, b}, c);
          if (!ins) it->second += c;
        }
        Scalar s = coeff::sign(d.degree * cat.basis.word_shifted_degree(a));
        for (const auto& [u, c] : extend_coderivation(cat.basis, d, b)) {
          auto [it, ins] = rhs.try_emplace({a, u}, c * s);
          if (!ins) it->second += c * s;
        }
      }
      for (auto* m : {&lhs, &rhs})
        for (auto it = m->begin(); it != m->end();) it = it->second.is_zero() ? m->erase(it) : std::next(it);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("bracket: support-based equals brute force, graded identities") {
  auto e = exterior_algebra(2);
  const auto& cat = e.structure.cat;
  Rng rng(8);
  for (int t = 0; t < 15; ++t) {
    Coderivation a = testsupport::random_coderivation(rng, cat, rng.uniform(-1, 1), 1, 3);
    Coderivation b = testsupport::random_coderivation(rng, cat, rng.uniform(-1, 1), 1, 3);
    CHECK(coderivation_bracket(cat.basis, a, b, 4) == coderivation_bracket_bruteforce(cat, a, b, 4));
    // [D, D] = 2 D² for odd D
    if (a.degree % 2 != 0) {
      Coderivation sq{2 * a.degree, compose_components(cat.basis, a, a, 4)};
      CHECK(coderivation_bracket(cat.basis, a, a, 4) == Scalar(2) * sq);
    }
  }
  // Jacobi: [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]]
  for (int t = 0; t < 10; ++t) {
    Coderivation a = testsupport::random_coderivation(rng, cat, rng.uniform(-1, 1), 1, 2);
    Coderivation b = testsupport::random_coderivation(rng, cat, rng.uniform(-1, 1), 1, 2);
    Coderivation c = testsupport::random_coderivation(rng, cat, rng.uniform(-1, 1), 1, 2);
    const int w = 4;
    Coderivation lhs = coderivation_bracket(cat.basis, a, coderivation_bracket(cat.basis, b, c, w), w);
    Coderivation r1 = coderivation_bracket(cat.basis, coderivation_bracket(cat.basis, a, b, w), c, w);
    Coderivation r2 = coderivation_bracket(cat.basis, b, coderivation_bracket(cat.basis, a, c, w), w);
    Coderivation rhs{lhs.degree, r1.comps};
    add_scaled(rhs.comps, r2.comps, coeff::sign(a.degree * b.degree));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("relations: catalogue structures and a defect") {
  CHECK(check_relations(exterior_algebra(2).structure.cat, exterior_algebra(2).structure.m, 6).empty());
  auto h = heisenberg_dg();
  CHECK(check_relations(h.structure.cat, h.structure.m, 4).empty());

  // non-associative product on a 3-dimensional space: (a a) a != a (a a)
  auto cat = one_object({{"a", 0}, {"b", 0}, {"c", 0}});
  MultiplicationFamily m;
  m.components[2][Word{0, 0}][1] = Scalar(1);
  m.components[2][Word{1, 0}][2] = Scalar(1);
  auto v = check_relations(cat, m, 4);
  REQUIRE_FALSE(v.empty());
  CHECK(v.front().arity == 3);
}

TEST_CASE("Heisenberg relations against direct expansion") {
  auto h = heisenberg_dg();
  const auto& cat = h.structure.cat;
  const auto& m = h.structure.m;
  auto mul = [&](const Vec& a, const Vec& b) {
    Vec out;
    for (const auto& [i, x] : a)
      for (const auto& [j, y] : b) {
        auto it = m.get(2).find(Word{i, j});
        if (it != m.get(2).end()) add_scaled(out, it->second, x * y);
      }
    return out;
  };
  auto d = [&](const Vec& a) {
    Vec out;
    for (const auto& [i, x] : a) {
      auto it = m.get(1).find(Word{i});
      if (it != m.get(1).end()) add_scaled(out, it->second, x);
    }
    return out;
  };
  for (int i = 0; i < cat.dim(); ++i) {
    Vec a{{i, Scalar(1)}};
    CHECK(d(d(a)).empty());
    for (int j = 0; j < cat.dim(); ++j) {
      Vec b{{j, Scalar(1)}};
      Vec lhs = d(mul(a, b));
      Vec rhs = mul(d(a), b);
      add_scaled(rhs, mul(a, d(b)), coeff::sign(cat.basis.degree(i)));
      CHECK(lhs == rhs);
      for (int k = 0; k < cat.dim(); ++k) {
        Vec c{{k, Scalar(1)}};
        CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
      }
    }
  }
}

TEST_CASE("Lefevre-Hasegawa: relations hold iff d squares to zero") {
  Rng rng(21);
  auto e = exterior_algebra(2);
  const auto& cat = e.structure.cat;
  for (int t = 0; t < 20; ++t) {
    MultiplicationFamily m = e.structure.m;
    if (t % 2) {
      // corrupt one entry
      auto words = cat.composable_words(2);
      const Word& w = words[static_cast<size_t>(rng.uniform(0, static_cast<int>(words.size()) - 1))];
      for (int o = 0; o < cat.dim(); ++o)
        if (cat.basis.degree(o) == cat.basis.word_degree(w)) {
          add_to(m.components[2], w, o, Scalar(1));
          break;
        }
    }
    bool rel = check_relations(cat, m, 4).empty();
    bool sq = square_violations(cat, bar_codifferential(cat.basis, m), 4).empty();
    CHECK(rel == sq);
  }
}

TEST_CASE("opposite category") {
  auto e = exterior_algebra(2);
  auto op = opposite_category(e.structure.cat, e.structure.m);
  CHECK(check_relations(op.cat, op.m, 4).empty());
  // m_op(g, f) = (-1)^{|g||f|} m(f, g)
  for (const auto& [w, row] : op.m.get(2)) {
    Word rev{w[1], w[0]};
    Vec expect;
    add_scaled(expect, e.structure.m.get(2).at(rev),
               coeff::sign(e.structure.cat.basis.degree(w[0]) * e.structure.cat.basis.degree(w[1])));
    CHECK(row == expect);
  }
  // graded commutative: m_op = m
  CHECK(op.m == e.structure.m);
  auto twice = opposite_category(op.cat, op.m);
  CHECK(twice.cat == e.structure.cat);
  CHECK(twice.m == e.structure.m);
}
