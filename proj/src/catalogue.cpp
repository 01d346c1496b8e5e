#include "ainf/catalogue.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <regex>

#include "ainf/error.hpp"
#include "ainf/transfer.hpp"

namespace ainf {

namespace {

const char* kGeneratorNames[] = {"x", "y", "z", "u", "v", "w"};

int inversion_parity(unsigned s, unsigned t) {
  int count = 0;
  for (unsigned i = 0; i < 32; ++i)
    if (s & (1u << i)) count += std::popcount(t & ((1u << i) - 1));
  return count & 1;
}

struct OddAlgebra {
  int gens = 0;
  std::vector<unsigned> masks;  // basis order
  std::map<unsigned, int> local;
  // differential on generators: generator -> (mask of degree 2 -> coefficient)
  std::map<int, std::map<unsigned, Scalar>> dgen;

  explicit OddAlgebra(int g) : gens(g) {
    for (unsigned s = 0; s < (1u << g); ++s) masks.push_back(s);
    std::stable_sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
      if (std::popcount(a) != std::popcount(b)) return std::popcount(a) < std::popcount(b);
      // lexicographic in generator order: lower generators first
      for (int i = 0; i < 32; ++i) {
        bool ai = a & (1u << i), bi = b & (1u << i);
        if (ai != bi) return ai;
      }
      return false;
    });
    for (size_t i = 0; i < masks.size(); ++i) local[masks[i]] = static_cast<int>(i);
  }

  std::string name(unsigned s) const {
    if (!s) return "1";
    std::string n;
    for (int i = 0; i < gens; ++i)
      if (s & (1u << i)) n += kGeneratorNames[i];
    return n;
  }

  // product of basis monomials: (sign, mask) or nullopt
  std::optional<std::pair<int, unsigned>> mul(unsigned s, unsigned t) const {
    if (s & t) return std::nullopt;
    return std::make_pair(inversion_parity(s, t), s | t);
  }

  std::map<unsigned, Scalar> d(unsigned s) const {
    std::map<unsigned, Scalar> out;
    int pos = 0;
    for (int i = 0; i < gens; ++i) {
      if (!(s & (1u << i))) continue;
      auto it = dgen.find(i);
      if (it != dgen.end()) {
        unsigned before = s & ((1u << i) - 1);
        unsigned after = s & ~((1u << (i + 1)) - 1);
        for (const auto& [q, c] : it->second) {
          // e_before · q · e_after, with sign (-1)^{pos} from passing d
          auto p1 = mul(before, q);
          if (!p1) continue;
          auto p2 = mul(p1->second, after);
          if (!p2) continue;
          Scalar v = c * coeff::sign(pos + p1->first + p2->first);
          auto [jt, ins] = out.try_emplace(p2->second, v);
          if (!ins) jt->second += v;
        }
      }
      ++pos;
    }
    for (auto it = out.begin(); it != out.end();)
      it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
  }
};

// One object with endomorphism algebra A.
AInfCategory algebra_category(const OddAlgebra& alg, const RingDescriptor& ring) {
  AInfCategory c;
  c.cat.ring = ring;
  c.cat.add_object("pt");
  for (unsigned s : alg.masks) c.cat.add_element(alg.name(s), std::popcount(s), 0, 0);
  for (unsigned s : alg.masks)
    for (unsigned t : alg.masks) {
      auto p = alg.mul(s, t);
      if (p) c.m.components[2][Word{alg.local.at(s), alg.local.at(t)}][alg.local.at(p->second)] = coeff::sign(p->first);
    }
  for (unsigned s : alg.masks)
    for (const auto& [q, v] : alg.d(s)) c.m.components[1][Word{alg.local.at(s)}][alg.local.at(q)] = v;
  c.m.normalize();
  return c;
}

// k objects, hom(i, j) = A for i < j, composition by the product of A.
AInfCategory quiver_category(const OddAlgebra& alg, int k, const RingDescriptor& ring) {
  AInfCategory c;
  CategoryPresentation& cat = c.cat;
  cat.ring = ring;
  for (int i = 0; i < k; ++i) cat.add_object(std::to_string(i));
  std::map<std::tuple<int, int, unsigned>, int> idx;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      for (unsigned s : alg.masks) {
        std::string nm = alg.name(s) + "_" + std::to_string(i) + std::to_string(j);
        idx[{i, j, s}] = cat.add_element(nm, std::popcount(s), i, j);
      }
  MultiplicationFamily& m = c.m;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      for (unsigned s : alg.masks)
        for (const auto& [q, v] : alg.d(s)) m.components[1][Word{idx[{i, j, s}]}][idx[{i, j, q}]] = v;
      for (int l = j + 1; l < k; ++l)
        for (unsigned s : alg.masks)
          for (unsigned t : alg.masks) {
            auto p = alg.mul(s, t);
            // m_2(a in hom(j,l), b in hom(i,j)) in hom(i,l)
            if (p) m.components[2][Word{idx[{j, l, s}], idx[{i, j, t}]}][idx[{i, l, p->second}]] = coeff::sign(p->first);
          }
    }
  m.normalize();
  return c;
}

}  // namespace

CatalogueEntry exterior_algebra(int g) {
  if (g < 1 || g > 6) throw PreconditionFailed("exterior_algebra needs 1 <= g <= 6");
  OddAlgebra alg(g);
  CatalogueEntry e;
  e.name = "exterior_algebra(" + std::to_string(g) + ")";
  e.description = "free graded-commutative algebra on " + std::to_string(g) + " degree 1 generators, zero differential";
  e.structure = algebra_category(alg, RingDescriptor::rationals());
  e.minimal = true;
  e.formal = true;
  e.cy_degree = g;
  return e;
}

CatalogueEntry heisenberg_dg() {
  OddAlgebra alg(3);
  alg.dgen[2][0b011u] = Scalar(1);  // d z = x y
  CatalogueEntry e;
  e.name = "heisenberg_dg";
  e.description = "exterior algebra on x, y, z of degree 1 with d z = x y";
  e.structure = algebra_category(alg, RingDescriptor::rationals());
  e.minimal = false;
  e.formal = false;
  e.witness_weight = 3;
  return e;
}

CatalogueEntry quiver_dg_category(int k, uint64_t seed) {
  if (k < 1 || k > 5) throw PreconditionFailed("quiver_dg_category needs 1 <= k <= 5");
  // the coefficient algebra A
  OddAlgebra alg(seed == 0 ? 0 : (seed % 2 == 1 ? 1 : 2));
  if (alg.gens == 2) alg.dgen[1][0b11u] = Scalar(static_cast<long>(seed % 5) - 2 == 0 ? 1 : static_cast<long>(seed % 5) - 2);
  CatalogueEntry e;
  e.name = "quiver_dg_category(" + std::to_string(k) + "," + std::to_string(seed) + ")";
  e.description = std::to_string(k) + " objects, hom(i,j) a copy of a small dg algebra for i < j";
  e.structure = quiver_category(alg, k, RingDescriptor::rationals());
  e.minimal = !e.structure.m.has(1);
  e.formal = true;
  return e;
}

CatalogueEntry torsion_family() {
  CatalogueEntry e;
  e.name = "torsion_family";
  e.description = "one generator a of degree 0 over poly(ħ) with m_2(a, a) = ħ a";
  CategoryPresentation& cat = e.structure.cat;
  cat.ring = RingDescriptor::polynomials();
  cat.add_object("pt");
  cat.add_element("a", 0, 0, 0);
  e.structure.m.components[2][Word{0, 0}][0] = Scalar::variable();
  e.minimal = true;
  return e;
}

CatalogueEntry heisenberg_minimal(int max_weight) {
  CatalogueEntry dg = heisenberg_dg();
  MinimalModel mm = minimal_model(dg.structure.cat, dg.structure.m, max_weight);
  CatalogueEntry e;
  e.name = "heisenberg_minimal";
  e.description = "minimal model of heisenberg_dg, transferred through weight " + std::to_string(max_weight);
  e.structure = mm.h;
  e.minimal = true;
  e.formal = false;
  e.witness_weight = 3;
  return e;
}

CatalogueEntry random_structure(uint64_t seed, const RandomBounds& bounds) {
  std::mt19937_64 gen(seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); };
  int g = uniform(1, std::max(1, std::min(bounds.max_generators, 4)));
  int k = uniform(1, std::max(1, bounds.max_objects));
  OddAlgebra alg(g);
  // d x_i is a combination of products of closed generators below i, so d² = 0
  std::vector<int> closed;
  for (int i = 0; i < g; ++i) {
    std::map<unsigned, Scalar> dx;
    for (size_t a = 0; a < closed.size(); ++a)
      for (size_t b = a + 1; b < closed.size(); ++b) {
        int c = uniform(-2, 2);
        if (c != 0 && uniform(0, 1)) dx[(1u << closed[a]) | (1u << closed[b])] = Scalar(c);
      }
    if (dx.empty() && closed.size() >= 2 && uniform(0, 2) > 0)
      dx[(1u << closed[0]) | (1u << closed[1])] = Scalar(uniform(0, 1) ? 1 : -1);
    if (dx.empty())
      closed.push_back(i);
    else
      alg.dgen[i] = std::move(dx);
  }
  AInfCategory dg = k == 1 ? algebra_category(alg, RingDescriptor::rationals())
                           : quiver_category(alg, k, RingDescriptor::rationals());
  MinimalModel mm = minimal_model(dg.cat, dg.m, bounds.max_weight);
  CatalogueEntry e;
  e.name = "random_structure(" + std::to_string(seed) + ")";
  e.description = "minimal model through weight " + std::to_string(bounds.max_weight) + " of a random " +
                  std::to_string(g) + "-generator exterior dg algebra" +
                  (k == 1 ? std::string() : " placed on " + std::to_string(k) + " objects");
  e.structure = mm.h;
  e.minimal = true;
  return e;
}

Coderivation random_gauge(const CategoryPresentation& cat, uint64_t seed, int max_weight, int min_weight) {
  std::mt19937_64 gen(seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); };
  Coderivation c{0, {}};
  for (int n = std::max(2, min_weight); n <= max_weight; ++n) {
    std::vector<std::pair<Word, int>> candidates;
    for (const auto& w : cat.composable_words(n)) {
      int sd = cat.basis.word_shifted_degree(w);
      for (int o : cat.hom(cat.basis.word_source(w), cat.basis.word_target(w)))
        if (cat.basis.shifted_degree(o) == sd) candidates.emplace_back(w, o);
    }
    if (candidates.empty()) continue;
    int picks = uniform(0, 2);
    for (int p = 0; p < picks; ++p) {
      const auto& [w, o] = candidates[static_cast<size_t>(uniform(0, static_cast<int>(candidates.size()) - 1))];
      int v = uniform(1, 2) * (uniform(0, 1) ? 1 : -1);
      add_to(c.comps, w, o, Scalar(v));
    }
  }
  c.normalize();
  return c;
}

TwistedEntry random_isotopy_twist(const CatalogueEntry& entry, uint64_t seed, int max_weight) {
  const CategoryPresentation& cat = entry.structure.cat;
  TwistedEntry t;
  t.gauge = random_gauge(cat, seed, max_weight);
  t.isotopy = exp_cofunctor(cat, t.gauge, max_weight);
  t.entry = entry;
  t.entry.name = entry.name + "~" + std::to_string(seed);
  t.entry.description = "exp(c)-twist of " + entry.name;
  t.entry.structure.m = transport(cat, entry.structure.m, t.isotopy, max_weight);
  t.entry.witness_weight.reset();
  return t;
}

std::vector<std::string> catalogue_names() {
  return {"exterior_algebra(1)",       "exterior_algebra(2)",       "exterior_algebra(3)",
          "heisenberg_dg",             "heisenberg_minimal",        "quiver_dg_category(2,0)",
          "quiver_dg_category(3,0)",   "quiver_dg_category(3,1)",   "quiver_dg_category(3,2)",
          "torsion_family"};
}

CatalogueEntry catalogue_lookup(const std::string& name) {
  std::smatch mt;
  static const std::regex ext(R"(exterior_algebra\((\d+)\))");
  static const std::regex quiver(R"(quiver_dg_category\((\d+),\s*(\d+)\))");
  static const std::regex rnd(R"(random_structure\((\d+)\))");
  static const std::regex hmin(R"(heisenberg_minimal(\((\d+)\))?)");
  if (std::regex_match(name, mt, ext)) return exterior_algebra(std::stoi(mt[1]));
  if (std::regex_match(name, mt, quiver)) return quiver_dg_category(std::stoi(mt[1]), std::stoull(mt[2]));
  if (std::regex_match(name, mt, rnd)) return random_structure(std::stoull(mt[1]));
  if (name == "heisenberg_dg") return heisenberg_dg();
  if (std::regex_match(name, mt, hmin)) return heisenberg_minimal(mt[2].matched ? std::stoi(mt[2]) : 4);
  if (name == "torsion_family") return torsion_family();
  throw SchemaError("unknown catalogue entry '" + name + "'");
}

std::vector<std::string> verify_entry(const CatalogueEntry& e, int max_weight) {
  std::vector<std::string> problems;
  const auto& s = e.structure;
  auto v = check_relations(s.cat, s.m, max_weight);
  if (!v.empty()) problems.push_back("relation " + std::to_string(v.front().arity) + " fails");
  if (e.minimal != !s.m.has(1)) problems.push_back("minimality claim is wrong");
  if (e.formal == true && s.m.max_arity() > 2) problems.push_back("claimed formal but has higher products");
  return problems;
}

}  // namespace ainf
