#include "ainf/family.hpp"

#include <algorithm>
#include <random>

#include "ainf/error.hpp"
#include "ainf/transfer.hpp"

namespace ainf {

using coeff::ExactMatrix;
using coeff::ModuleInvariants;
using coeff::RingDescriptor;
using coeff::RingMap;

bool TorsionReport::is_free() const {
  if (!localized) return invariants.is_free();
  for (const auto& d : invariants.divisors)
    if (d.numerator().coeff(0) == 0) return false;
  return true;
}

MultiplicationFamily induce(const MultiplicationFamily& m, const RingMap& map) {
  MultiplicationFamily r;
  for (const auto& [arity, table] : m.components)
    for (const auto& [w, row] : table)
      for (const auto& [o, c] : row) add_to(r.components[arity], w, o, map.apply(c));
  r.normalize();
  return r;
}

AInfCategory induce(const AInfCategory& a, const RingMap& map) {
  if (a.cat.ring != map.source)
    throw PreconditionFailed("ring map starts at " + map.source.name() + ", structure is over " + a.cat.ring.name());
  AInfCategory r{a.cat, induce(a.m, map)};
  r.cat.ring = map.target;
  return r;
}

AInfCategory fiber_at_zero(const AInfCategory& a) { return induce(a, RingMap::evaluation(a.cat.ring, 0)); }

AInfCategory generic_fiber(const AInfCategory& a) {
  if (a.cat.ring.is_field()) return a;
  return induce(a, RingMap::fraction_field_embedding(a.cat.ring));
}

namespace {

ModuleInvariants base_changed(const ModuleInvariants& inv, const RingMap& map) {
  ModuleInvariants r{inv.free_rank, {}};
  for (const auto& d : inv.divisors) {
    Scalar x = map.apply(d);
    if (!coeff::is_unit(map.target, x)) r.divisors.push_back(x);
  }
  return r;
}

}  // namespace

BaseChangeReport base_change_commutation_check(const AInfCategory& a, const RingMap& map, int min_degree,
                                               int max_degree, int max_weight) {
  if (a.m.max_arity() > max_weight)
    throw PreconditionFailed("m_" + std::to_string(a.m.max_arity()) + " lies beyond the truncation weight");
  BaseChangeReport r;
  r.flat = map.is_flat();
  AInfCategory b = induce(a, map);
  CochainSliceSpec src = compact_cochain_complex(a.cat, a.m, min_degree, max_degree, max_weight);
  CochainSliceSpec dst = compact_cochain_complex(b.cat, b.m, min_degree, max_degree, max_weight);
  r.chain_level_equal = true;
  for (const auto& [k, mat] : src.differential) {
    if (!(dst.bases.at(k) == src.bases.at(k)) || !(coeff::base_change_matrix(mat, map) == dst.differential.at(k))) {
      r.chain_level_equal = false;
      r.mismatched_degrees.push_back(k);
    }
  }
  r.invariants_match = true;
  for (int n = min_degree + 2; n <= max_degree; ++n) {
    auto before = hochschild_cohomology(src, a.cat.ring, n).invariants;
    auto after = hochschild_cohomology(dst, b.cat.ring, n).invariants;
    if (!(base_changed(before, map) == after)) r.invariants_match = false;
    r.invariants[n] = {std::move(before), std::move(after)};
  }
  return r;
}

std::string to_string(PipelineVerdict v) {
  switch (v) {
    case PipelineVerdict::formal: return "formal";
    case PipelineVerdict::not_formal: return "not_formal";
    case PipelineVerdict::abstain: return "abstain";
    case PipelineVerdict::disagreement: return "disagreement";
  }
  return "unknown";
}

PipelineReport generic_formality_pipeline(const AInfCategory& input, int max_weight) {
  PipelineReport r;
  AInfCategory a = input;
  if (a.m.has(1)) {
    // dg input: pass to the minimal model, which needs free cohomology
    try {
      a = minimal_model(input.cat, input.m, max_weight).h;
    } catch (const PreconditionFailed& e) {
      r.reason = std::string("no minimal model over the base ring: ") + e.what();
      return r;
    }
  }
  AInfCategory gen = generic_fiber(a);
  r.generic = certify_formality(gen.cat, gen.m, max_weight);

  MultiplicationFamily m2;
  if (a.m.has(2)) m2.components[2] = a.m.get(2);
  CochainSliceSpec spec = compact_cochain_complex(a.cat, m2, 0, 2, max_weight);
  r.hypotheses.push_back({"HH^2_c(C, m_2) through weight " + std::to_string(max_weight),
                          hochschild_cohomology(spec, a.cat.ring, 2).invariants});

  if (!r.generic->formal()) {
    r.verdict = PipelineVerdict::not_formal;
    r.reason = "generic fibre has a non-formality witness at weight " + std::to_string(r.generic->witness->weight);
    return r;
  }
  if (!r.hypotheses.back().is_free()) {
    r.reason = "HH^2_c(C, m_2) has torsion; the generic-fibre criterion does not apply";
    return r;
  }
  r.direct = certify_formality(a.cat, a.m, max_weight);
  if (r.direct->formal()) {
    r.verdict = PipelineVerdict::formal;
    r.reason = "generic fibre formal and HH^2_c free; certified over " + a.cat.ring.name();
  } else {
    r.verdict = PipelineVerdict::disagreement;
    r.reason = "hypotheses hold but direct certification failed at weight " +
               std::to_string(r.direct->witness->weight);
  }
  return r;
}

namespace {

Scalar pairing_entry(const CategoryPresentation& cat, const CYDatum& datum, int a, int b) {
  int x = cat.basis.source(a), y = cat.basis.target(a);
  auto it = datum.pairings.find({x, y});
  if (it == datum.pairings.end()) return Scalar(0);
  auto rows = cat.hom(x, y), cols = cat.hom(y, x);
  auto ra = std::find(rows.begin(), rows.end(), a) - rows.begin();
  auto cb = std::find(cols.begin(), cols.end(), b) - cols.begin();
  return it->second.get(static_cast<int>(ra), static_cast<int>(cb));
}

Scalar pair_vec(const CategoryPresentation& cat, const CYDatum& datum, const Vec& u, int b) {
  Scalar s;
  for (const auto& [a, c] : u) s += c * pairing_entry(cat, datum, a, b);
  return s;
}

Scalar pair_vec(const CategoryPresentation& cat, const CYDatum& datum, int a, const Vec& v) {
  Scalar s;
  for (const auto& [b, c] : v) s += c * pairing_entry(cat, datum, a, b);
  return s;
}

Vec compose2(const MultiplicationFamily& m, int a, int b) {
  auto it = m.get(2).find(Word{a, b});
  return it == m.get(2).end() ? Vec{} : it->second;
}

}  // namespace

CYReport cy_pairing_check(const AInfCategory& h, const CYDatum& datum) {
  for (const auto& [arity, t] : h.m.components)
    if (arity != 2 && !t.empty()) throw PreconditionFailed("CY pairings are checked on graded categories (only m_2)");
  const auto& cat = h.cat;
  const int n = datum.degree;
  CYReport r;
  auto fail = [&](bool& flag, std::string msg) {
    flag = false;
    if (r.failures.size() < 20) r.failures.push_back(std::move(msg));
  };
  for (const auto& [xy, mat] : datum.pairings) {
    auto [x, y] = xy;
    if (mat.rows() != static_cast<int>(cat.hom(x, y).size()) || mat.cols() != static_cast<int>(cat.hom(y, x).size()))
      throw DimensionError("pairing matrix for (" + cat.objects[static_cast<size_t>(x)] + ", " +
                           cat.objects[static_cast<size_t>(y)] + ") has the wrong shape");
  }
  for (int x = 0; x < cat.object_count(); ++x)
    for (int y = 0; y < cat.object_count(); ++y) {
      auto rows = cat.hom(x, y), cols = cat.hom(y, x);
      std::string pair = "(" + cat.objects[static_cast<size_t>(x)] + ", " + cat.objects[static_cast<size_t>(y)] + ")";
      // degree slices: hom(x, y)^i against hom(y, x)^{n-i}
      std::map<int, std::pair<std::vector<int>, std::vector<int>>> slices;
      for (int a : rows) slices[cat.basis.degree(a)].first.push_back(a);
      for (int b : cols) slices[n - cat.basis.degree(b)].second.push_back(b);
      for (const auto& [i, rc] : slices) {
        const auto& [sr, sc] = rc;
        if (sr.size() != sc.size()) {
          fail(r.unimodular, pair + " degree " + std::to_string(i) + ": " + std::to_string(sr.size()) + " against " +
                                 std::to_string(sc.size()));
          continue;
        }
        if (sr.empty()) continue;
        ExactMatrix block(static_cast<int>(sr.size()), static_cast<int>(sc.size()));
        for (size_t p = 0; p < sr.size(); ++p)
          for (size_t q = 0; q < sc.size(); ++q)
            block.set(static_cast<int>(p), static_cast<int>(q), pairing_entry(cat, datum, sr[p], sc[q]));
        if (!coeff::is_unit(cat.ring, coeff::determinant(block)))
          fail(r.unimodular, pair + " degree " + std::to_string(i) + ": determinant is not a unit");
      }
      for (int a : rows)
        for (int b : cols) {
          Scalar v = pairing_entry(cat, datum, a, b);
          int da = cat.basis.degree(a), db = cat.basis.degree(b);
          if (!v.is_zero() && da + db != n)
            fail(r.degree_ok, "<" + cat.basis[a].name + ", " + cat.basis[b].name + "> nonzero off degree " +
                                  std::to_string(n));
          if (v != coeff::sign(da * db) * pairing_entry(cat, datum, b, a))
            fail(r.symmetric, "<" + cat.basis[a].name + ", " + cat.basis[b].name + "> is not graded symmetric");
        }
    }
  // <m_2(a, b), c> = <a, m_2(b, c)> for b : x -> y, a : y -> z, c : z -> x
  for (int x = 0; x < cat.object_count(); ++x)
    for (int y = 0; y < cat.object_count(); ++y)
      for (int z = 0; z < cat.object_count(); ++z)
        for (int b : cat.hom(x, y))
          for (int a : cat.hom(y, z))
            for (int c : cat.hom(z, x)) {
              Scalar lhs = pair_vec(cat, datum, compose2(h.m, a, b), c);
              Scalar rhs = pair_vec(cat, datum, a, compose2(h.m, b, c));
              if (lhs != rhs)
                fail(r.invariant, "<m_2(" + cat.basis[a].name + ", " + cat.basis[b].name + "), " + cat.basis[c].name +
                                      "> != <" + cat.basis[a].name + ", m_2(" + cat.basis[b].name + ", " +
                                      cat.basis[c].name + ")>");
            }
  return r;
}

CYDatum trace_pairing(const AInfCategory& h, int degree, const std::map<int, Vec>& traces) {
  const auto& cat = h.cat;
  CYDatum d;
  d.degree = degree;
  for (int x = 0; x < cat.object_count(); ++x)
    for (int y = 0; y < cat.object_count(); ++y) {
      auto rows = cat.hom(x, y), cols = cat.hom(y, x);
      ExactMatrix p(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
      auto tr = traces.find(y);
      if (tr != traces.end())
        for (size_t i = 0; i < rows.size(); ++i)
          for (size_t j = 0; j < cols.size(); ++j) {
            Scalar s;
            for (const auto& [o, c] : compose2(h.m, rows[i], cols[j])) {
              auto t = tr->second.find(o);
              if (t != tr->second.end()) s += c * t->second;
            }
            if (!s.is_zero()) p.set(static_cast<int>(i), static_cast<int>(j), s);
          }
      d.pairings[{x, y}] = std::move(p);
    }
  return d;
}

FreenessReport freeness_from_fiber_dims(const FreeComplex& c) {
  const RingDescriptor ring = RingDescriptor::polynomials();
  const RingMap at_zero = RingMap::evaluation(ring, 0);
  auto rank_of = [&](int k) { return c.ranks.count(k) ? c.ranks.at(k) : 0; };
  auto matrix = [&](int k) {
    auto it = c.differential.find(k);
    return it != c.differential.end() ? it->second : ExactMatrix(rank_of(k + 1), rank_of(k));
  };
  for (const auto& [k, a] : c.differential)
    if (a.rows() != rank_of(k + 1) || a.cols() != rank_of(k))
      throw DimensionError("differential in degree " + std::to_string(k) + " does not match the ranks");

  FreenessReport r;
  r.fibers_agree = true;
  r.snf_free_at_origin = true;
  r.snf_free = true;
  for (const auto& [k, dim] : c.ranks) {
    ExactMatrix in = matrix(k - 1), out = matrix(k);
    FiberDims f;
    f.generic = dim - coeff::rank(in) - coeff::rank(out);
    f.at_zero = dim - coeff::rank(coeff::base_change_matrix(in, at_zero)) -
                coeff::rank(coeff::base_change_matrix(out, at_zero));
    f.snf = coeff::homology_invariants(in, out, dim, ring);
    if (f.at_zero != f.generic) {
      r.fibers_agree = false;
      r.jump_degrees.push_back(k);
    }
    for (const auto& d : f.snf.divisors) {
      r.snf_free = false;
      if (at_zero.apply(d).is_zero()) {
        r.snf_free_at_origin = false;
        r.torsion.push_back(d);
      }
    }
    r.degrees[k] = std::move(f);
  }
  return r;
}

namespace {

Scalar truncate_order(const Scalar& x, int order) {
  if (!x.is_polynomial()) throw UnsupportedRing("family coefficients must be polynomials in ħ");
  coeff::Poly p = x.numerator();
  std::vector<mpq_class> c;
  for (int i = 0; i <= std::min(order, p.degree()); ++i) c.push_back(p.coeff(i));
  return Scalar(coeff::Poly(std::move(c)));
}

Vec truncate_order(const Vec& v, int order) {
  Vec r;
  for (const auto& [i, c] : v) {
    Scalar t = truncate_order(c, order);
    if (!t.is_zero()) r[i] = t;
  }
  return r;
}

Vec apply_linear(const MapTable& f, const Vec& v) {
  Vec r;
  for (const auto& [i, c] : v) {
    auto it = f.find(Word{i});
    if (it != f.end()) add_scaled(r, it->second, c);
  }
  return r;
}

Vec apply_bilinear(const MapTable& m2, const Vec& u, const Vec& v) {
  Vec r;
  for (const auto& [a, ca] : u)
    for (const auto& [b, cb] : v) {
      auto it = m2.find(Word{a, b});
      if (it != m2.end()) add_scaled(r, it->second, ca * cb);
    }
  return r;
}

MapTable identity_map(const CategoryPresentation& cat) {
  MapTable id;
  for (int i = 0; i < cat.dim(); ++i) id[Word{i}][i] = Scalar(1);
  return id;
}

MapTable compose_linear(const MapTable& f, const MapTable& g, int order) {
  MapTable r;
  for (const auto& [w, v] : g) {
    Vec x = truncate_order(apply_linear(f, v), order);
    if (!x.empty()) r[w] = std::move(x);
  }
  return r;
}

// degree 0 maps letter -> letter within one hom space
std::vector<std::pair<int, int>> linear_cells(const CategoryPresentation& cat) {
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < cat.dim(); ++i)
    for (int o : cat.hom(cat.basis.source(i), cat.basis.target(i)))
      if (cat.basis.degree(o) == cat.basis.degree(i)) cells.emplace_back(i, o);
  return cells;
}

std::vector<std::pair<Word, int>> bilinear_cells(const CategoryPresentation& cat) {
  std::vector<std::pair<Word, int>> cells;
  for (const auto& w : cat.composable_words(2))
    for (int o : cat.hom(cat.basis.word_source(w), cat.basis.word_target(w)))
      if (cat.basis.degree(o) == cat.basis.word_degree(w)) cells.emplace_back(w, o);
  return cells;
}

MapTable coefficient_table(const MapTable& t, int r) {
  MapTable out;
  for (const auto& [w, row] : t)
    for (const auto& [o, c] : row) {
      mpq_class x = c.numerator().coeff(r);
      if (x != 0) out[w][o] = Scalar(x);
    }
  return out;
}

}  // namespace

MultiplicationFamily strict_gauge_action(const AInfCategory& a, const MapTable& psi, int max_order) {
  for (const auto& [arity, t] : a.m.components)
    if (arity != 2 && !t.empty()) throw PreconditionFailed("strict gauges act here on graded families (only m_2)");
  const auto& cat = a.cat;
  // ψ = id + X with X ≡ 0 mod ħ; ψ^{-1} = Σ (-X)^j
  MapTable minus_x;
  for (const auto& [w, row] : psi)
    for (const auto& [o, c] : row) {
      Scalar v = c - (w[0] == o ? Scalar(1) : Scalar(0));
      if (!v.is_zero() && v.numerator().coeff(0) != 0)
        throw PreconditionFailed("gauge is not the identity modulo ħ");
      if (!v.is_zero()) add_to(minus_x, w, o, -v);
    }
  for (int i = 0; i < cat.dim(); ++i)
    if (!psi.count(Word{i})) throw PreconditionFailed("gauge is missing the image of " + cat.basis[i].name);
  MapTable inverse = identity_map(cat), power = identity_map(cat);
  for (int j = 1; j <= max_order; ++j) {
    power = compose_linear(minus_x, power, max_order);
    if (power.empty()) break;
    add_scaled(inverse, power, Scalar(1));
  }
  prune(inverse);

  MultiplicationFamily out;
  const MapTable& m2 = a.m.get(2);
  for (const auto& w : cat.composable_words(2)) {
    Vec v = truncate_order(apply_bilinear(m2, psi.at(Word{w[0]}), psi.at(Word{w[1]})), max_order);
    Vec img = truncate_order(apply_linear(inverse, v), max_order);
    if (!img.empty()) out.components[2][w] = std::move(img);
  }
  out.normalize();
  return out;
}

TrivializationResult deformation_trivialize(const AInfCategory& family, int max_order) {
  if (family.cat.ring.kind != coeff::RingKind::polynomials)
    throw UnsupportedRing("deformation_trivialize works over poly(ħ), not " + family.cat.ring.name());
  for (const auto& [arity, t] : family.m.components)
    if (arity != 2 && !t.empty()) throw PreconditionFailed("the family must be a graded category (only m_2)");
  const auto& cat = family.cat;
  TrivializationResult r;
  r.max_order = max_order;
  r.m0 = induce(family.m, RingMap::evaluation(cat.ring, 0));

  // m_ħ is only defined modulo ħ^{N+1}, so the cell is read at that precision
  auto cell = bigraded_cell(cat, family.m, 3, 2, 0);
  r.hypotheses.push_back({"HH^{2,0} of the family over poly(ħ)/ħ^" + std::to_string(max_order + 1) + ", localised at ħ",
                          cell ? coeff::local_homology_invariants(cell->in, cell->out, cell->dim, max_order + 1)
                               : ModuleInvariants{},
                          true});
  if (!r.hypotheses.back().is_free()) {
    r.reason = "HH^{2,0} of the family has ħ-torsion";
    return r;
  }

  // (δψ)(a, b) = m_0(ψa, b) + m_0(a, ψb) - ψ(m_0(a, b)) over the rationals
  auto unknowns = linear_cells(cat);
  auto equations = bilinear_cells(cat);
  std::map<std::pair<Word, int>, int> row_of;
  for (size_t i = 0; i < equations.size(); ++i) row_of[equations[i]] = static_cast<int>(i);
  const MapTable& m0 = r.m0.get(2);
  ExactMatrix delta(static_cast<int>(equations.size()), static_cast<int>(unknowns.size()));
  for (size_t col = 0; col < unknowns.size(); ++col) {
    auto [i, o] = unknowns[col];
    MapTable psi{{Word{i}, Vec{{o, Scalar(1)}}}};
    for (const auto& w : cat.composable_words(2)) {
      Vec v;
      if (w[0] == i) add_scaled(v, apply_bilinear(m0, Vec{{o, Scalar(1)}}, Vec{{w[1], Scalar(1)}}), Scalar(1));
      if (w[1] == i) add_scaled(v, apply_bilinear(m0, Vec{{w[0], Scalar(1)}}, Vec{{o, Scalar(1)}}), Scalar(1));
      auto it = m0.find(w);
      if (it != m0.end()) add_scaled(v, apply_linear(psi, it->second), Scalar(-1));
      for (const auto& [out, c] : v)
        if (!c.is_zero()) delta.add(row_of.at({w, out}), static_cast<int>(col), c);
    }
  }

  AInfCategory current = family;
  current.m = strict_gauge_action(family, identity_map(cat), max_order);
  r.gauge = identity_map(cat);
  const RingDescriptor q = RingDescriptor::rationals();
  for (int order = 1; order <= max_order; ++order) {
    MapTable mr = coefficient_table(current.m.get(2), order);
    if (mr.empty()) continue;
    coeff::Column rhs(equations.size());
    for (const auto& [w, row] : mr)
      for (const auto& [o, c] : row) rhs[static_cast<size_t>(row_of.at({w, o}))] = c;
    auto sol = coeff::solve_linear(delta, rhs, q);
    if (!sol.solvable()) {
      r.obstruction_order = order;
      r.obstruction = std::move(mr);
      r.certificate = sol.certificate;
      r.reason = "[m_" + std::to_string(order) + "] is not a Hochschild coboundary of m_0";
      return r;
    }
    TrivializationStep step{order, {}};
    for (size_t col = 0; col < unknowns.size(); ++col)
      if (!(*sol.solution)[col].is_zero())
        add_to(step.psi, Word{unknowns[col].first}, unknowns[col].second, (*sol.solution)[col]);
    // φ = id - ψ ħ^order
    MapTable phi = identity_map(cat);
    Scalar h_r(coeff::Poly::monomial(-1, order));
    add_scaled(phi, step.psi, h_r);
    prune(phi);
    current.m = strict_gauge_action(current, phi, max_order);
    r.gauge = compose_linear(r.gauge, phi, max_order);
    r.steps.push_back(std::move(step));
  }
  MultiplicationFamily m0_poly = r.m0;
  if (!(current.m == m0_poly)) throw Error("trivialization left higher ħ-orders behind");
  r.trivialized = true;
  r.reason = "m_ħ is gauge equivalent to m_0 modulo ħ^" + std::to_string(max_order + 1);
  return r;
}

GaugedFamily gauged_family(const CatalogueEntry& base, uint64_t seed, int max_order) {
  const auto& cat0 = base.structure.cat;
  if (!cat0.ring.is_field() || cat0.ring.has_variable())
    throw UnsupportedRing("gauged families start from a structure over the rationals");
  std::mt19937_64 gen(seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); };
  GaugedFamily g;
  g.family.cat = cat0;
  g.family.cat.ring = RingDescriptor::polynomials();
  g.family.m = base.structure.m;
  g.phi = identity_map(cat0);
  auto cells = linear_cells(cat0);
  for (int k = 1; k <= 3; ++k)
    for (const auto& [i, o] : cells)
      if (uniform(0, 2) == 0) {
        int v = uniform(1, 2) * (uniform(0, 1) ? 1 : -1);
        add_to(g.phi, Word{i}, o, Scalar(coeff::Poly::monomial(v, k)));
      }
  prune(g.phi);
  g.family.m = strict_gauge_action(g.family, g.phi, max_order);
  return g;
}

TwistedEntry hbar_twisted_family(const CatalogueEntry& base, uint64_t seed, int max_weight) {
  CatalogueEntry lifted = base;
  lifted.structure.cat.ring = RingDescriptor::polynomials();
  lifted.name = base.name + "[ħ]";
  std::mt19937_64 gen(seed ^ 0x5bd1e995u);
  Coderivation c = random_gauge(lifted.structure.cat, seed, max_weight);
  for (auto& [w, row] : c.comps)
    for (auto& [o, x] : row) x = x * Scalar(coeff::Poly::monomial(1, std::uniform_int_distribution<int>(0, 2)(gen)));
  TwistedEntry t;
  t.gauge = c;
  t.isotopy = exp_cofunctor(lifted.structure.cat, c, max_weight);
  t.entry = lifted;
  t.entry.name = lifted.name + "~" + std::to_string(seed);
  t.entry.description = "ħ-twist of " + base.name;
  t.entry.structure.m = transport(lifted.structure.cat, lifted.structure.m, t.isotopy, max_weight);
  t.entry.witness_weight.reset();
  return t;
}

}  // namespace ainf
