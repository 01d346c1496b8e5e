// Acceptance gate: one PASS/FAIL line per criterion. All comparisons are
// exact; there are no tolerances to pin.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>

#include "ainf/acat.hpp"
#include "ainf/catalogue.hpp"
#include "ainf/error.hpp"
#include "ainf/family.hpp"
#include "ainf/hochschild.hpp"
#include "ainf/kaledin.hpp"
#include "ainf/transfer.hpp"
#include "support/oracles.hpp"

using namespace ainf;
using coeff::RingDescriptor;
using coeff::RingMap;
using testsupport::hbar;
using testsupport::Rng;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string str(size_t n) { return std::to_string(n); }

// Adds ±1 to one degree-compatible entry of m_2 or m_3.
MultiplicationFamily corrupt(const CategoryPresentation& cat, MultiplicationFamily m, Rng& rng) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    int k = rng.uniform(2, 3);
    auto words = cat.composable_words(k);
    if (words.empty()) continue;
    const Word& w = words[static_cast<size_t>(rng.uniform(0, static_cast<int>(words.size()) - 1))];
    std::vector<int> outs;
    for (int o : cat.hom(cat.basis.word_source(w), cat.basis.word_target(w)))
      if (cat.basis.degree(o) == cat.basis.word_degree(w) + 2 - k) outs.push_back(o);
    if (outs.empty()) continue;
    int o = outs[static_cast<size_t>(rng.uniform(0, static_cast<int>(outs.size()) - 1))];
    add_to(m.components[k], w, o, rng.coin() ? Scalar(1) : Scalar(-1));
    m.normalize();
    return m;
  }
  return m;
}

Outcome lefevre_hasegawa() {
  Rng rng(1001);
  size_t mismatches = 0, invalid = 0, untouched = 0, corrupted = 0;
  // 50 structures as generated and 50 with an entry of m_2 or m_3 changed;
  // seeds without a degree-compatible slot are skipped
  for (uint64_t seed = 0; (untouched < 50 || corrupted < 50) && seed < 1000; ++seed) {
    auto e = random_structure(seed, RandomBounds{3, 3, 6});
    const auto& cat = e.structure.cat;
    MultiplicationFamily m = e.structure.m;
    if (corrupted < 50 && (seed % 2 || untouched == 50)) {
      m = corrupt(cat, m, rng);
      if (m == e.structure.m) continue;
      ++corrupted;
    } else {
      ++untouched;
    }
    bool rel = check_relations(cat, m, 6).empty();
    bool sq = square_violations(cat, bar_codifferential(cat.basis, m), 6).empty();
    if (rel != sq) ++mismatches;
    if (!rel) ++invalid;
  }
  return {mismatches == 0 && untouched == 50 && corrupted == 50 && invalid > 0,
          str(untouched + corrupted) + " structures (" + str(corrupted) + " corrupted, " + str(invalid) +
              " violate the relations), " + str(mismatches) + " disagreements through weight 6"};
}

Outcome heisenberg() {
  auto h = heisenberg_dg();
  const auto& cat = h.structure.cat;
  const auto& m = h.structure.m;
  ContractionData c = contraction_from_dg(cat, m);
  MinimalModel mm = transfer(cat, m, c, 4);
  const auto& H = mm.h.cat;
  int x = *H.element_index("[x]"), y = *H.element_index("[y]"), xz = *H.element_index("[xz]");
  Vec m3 = mm.h.m.get(3).count(Word{x, x, y}) ? mm.h.m.get(3).at(Word{x, x, y}) : Vec{};
  MasseyProduct oracle = massey_oracle(cat, m, c, Vec{{x, Scalar(1)}}, Vec{{x, Scalar(1)}}, Vec{{y, Scalar(1)}});
  if (!oracle.defined) return {false, "Massey oracle undefined: " + oracle.reason};
  Vec neg;
  add_scaled(neg, m3, Scalar(-1));
  // m_3 agrees with the Massey product up to the usual overall sign
  bool matches = equal_modulo(m3, oracle.value, oracle.indeterminacy, H.dim()) ||
                 equal_modulo(neg, oracle.value, oracle.indeterminacy, H.dim());
  bool oracle_xz = oracle.value == Vec{{xz, Scalar(1)}};
  bool nonzero = !equal_modulo(oracle.value, Vec{}, oracle.indeterminacy, H.dim());

  FormalityVerdict v = certify_formality(mm.h.cat, mm.h.m, 4);
  if (!v.witness) return {false, "no witness"};
  const auto& w = *v.witness;
  const auto& eq = w.verdict.equation;
  bool cert = w.verdict.certificate && coeff::verify_certificate(eq.matrix, eq.rhs, *w.verdict.certificate, H.ring);
  bool replay = verify_witness(mm.h.cat, mm.h.m, w);
  std::ostringstream d;
  d << "m_3([x],[x],[y]) = " << (m3.empty() ? "0" : H.ring.format(m3.begin()->second) + "·" + H.basis.elements[static_cast<size_t>(m3.begin()->first)].name)
    << ", Massey oracle " << (oracle_xz ? "[xz]" : "?") << (nonzero ? " (nonzero mod indeterminacy)" : " (ZERO)")
    << "; witness at weight " << w.weight << ", certificate " << (cert ? "verified" : "REJECTED") << " against the "
    << eq.matrix.rows() << "x" << eq.matrix.cols() << " slice";
  return {matches && oracle_xz && nonzero && w.weight == 3 && cert && replay, d.str()};
}

Outcome formality_round_trip() {
  const std::vector<CatalogueEntry> bases{exterior_algebra(1), exterior_algebra(2), exterior_algebra(3),
                                          quiver_dg_category(2, 0), quiver_dg_category(3, 0)};
  size_t ok = 0, gauges = 0, nontrivial = 0;
  for (uint64_t i = 0; i < 50; ++i) {
    const auto& base = bases[i % bases.size()];
    if (base.structure.cat.dim() > 12) return {false, base.name + " exceeds total dim 12"};
    auto t = random_isotopy_twist(base, 500 + i, 6);
    const auto& cat = t.entry.structure.cat;
    const auto& m = t.entry.structure.m;
    if (m.max_arity() > 2) ++nontrivial;
    FormalityVerdict v = certify_formality(cat, m, 6);
    if (!v.formal()) continue;
    MultiplicationFamily moved = transport(cat, m, v.certificate->isotopy, 6);
    moved.normalize();
    bool zero = true;
    for (int k = 3; k <= 6; ++k) zero = zero && !moved.has(k);
    gauges += v.certificate->gauges.size();
    if (zero && verify_certificate(cat, m, *v.certificate)) ++ok;
  }
  return {ok == 50, str(ok) + "/50 twists certified with m_3..m_6 = 0 after the composed isotopy (" +
                        str(nontrivial) + " twists had higher products, " + str(gauges) + " gauges)"};
}

Outcome gauge_invariance() {
  // Bases with nonzero higher products, so that k_m itself is nonzero.
  std::vector<CatalogueEntry> bases{heisenberg_minimal(6)};
  for (uint64_t s = 0; bases.size() < 6 && s < 200; ++s) {
    auto e = random_structure(s, RandomBounds{3, 3, 6});
    if (e.structure.m.max_arity() >= 3) bases.push_back(std::move(e));
  }
  size_t holds = 0, nonzero_k = 0, retries = 0;
  for (uint64_t i = 0; i < 20; ++i) {
    const auto& base = bases[i % bases.size()];
    const auto& cat = base.structure.cat;
    uint64_t seed = 2000 + i;
    auto t = random_isotopy_twist(base, seed, 6);
    // an isotopy that fixes m exercises nothing; reseed deterministically
    while (t.entry.structure.m == base.structure.m && retries < 200) {
      ++retries;
      seed += 97;
      t = random_isotopy_twist(base, seed, 6);
    }
    auto r = gauge_invariance_check(cat, base.structure.m, t.entry.structure.m, t.isotopy, 6);
    if (r.holds()) ++holds;
    if (!r.transported.is_zero()) ++nonzero_k;
  }
  return {holds == 20 && nonzero_k > 0,
          str(holds) + "/20 isotopies satisfy CC(F)(k_m) - k_m' = [d', dF F^-1] through weight 6 (" +
              str(nonzero_k) + " with nonzero k_m, " + str(bases.size()) + " bases, " + str(retries) + " reseeds)"};
}

Outcome differentials_square_to_zero() {
  std::vector<CatalogueEntry> entries;
  for (const auto& n : catalogue_names()) entries.push_back(catalogue_lookup(n));
  for (uint64_t s = 0; s < 100; ++s) entries.push_back(random_structure(s, RandomBounds{2, 2, 4}));
  const int W = 3;
  size_t failures = 0, products = 0;
  std::string first;
  for (const auto& e : entries) {
    const auto& cat = e.structure.cat;
    const auto& m = e.structure.m;
    auto [lo, hi] = cochain_degree_range(cat, W);
    auto spec = cochain_complex(cat, m, lo, hi, W);
    auto fail = [&](const std::string& what) {
      if (!failures++) first = e.name + ": " + what;
    };
    for (const auto& [k, dk] : spec.differential) {
      auto next = spec.differential.find(k + 1);
      if (next == spec.differential.end()) continue;
      ++products;
      if (!(next->second * dk).is_zero()) fail("d_Hoch^2 at " + std::to_string(k));
    }
    auto hom = homology_complex(cat, m, W);
    for (const auto& [k, bk] : hom.boundary) {
      auto next = hom.boundary.find(k + 1);
      if (next == hom.boundary.end()) continue;
      ++products;
      if (!(next->second * bk).is_zero()) fail("boundary^2 at " + std::to_string(k));
    }
  }
  return {failures == 0 && products > 0, str(entries.size()) + " structures, " + str(products) +
                                             " composites checked, " + str(failures) + " nonzero" +
                                             (first.empty() ? "" : " (first: " + first + ")")};
}

std::vector<CatalogueEntry> polynomial_examples() {
  std::vector<CatalogueEntry> out;
  for (uint64_t s = 0; s < 3; ++s) out.push_back(hbar_twisted_family(exterior_algebra(1), s, 4).entry);
  for (uint64_t s = 0; s < 3; ++s) out.push_back(hbar_twisted_family(exterior_algebra(2), s, 4).entry);
  out.push_back(torsion_family());
  // gauged_family is conjugate to m_0 only modulo a power of h, so it is not
  // a structure over poly(h) and does not belong here
  out.push_back(hbar_twisted_family(quiver_dg_category(3, 0), 0, 4).entry);
  CatalogueEntry x = exterior_algebra(2);
  x.structure = testsupport::lift(x.structure);
  out.push_back(x);
  CatalogueEntry q = quiver_dg_category(3, 0);
  q.structure = testsupport::lift(q.structure);
  out.push_back(q);
  return out;
}

Outcome base_change() {
  auto examples = polynomial_examples();
  size_t frac_ok = 0, eval_ok = 0;
  for (const auto& e : examples) {
    const auto& ring = e.structure.cat.ring;
    auto f = base_change_commutation_check(e.structure, RingMap::fraction_field_embedding(ring), 0, 3, 4);
    auto z = base_change_commutation_check(e.structure, RingMap::evaluation(ring, 0), 0, 3, 4);
    if (f.flat && f.chain_level_equal && f.invariants_match) ++frac_ok;
    if (!z.flat && z.chain_level_equal) ++eval_ok;
  }
  size_t n = examples.size();
  return {n == 10 && frac_ok == n && eval_ok == n,
          str(n) + " examples over poly(h): fraction field " + str(frac_ok) + " chain-level and invariants equal, " +
              "h = 0 " + str(eval_ok) + " chain-level equal"};
}

Outcome family_criteria() {
  std::ostringstream d;
  bool pass = true;

  size_t agree = 0;
  const std::vector<CatalogueEntry> bases{exterior_algebra(1), exterior_algebra(2)};
  for (uint64_t s = 0; s < 10; ++s) {
    auto t = hbar_twisted_family(bases[s % 2], 300 + s, 4);
    const auto& a = t.entry.structure;
    auto r = generic_formality_pipeline(a, 4);
    bool free = !r.hypotheses.empty();
    for (const auto& h : r.hypotheses) free = free && h.is_free();
    auto direct = certify_formality(a.cat, a.m, 4);
    bool ok = r.verdict == PipelineVerdict::formal && r.generic && r.generic->formal() && free && direct.formal() &&
              verify_certificate(a.cat, a.m, *direct.certificate);
    if (ok) ++agree;
  }
  pass = pass && agree == 10;
  d << "(a) " << agree << "/10 twisted families certified, direct certification agrees";

  auto torsion = torsion_family();
  auto tr = generic_formality_pipeline(torsion.structure, 4);
  std::vector<Scalar> divisors;
  for (const auto& h : tr.hypotheses)
    for (const auto& q : h.invariants.divisors) divisors.push_back(q);
  bool abstains = tr.verdict == PipelineVerdict::abstain && divisors == std::vector<Scalar>{hbar()};
  pass = pass && abstains;
  d << "; (b) torsion family " << (abstains ? "abstains with divisor h" : "did NOT abstain with divisor h");

  size_t consistent = 0, jumps = 0;
  for (uint64_t s = 0; s < 50; ++s) {
    auto c = testsupport::random_complex(4000 + s);
    auto r = freeness_from_fiber_dims(c.complex);
    bool truth = c.torsion_at_origin.empty();
    if (r.consistent() && r.fibers_agree == truth) ++consistent;
    if (!truth) ++jumps;
  }
  pass = pass && consistent == 50;
  d << "; (c) " << consistent << "/50 complexes: fibre dimensions, SNF and construction agree (" << jumps
    << " with torsion at 0)";
  return {pass, d.str()};
}

Outcome deformation() {
  const std::vector<CatalogueEntry> bases{exterior_algebra(1), exterior_algebra(2), quiver_dg_category(2, 0),
                                          quiver_dg_category(3, 0)};
  size_t ok = 0;
  std::string first;
  for (uint64_t i = 0; i < 20; ++i) {
    const auto& base = bases[i % bases.size()];
    auto g = gauged_family(base, 600 + i, 8);
    auto r = deformation_trivialize(g.family, 8);
    AInfCategory lifted = testsupport::lift(base.structure);
    // the recovered gauge takes the family back to m_0, and the seeded one
    // takes m_0 to the family
    bool good = r.trivialized && r.m0 == lifted.m && strict_gauge_action(g.family, r.gauge, 8) == lifted.m &&
                strict_gauge_action(lifted, g.phi, 8) == g.family.m;
    if (good)
      ++ok;
    else if (first.empty())
      first = base.name + " seed " + std::to_string(600 + i) + (r.trivialized ? "" : ": " + r.reason);
  }
  return {ok == 20, str(ok) + "/20 gauged families trivialized through h^8, substitution exact" +
                        (first.empty() ? "" : " (first failure: " + first + ")")};
}

Outcome smith() {
  Rng rng(7007);
  size_t ok = 0;
  std::string first;
  for (int i = 0; i < 200; ++i) {
    bool integer = i < 100;
    int rows = rng.uniform(1, integer ? 7 : 5), cols = rng.uniform(1, integer ? 7 : 5);
    auto a = integer ? rng.integer_matrix(rows, cols) : rng.poly_matrix(rows, cols);
    auto ring = integer ? RingDescriptor::integers() : RingDescriptor::polynomials("ħ");
    auto f = testsupport::smith_failures(a, ring);
    if (f.empty())
      ++ok;
    else if (first.empty())
      first = f.front();
  }
  return {ok == 200, str(ok) + "/200 matrices (100 over Z, 100 over poly(h)): UAV = D, divisibility, unit " +
                         "determinants, rank" + (first.empty() ? "" : " (first failure: " + first + ")")};
}

#ifdef AINF_CLI
std::pair<std::string, int> run(const std::string& command, int threads) {
  std::string full = "AINF_THREADS=" + std::to_string(threads) + " '" AINF_CLI "' " + command + " 2>&1";
  FILE* p = popen(full.c_str(), "r");
  if (!p) return {"", -1};
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  return {out, pclose(p)};
}
#endif

Outcome cli_determinism() {
#ifndef AINF_CLI
  return {false, "ainf CLI not built"};
#else
  std::vector<std::string> commands{"catalogue"};
  for (const auto& name : catalogue_names()) {
    std::string in = "'catalogue:" + name + "'";
    commands.push_back("--format json catalogue '" + name + "'");
    commands.push_back("--format json check " + in);
    commands.push_back("--format json certify " + in + " --max-weight 4");
    commands.push_back("--format json hochschild " + in + " --degrees 0:2 --weights 3");
    commands.push_back("--format json kaledin " + in + " --truncation 4");
    commands.push_back("certify " + in);
  }
  commands.push_back("--format json family catalogue:torsion_family --pipeline generic");
  commands.push_back("--format json family catalogue:torsion_family --pipeline freeness");
  size_t same = 0, nonempty = 0;
  std::string first;
  for (const auto& c : commands) {
    auto a = run(c, 1), b = run(c, 1), t = run(c, 4);
    if (a == b && a == t)
      ++same;
    else if (first.empty())
      first = c;
    if (!a.first.empty()) ++nonempty;
  }
  return {same == commands.size() && nonempty == commands.size(),
          str(same) + "/" + str(commands.size()) + " commands byte-identical across two runs and AINF_THREADS=1,4" +
              (first.empty() ? "" : " (first difference: " + first + ")")};
#endif
}

}  // namespace

// With arguments, runs only the listed criteria (by number).
int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"LH equivalence", lefevre_hasegawa},
      {"Heisenberg Massey product and witness", heisenberg},
      {"exp-twist formality round trip", formality_round_trip},
      {"Kaledin gauge invariance", gauge_invariance},
      {"d_Hoch^2 = 0 and boundary^2 = 0", differentials_square_to_zero},
      {"base change", base_change},
      {"family criteria", family_criteria},
      {"deformation trivialization", deformation},
      {"Smith normal form", smith},
      {"CLI determinism", cli_determinism},
  };
  int failed = 0;
  auto start = std::chrono::steady_clock::now();
  std::vector<bool> selected(criteria.size(), argc == 1);
  for (int a = 1; a < argc; ++a) {
    size_t k = std::strtoul(argv[a], nullptr, 10);
    if (k >= 1 && k <= criteria.size()) selected[k - 1] = true;
  }
  int run_count = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    if (!selected[i]) continue;
    ++run_count;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("%s [%zu] %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d/%d criteria passed in %.1fs\n", run_count - failed, run_count, total);
  return failed == 0 ? 0 : 1;
}
