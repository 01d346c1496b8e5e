#include "ainf/report.hpp"

#include <algorithm>
#include <sstream>

#include "ainf/error.hpp"
#include "ainf/hochschild.hpp"
#include "ainf/kaledin.hpp"
#include "ainf/transfer.hpp"

namespace ainf::report {

using coeff::RingDescriptor;

namespace {

constexpr size_t kMaxListed = 50;

Json header(const char* command, const io::InputDocument& doc) {
  Json j;
  j["command"] = command;
  j["input"] = doc.name.empty() ? "<document>" : doc.name;
  j["ring"] = doc.structure.cat.ring.name();
  j["summary"] = "";
  return j;
}

Json violations_json(const CategoryPresentation& cat, const std::vector<RelationViolation>& v) {
  Json a = Json::array();
  for (size_t i = 0; i < v.size() && i < kMaxListed; ++i) {
    Json e;
    e["arity"] = v[i].arity;
    e["input"] = cat.basis.word_name(v[i].word);
    MapTable t{{v[i].word, v[i].residue}};
    e["residue"] = io::map_table_to_json(cat, t);
    a.push_back(std::move(e));
  }
  return a;
}

Json multiplications_json(const CategoryPresentation& cat, const MultiplicationFamily& m) {
  Json j;
  for (const auto& [arity, t] : m.components) j[std::to_string(arity)] = io::map_table_to_json(cat, t);
  return j;
}

// Minimal input for the Kaledin and certification commands.
struct MinimalInput {
  AInfCategory structure;
  bool via_minimal_model = false;
};

MinimalInput minimal_input(const io::InputDocument& doc, int max_weight) {
  if (doc.structure.m.is_minimal()) return {doc.structure, false};
  MinimalModel mm = minimal_model(doc.structure.cat, doc.structure.m, max_weight);
  return {mm.h, true};
}

}  // namespace

HochschildVariant parse_variant(const std::string& s) {
  if (s == "full") return HochschildVariant::full;
  if (s == "compact") return HochschildVariant::compact;
  if (s == "bigraded") return HochschildVariant::bigraded;
  if (s == "homology") return HochschildVariant::homology;
  throw SchemaError("unknown Hochschild variant '" + s + "'");
}

FamilyPipeline parse_pipeline(const std::string& s) {
  if (s == "generic") return FamilyPipeline::generic;
  if (s == "cy") return FamilyPipeline::cy;
  if (s == "trivialize") return FamilyPipeline::trivialize;
  if (s == "freeness") return FamilyPipeline::freeness;
  throw SchemaError("unknown family pipeline '" + s + "'");
}

Json check(const io::InputDocument& doc, int max_weight) {
  const auto& a = doc.structure;
  Json j = header("check", doc);
  ValidityReport r = check_structure(a.cat, a.m, max_weight);
  j["valid"] = r.valid;
  j["max_arity"] = r.max_arity;
  j["checked_through"] = r.checked_through;
  j["weight_complete"] = r.weight_complete;
  j["violation_count"] = r.violations.size();
  j["violations"] = violations_json(a.cat, r.violations);
  if (r.valid && r.weight_complete)
    j["summary"] = "valid, weight-complete at W=" + std::to_string(r.max_arity);
  else if (r.valid)
    j["summary"] = "valid through weight " + std::to_string(r.checked_through);
  else
    j["summary"] = "INVALID: " + std::to_string(r.violations.size()) + " relation violations";
  return j;
}

Json transfer(const io::InputDocument& doc, int max_weight) {
  const auto& a = doc.structure;
  Json j = header("transfer", doc);
  MinimalModel mm = minimal_model(a.cat, a.m, max_weight);
  const auto& h = mm.h;
  int top = 0;
  for (const auto& [arity, t] : h.m.components)
    if (!t.empty()) top = arity;
  j["summary"] = "minimal model: dim H = " + std::to_string(h.cat.dim()) + ", highest nonzero arity " +
                 std::to_string(top) + " through W=" + std::to_string(max_weight);
  j["max_weight"] = max_weight;
  j["provenance"] = mm.provenance;
  io::InputDocument out;
  out.name = doc.name.empty() ? "minimal model" : "minimal model of " + doc.name;
  out.structure = h;
  j["minimal_model"] = io::export_document(out);
  // F_i : H^{⊗i} -> C, inputs named in H and outputs in C
  Json comps = Json::array();
  for (const auto& [arity, t] : mm.f.components)
    for (const auto& [w, v] : t)
      for (const auto& [o, c] : v) {
        Json e;
        e["arity"] = arity;
        e["input"] = h.cat.basis.word_name(w);
        e["output"] = a.cat.basis[o].name;
        e["coefficient"] = a.cat.ring.format(c);
        comps.push_back(std::move(e));
      }
  j["functor"] = std::move(comps);
  j["valid"] = check_relations(h.cat, h.m, max_weight).empty();
  return j;
}

Json hochschild(const io::InputDocument& doc, int min_degree, int max_degree, int max_weight, HochschildVariant v) {
  const auto& a = doc.structure;
  const RingDescriptor& ring = a.cat.ring;
  Json j = header("hochschild", doc);
  j["max_weight"] = max_weight;
  std::ostringstream summary;
  switch (v) {
    case HochschildVariant::full:
    case HochschildVariant::compact: {
      const bool compact = v == HochschildVariant::compact;
      j["variant"] = compact ? "compact" : "full";
      Json degrees = Json::array();
      summary << (compact ? "HH_c" : "HH") << " ranks:";
      for (int n = min_degree; n <= max_degree; ++n) {
        HochschildResult r = compact ? hochschild_cohomology(compact_cochain_complex(a.cat, a.m, n - 2, n, max_weight),
                                                             ring, n)
                                     : hochschild_cohomology(a.cat, a.m, n, max_weight);
        Json e;
        e["degree"] = n;
        e["invariants"] = io::invariants_to_json(r.invariants, ring);
        Json wd;
        for (const auto& [k, d] : r.weight_dims) wd[std::to_string(k)] = d;
        e["weight_filtration"] = std::move(wd);
        Json classes = Json::array();
        for (const auto& c : r.classes) {
          Json cj;
          cj["weight_level"] = c.weight_level;
          cj["representative"] = io::coderivation_to_json(a.cat, c.representative);
          classes.push_back(std::move(cj));
        }
        e["classes"] = std::move(classes);
        degrees.push_back(std::move(e));
        summary << " " << n << ":" << r.invariants.free_rank;
        if (!r.invariants.divisors.empty()) summary << "+torsion";
      }
      j["degrees"] = std::move(degrees);
      break;
    }
    case HochschildVariant::bigraded: {
      j["variant"] = "bigraded";
      BigradedTable t = bigraded_cohomology(a.cat, a.m, max_weight);
      Json cells = Json::array();
      std::map<int, int> totals;
      for (const auto& [pq, inv] : t.cells) {
        Json e;
        e["p"] = pq.first;
        e["q"] = pq.second;
        e["total"] = pq.first + pq.second;
        e["truncated"] = pq.first >= max_weight;
        e["invariants"] = io::invariants_to_json(inv, ring);
        cells.push_back(std::move(e));
        totals[pq.first + pq.second] += inv.free_rank;
      }
      j["cells"] = std::move(cells);
      Json tj;
      for (const auto& [n, r] : totals) tj[std::to_string(n)] = r;
      j["totals"] = std::move(tj);
      summary << "bigraded table with " << t.cells.size() << " cells through p=" << max_weight;
      break;
    }
    case HochschildVariant::homology: {
      j["variant"] = "homology";
      HomologySlice s = homology_complex(a.cat, a.m, max_weight);
      auto inv = hochschild_homology(s, ring);
      Json degrees = Json::array();
      summary << "HH_* ranks:";
      for (const auto& [n, i] : inv) {
        if (n < min_degree || n > max_degree) continue;
        Json e;
        e["degree"] = n;
        e["invariants"] = io::invariants_to_json(i, ring);
        degrees.push_back(std::move(e));
        summary << " " << n << ":" << i.free_rank;
      }
      j["max_letters"] = max_weight;
      j["degrees"] = std::move(degrees);
      break;
    }
  }
  j["summary"] = summary.str();
  return j;
}

namespace {

Json cells_json(const CategoryPresentation& cat, const std::vector<CochainCell>& cells) {
  Json a = Json::array();
  for (const auto& c : cells) {
    Json e;
    Json w = Json::array();
    for (int l : c.word) w.push_back(cat.basis[l].name);
    e["input"] = std::move(w);
    e["output"] = cat.basis[c.out].name;
    a.push_back(std::move(e));
  }
  return a;
}

Json certificate_json(const coeff::UnsolvableCertificate& c, const RingDescriptor& ring) {
  Json j;
  j["functional"] = io::column_to_json(c.functional, ring);
  j["modulus"] = c.modulus ? Json(ring.format(*c.modulus)) : Json(nullptr);
  return j;
}

Json gauges_json(const CategoryPresentation& cat, const std::vector<Gauge>& gauges) {
  Json a = Json::array();
  for (const auto& g : gauges) {
    Json e;
    e["weight"] = g.weight;
    e["tau"] = io::coderivation_to_json(cat, g.tau);
    a.push_back(std::move(e));
  }
  return a;
}

Json hypotheses_json(const std::vector<TorsionReport>& hs, const RingDescriptor& ring) {
  Json a = Json::array();
  for (const auto& h : hs) {
    Json e;
    e["module"] = h.module;
    e["invariants"] = io::invariants_to_json(h.invariants, ring);
    e["localized"] = h.localized;
    e["free"] = h.is_free();
    a.push_back(std::move(e));
  }
  return a;
}

}  // namespace

Json kaledin(const io::InputDocument& doc, int truncation) {
  Json j = header("kaledin", doc);
  MinimalInput in = minimal_input(doc, truncation);
  const auto& cat = in.structure.cat;
  KaledinClass k = kaledin_cochain(cat, in.structure.m, truncation);
  j["truncation"] = truncation;
  j["via_minimal_model"] = in.via_minimal_model;
  j["closed"] = k.closed;
  j["in_w2"] = k.in_w2;
  j["vanishes"] = k.vanishes;
  j["ambient_hh2"] = io::invariants_to_json(k.ambient, cat.ring);
  j["cochain"] = io::coderivation_to_json(cat, k.cochain);
  j["primitive"] = k.primitive ? io::coderivation_to_json(cat, *k.primitive) : Json(nullptr);
  j["certificate"] = k.certificate ? certificate_json(*k.certificate, cat.ring) : Json(nullptr);
  j["summary"] = k.vanishes ? "Kaledin class vanishes through weight " + std::to_string(truncation)
                            : "Kaledin class is nonzero through weight " + std::to_string(truncation);
  if (doc.isotopy && !in.via_minimal_model) {
    Cofunctor f = suspend_functor(cat.basis, *doc.isotopy);
    MultiplicationFamily moved = transport(cat, in.structure.m, f, truncation);
    GaugeInvarianceReport g = gauge_invariance_check(cat, in.structure.m, moved, f, truncation);
    Json gj;
    gj["holds"] = g.holds();
    gj["residue"] = io::map_table_to_json(cat, g.residue);
    j["gauge_invariance"] = std::move(gj);
  }
  return j;
}

Json certify(const io::InputDocument& doc, int max_weight) {
  Json j = header("certify", doc);
  MinimalInput in = minimal_input(doc, max_weight);
  const auto& cat = in.structure.cat;
  const auto& m = in.structure.m;
  FormalityVerdict v = certify_formality(cat, m, max_weight);
  j["max_weight"] = max_weight;
  j["via_minimal_model"] = in.via_minimal_model;
  if (v.formal()) {
    const auto& c = *v.certificate;
    const bool ok = verify_certificate(cat, m, c);
    j["verdict"] = "formal";
    Json cj;
    cj["gauges"] = gauges_json(cat, c.gauges);
    cj["isotopy"] = io::cofunctor_to_json(cat, c.isotopy);
    cj["result"] = multiplications_json(cat, c.result);
    cj["checked_through"] = c.checked_through;
    cj["unconditional"] = c.unconditional;
    cj["verified"] = ok;
    j["certificate"] = std::move(cj);
    j["summary"] = "FORMAL through weight " + std::to_string(c.checked_through) +
                   (c.unconditional ? " (unconditional)" : "") + (ok ? ", certificate verified" : ", CERTIFICATE REJECTED");
  } else {
    const auto& w = *v.witness;
    const bool ok = verify_witness(cat, m, w);
    j["verdict"] = "non_formal";
    Json wj;
    wj["weight"] = w.weight;
    wj["gauges"] = gauges_json(cat, w.gauges);
    wj["obstruction"] = io::map_table_to_json(cat, w.obstruction);
    const auto& eq = w.verdict.equation;
    Json slice;
    slice["unknowns"] = cells_json(cat, eq.unknowns);
    slice["equations"] = cells_json(cat, eq.equations);
    slice["matrix"] = io::matrix_to_json(eq.matrix, cat.ring);
    slice["rhs"] = io::column_to_json(eq.rhs, cat.ring);
    wj["slice"] = std::move(slice);
    wj["certificate"] = w.verdict.certificate ? certificate_json(*w.verdict.certificate, cat.ring) : Json(nullptr);
    wj["denominator_only"] = w.verdict.denominator_only;
    wj["verified"] = ok;
    j["witness"] = std::move(wj);
    j["summary"] = "NON-FORMAL: witness at weight " + std::to_string(w.weight) + (ok ? "" : " (WITNESS REJECTED)");
  }
  return j;
}

Json family(const io::InputDocument& doc, FamilyPipeline p, int max_weight) {
  const auto& a = doc.structure;
  const auto& ring = a.cat.ring;
  Json j = header("family", doc);
  j["max_weight"] = max_weight;
  switch (p) {
    case FamilyPipeline::generic: {
      j["pipeline"] = "generic";
      PipelineReport r = generic_formality_pipeline(a, max_weight);
      j["verdict"] = to_string(r.verdict);
      j["reason"] = r.reason;
      j["hypotheses"] = hypotheses_json(r.hypotheses, ring);
      j["generic_formal"] = r.generic ? Json(r.generic->formal()) : Json(nullptr);
      j["direct_formal"] = r.direct ? Json(r.direct->formal()) : Json(nullptr);
      j["summary"] = "generic-fibre pipeline: " + to_string(r.verdict) + (r.reason.empty() ? "" : " (" + r.reason + ")");
      break;
    }
    case FamilyPipeline::cy: {
      j["pipeline"] = "cy";
      if (!doc.pairing) throw PreconditionFailed("the document has no pairing block");
      CYReport r = cy_pairing_check(a, *doc.pairing);
      j["degree"] = doc.pairing->degree;
      j["unimodular"] = r.unimodular;
      j["symmetric"] = r.symmetric;
      j["invariant"] = r.invariant;
      j["degree_ok"] = r.degree_ok;
      j["failures"] = r.failures;
      j["summary"] = std::string(r.valid() ? "valid" : "INVALID") + " Calabi-Yau pairing of degree " +
                     std::to_string(doc.pairing->degree);
      break;
    }
    case FamilyPipeline::trivialize: {
      j["pipeline"] = "trivialize";
      TrivializationResult r = deformation_trivialize(a, max_weight);
      j["trivialized"] = r.trivialized;
      j["reason"] = r.reason;
      j["max_order"] = r.max_order;
      j["hypotheses"] = hypotheses_json(r.hypotheses, ring);
      Json steps = Json::array();
      for (const auto& s : r.steps) {
        Json e;
        e["order"] = s.order;
        e["psi"] = io::map_table_to_json(a.cat, s.psi);
        steps.push_back(std::move(e));
      }
      j["steps"] = std::move(steps);
      j["gauge"] = io::map_table_to_json(a.cat, r.gauge);
      j["m0"] = multiplications_json(a.cat, r.m0);
      j["obstruction_order"] = r.obstruction_order ? Json(*r.obstruction_order) : Json(nullptr);
      j["obstruction"] = io::map_table_to_json(a.cat, r.obstruction);
      j["certificate"] = r.certificate ? certificate_json(*r.certificate, ring.fraction_field()) : Json(nullptr);
      j["summary"] = r.trivialized ? "trivialized through ħ-order " + std::to_string(r.max_order) + " with " +
                                         std::to_string(r.steps.size()) + " gauge steps"
                                   : "NOT trivialized: " + r.reason;
      break;
    }
    case FamilyPipeline::freeness: {
      j["pipeline"] = "freeness";
      // the cochain complex of HH^0 .. HH^3 through the truncation
      CochainSliceSpec spec = cochain_complex(a.cat, a.m, -1, 2, max_weight);
      FreeComplex c;
      for (const auto& [k, cells] : spec.bases) c.ranks[k] = static_cast<int>(cells.size());
      c.differential = spec.differential;
      FreenessReport r = freeness_from_fiber_dims(c);
      Json degrees = Json::array();
      for (const auto& [k, d] : r.degrees) {
        Json e;
        e["hh_degree"] = k + 1;
        e["dim_at_zero"] = d.at_zero;
        e["dim_generic"] = d.generic;
        e["snf"] = io::invariants_to_json(d.snf, ring);
        degrees.push_back(std::move(e));
      }
      j["degrees"] = std::move(degrees);
      j["fibers_agree"] = r.fibers_agree;
      j["snf_free_at_origin"] = r.snf_free_at_origin;
      j["snf_free"] = r.snf_free;
      j["consistent"] = r.consistent();
      Json jumps = Json::array();
      for (int k : r.jump_degrees) jumps.push_back(k + 1);
      j["jump_hh_degrees"] = std::move(jumps);
      Json tor = Json::array();
      for (const auto& t : r.torsion) tor.push_back(ring.format(t));
      j["torsion"] = std::move(tor);
      j["summary"] = std::string(r.fibers_agree ? "fibre dimensions agree" : "fibre dimensions jump") +
                     (r.consistent() ? ", consistent with SNF" : ", INCONSISTENT with SNF");
      break;
    }
  }
  return j;
}

Json catalogue(const std::string& name) {
  Json j;
  j["command"] = "catalogue";
  if (name.empty()) {
    j["entries"] = catalogue_names();
    j["summary"] = std::to_string(catalogue_names().size()) + " catalogue entries";
    return j;
  }
  CatalogueEntry e = catalogue_lookup(name);
  j["input"] = e.name;
  auto failures = verify_entry(e);
  j["summary"] = e.name + ": " + e.description + (failures.empty() ? "" : " (CLAIMS FAIL)");
  Json claims;
  claims["minimal"] = e.minimal;
  claims["formal"] = e.formal ? Json(*e.formal) : Json(nullptr);
  claims["cy_degree"] = e.cy_degree ? Json(*e.cy_degree) : Json(nullptr);
  claims["witness_weight"] = e.witness_weight ? Json(*e.witness_weight) : Json(nullptr);
  claims["verified"] = failures.empty();
  claims["failures"] = failures;
  j["claims"] = std::move(claims);
  j["document"] = io::export_document(io::from_entry(e));
  return j;
}

namespace {

constexpr size_t kMaxTextItems = 12;

bool is_scalar(const Json& v) { return !v.is_object() && !v.is_array(); }

std::string scalar_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void render(const Json& v, int indent, std::ostringstream& out) {
  const std::string pad(static_cast<size_t>(indent), ' ');
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) {
      if (is_scalar(x) || (x.is_array() && x.empty()) || (x.is_object() && x.empty())) {
        out << pad << k << ": " << (is_scalar(x) ? scalar_text(x) : x.dump()) << "\n";
      } else if (x.is_array() && !std::all_of(x.begin(), x.end(), is_scalar) && x.size() > kMaxTextItems) {
        out << pad << k << ": " << x.size() << " entries (full list with --format json)\n";
      } else if (x.is_array() && std::all_of(x.begin(), x.end(), is_scalar) && x.size() > 4 * kMaxTextItems) {
        out << pad << k << ": " << x.size() << " values (full list with --format json)\n";
      } else if (x.is_array() && std::all_of(x.begin(), x.end(), is_scalar)) {
        out << pad << k << ":";
        for (const auto& s : x) out << " " << scalar_text(s);
        out << "\n";
      } else {
        out << pad << k << ":\n";
        render(x, indent + 2, out);
      }
    }
  } else if (v.is_array()) {
    for (const auto& x : v) {
      if (is_scalar(x)) {
        out << pad << "- " << scalar_text(x) << "\n";
      } else if (x.is_array() && std::all_of(x.begin(), x.end(), is_scalar)) {
        out << pad << "-";
        for (const auto& s : x) out << " " << scalar_text(s);
        out << "\n";
      } else {
        out << pad << "-\n";
        render(x, indent + 2, out);
      }
    }
  }
}

}  // namespace

std::string render_text(const Json& report) {
  std::ostringstream out;
  out << report.value("summary", std::string()) << "\n";
  Json rest = report;
  rest.erase("summary");
  render(rest, 2, out);
  return out.str();
}

}  // namespace ainf::report
