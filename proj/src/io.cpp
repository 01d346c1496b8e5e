#include "ainf/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "ainf/error.hpp"

namespace ainf::io {

using coeff::RingDescriptor;
using coeff::RingKind;

namespace {

void require_object(const Json& j, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
}

void allow_keys(const Json& j, std::initializer_list<const char*> keys, const std::string& where) {
  std::set<std::string> ok(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items())
    if (!ok.count(k)) throw SchemaError(where + ": unknown key '" + k + "'");
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(where + ": missing key '" + key + "'");
  return *it;
}

std::string get_string(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_string()) throw SchemaError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

int get_int(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_number_integer()) throw SchemaError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

const Json& get_array(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_array()) throw SchemaError(where + "." + key + ": expected an array");
  return v;
}

int lookup_object(const CategoryPresentation& cat, const Json& v, const std::string& where) {
  if (!v.is_string()) throw SchemaError(where + ": expected an object name");
  auto i = cat.object_index(v.get<std::string>());
  if (!i) throw SchemaError(where + ": unknown object '" + v.get<std::string>() + "'");
  return *i;
}

int lookup_element(const CategoryPresentation& cat, const Json& v, const std::string& where) {
  if (!v.is_string()) throw SchemaError(where + ": expected a basis element name");
  auto i = cat.element_index(v.get<std::string>());
  if (!i) throw SchemaError(where + ": unknown basis element '" + v.get<std::string>() + "'");
  return *i;
}

Scalar parse_coefficient(const CategoryPresentation& cat, const Json& j, const std::string& where) {
  const Json& v = field(j, "coefficient", where);
  if (v.is_number_integer()) return Scalar(v.get<long>());
  if (!v.is_string()) throw SchemaError(where + ".coefficient: expected an exact string such as \"3/4\"");
  return cat.ring.parse(v.get<std::string>());
}

// One {arity, objects, input, output, coefficient} entry of a map of degree
// `degree_offset` - arity (plus the degree of the outputs).
void parse_entry(const CategoryPresentation& cat, const Json& e, int degree_offset, MapTable& into,
                 const std::string& where) {
  require_object(e, where);
  allow_keys(e, {"arity", "objects", "input", "output", "coefficient"}, where);
  const int arity = get_int(e, "arity", where);
  const Json& input = get_array(e, "input", where);
  if (arity < 1 || static_cast<int>(input.size()) != arity)
    throw SchemaError(where + ": arity " + std::to_string(arity) + " does not match the input length");
  Word w;
  for (size_t i = 0; i < input.size(); ++i)
    w.push_back(lookup_element(cat, input[i], where + ".input[" + std::to_string(i) + "]"));
  if (!cat.basis.composable(w)) throw SchemaError(where + ": input word " + cat.basis.word_name(w) + " is not composable");
  if (e.contains("objects")) {
    const Json& chain = get_array(e, "objects", where);
    if (chain.size() != w.size() + 1) throw SchemaError(where + ".objects: expected arity + 1 objects");
    for (size_t i = 0; i < w.size(); ++i) {
      int t = lookup_object(cat, chain[i], where + ".objects");
      int s = lookup_object(cat, chain[i + 1], where + ".objects");
      if (cat.basis.target(w[i]) != t || cat.basis.source(w[i]) != s)
        throw SchemaError(where + ".objects: chain does not match the input word");
    }
  }
  const int out = lookup_element(cat, field(e, "output", where), where + ".output");
  if (cat.basis.source(out) != cat.basis.word_source(w) || cat.basis.target(out) != cat.basis.word_target(w))
    throw SchemaError(where + ": output " + cat.basis[out].name + " has the wrong source or target");
  if (cat.basis.degree(out) != cat.basis.word_degree(w) + degree_offset - arity)
    throw SchemaError(where + ": degree of " + cat.basis[out].name + " does not match " + cat.basis.word_name(w));
  Scalar c = parse_coefficient(cat, e, where);
  if (into.count(w) && into[w].count(out)) throw SchemaError(where + ": duplicate entry");
  if (!c.is_zero()) into[w][out] = c;
}

}  // namespace

RingDescriptor ring_from_json(const Json& j) {
  require_object(j, "ring");
  allow_keys(j, {"kind", "variable"}, "ring");
  std::string kind = get_string(j, "kind", "ring");
  std::string var = j.contains("variable") ? get_string(j, "variable", "ring") : "ħ";
  if (var.empty()) throw SchemaError("ring.variable: empty name");
  if (kind == "rationals") return RingDescriptor::rationals();
  if (kind == "integers") return RingDescriptor::integers();
  if (kind == "polynomials") return RingDescriptor::polynomials(var);
  if (kind == "rational_functions") return RingDescriptor::rational_functions(var);
  throw SchemaError("ring.kind: unknown ring '" + kind + "'");
}

Json ring_to_json(const RingDescriptor& ring) {
  Json j;
  switch (ring.kind) {
    case RingKind::rationals: j["kind"] = "rationals"; break;
    case RingKind::integers: j["kind"] = "integers"; break;
    case RingKind::polynomials: j["kind"] = "polynomials"; break;
    case RingKind::rational_functions: j["kind"] = "rational_functions"; break;
  }
  if (ring.has_variable()) j["variable"] = ring.variable;
  return j;
}

InputDocument parse_document(const Json& doc) {
  require_object(doc, "document");
  allow_keys(doc, {"format", "name", "description", "ring", "objects", "basis", "multiplications", "isotopy", "pairing"},
             "document");
  if (doc.contains("format") && doc["format"] != "ainf-input/1")
    throw SchemaError("document.format: expected \"ainf-input/1\"");
  InputDocument d;
  if (doc.contains("name")) d.name = get_string(doc, "name", "document");
  if (doc.contains("description")) d.description = get_string(doc, "description", "document");
  CategoryPresentation& cat = d.structure.cat;
  cat.ring = ring_from_json(field(doc, "ring", "document"));

  const Json& objects = get_array(doc, "objects", "document");
  if (objects.empty()) throw SchemaError("document.objects: at least one object is required");
  for (const auto& o : objects) {
    if (!o.is_string()) throw SchemaError("document.objects: expected names");
    if (cat.object_index(o.get<std::string>())) throw SchemaError("document.objects: duplicate '" + o.get<std::string>() + "'");
    cat.add_object(o.get<std::string>());
  }
  const Json& basis = get_array(doc, "basis", "document");
  for (size_t i = 0; i < basis.size(); ++i) {
    const std::string where = "basis[" + std::to_string(i) + "]";
    const Json& b = basis[i];
    require_object(b, where);
    allow_keys(b, {"name", "degree", "source", "target"}, where);
    std::string name = get_string(b, "name", where);
    if (name.empty()) throw SchemaError(where + ".name: empty");
    if (cat.element_index(name)) throw SchemaError(where + ": duplicate name '" + name + "'");
    cat.add_element(name, get_int(b, "degree", where), lookup_object(cat, field(b, "source", where), where + ".source"),
                    lookup_object(cat, field(b, "target", where), where + ".target"));
  }
  const Json& mults = get_array(doc, "multiplications", "document");
  for (size_t i = 0; i < mults.size(); ++i) {
    const std::string where = "multiplications[" + std::to_string(i) + "]";
    require_object(mults[i], where);
    int arity = get_int(mults[i], "arity", where);
    if (arity < 1) throw SchemaError(where + ".arity: must be positive");
    parse_entry(cat, mults[i], 2, d.structure.m.components[arity], where);
  }
  d.structure.m.normalize();

  if (doc.contains("isotopy")) {
    const Json& iso = get_array(doc, "isotopy", "document");
    AInfFunctor f = AInfFunctor::identity(cat);
    for (size_t i = 0; i < iso.size(); ++i) {
      const std::string where = "isotopy[" + std::to_string(i) + "]";
      require_object(iso[i], where);
      int arity = get_int(iso[i], "arity", where);
      if (arity < 2) throw SchemaError(where + ".arity: F_1 is the identity, list components of arity >= 2");
      parse_entry(cat, iso[i], 1, f.components[arity], where);
    }
    f.normalize();
    d.isotopy = std::move(f);
  }

  if (doc.contains("pairing")) {
    const Json& p = doc["pairing"];
    require_object(p, "pairing");
    allow_keys(p, {"degree", "entries"}, "pairing");
    CYDatum datum;
    datum.degree = get_int(p, "degree", "pairing");
    for (int x = 0; x < cat.object_count(); ++x)
      for (int y = 0; y < cat.object_count(); ++y)
        datum.pairings[{x, y}] = coeff::ExactMatrix(static_cast<int>(cat.hom(x, y).size()),
                                                    static_cast<int>(cat.hom(y, x).size()));
    const Json& entries = get_array(p, "entries", "pairing");
    for (size_t i = 0; i < entries.size(); ++i) {
      const std::string where = "pairing.entries[" + std::to_string(i) + "]";
      const Json& e = entries[i];
      require_object(e, where);
      allow_keys(e, {"left", "right", "coefficient"}, where);
      int a = lookup_element(cat, field(e, "left", where), where + ".left");
      int b = lookup_element(cat, field(e, "right", where), where + ".right");
      int x = cat.basis.source(a), y = cat.basis.target(a);
      if (cat.basis.source(b) != y || cat.basis.target(b) != x)
        throw SchemaError(where + ": right must go back from the target of left to its source");
      auto rows = cat.hom(x, y), cols = cat.hom(y, x);
      int r = static_cast<int>(std::find(rows.begin(), rows.end(), a) - rows.begin());
      int c = static_cast<int>(std::find(cols.begin(), cols.end(), b) - cols.begin());
      datum.pairings[{x, y}].set(r, c, parse_coefficient(cat, e, where));
    }
    d.pairing = std::move(datum);
  }
  return d;
}

InputDocument parse_document_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  return parse_document(j);
}

InputDocument load_input(const std::string& source) {
  const std::string prefix = "catalogue:";
  if (source.rfind(prefix, 0) == 0) return from_entry(catalogue_lookup(source.substr(prefix.size())));
  std::ifstream in(source);
  if (!in) throw SchemaError("cannot read input file " + source);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document_text(ss.str());
}

namespace {

Json word_names(const CategoryPresentation& cat, const Word& w) {
  Json a = Json::array();
  for (int l : w) a.push_back(cat.basis[l].name);
  return a;
}

Json object_chain(const CategoryPresentation& cat, const Word& w) {
  Json a = Json::array();
  for (int l : w) a.push_back(cat.objects[static_cast<size_t>(cat.basis.target(l))]);
  a.push_back(cat.objects[static_cast<size_t>(cat.basis.word_source(w))]);
  return a;
}

void append_entries(const CategoryPresentation& cat, int arity, const MapTable& t, Json& out) {
  for (const auto& [w, v] : t)
    for (const auto& [o, c] : v) {
      Json e;
      e["arity"] = arity;
      e["objects"] = object_chain(cat, w);
      e["input"] = word_names(cat, w);
      e["output"] = cat.basis[o].name;
      e["coefficient"] = cat.ring.format(c);
      out.push_back(std::move(e));
    }
}

}  // namespace

Json map_table_to_json(const CategoryPresentation& cat, const MapTable& t) {
  Json out = Json::array();
  for (const auto& [w, v] : t)
    for (const auto& [o, c] : v) {
      Json e;
      e["input"] = word_names(cat, w);
      e["output"] = cat.basis[o].name;
      e["coefficient"] = cat.ring.format(c);
      out.push_back(std::move(e));
    }
  return out;
}

MapTable map_table_from_json(const CategoryPresentation& cat, const Json& j) {
  if (!j.is_array()) throw SchemaError("map table: expected an array");
  MapTable t;
  for (size_t i = 0; i < j.size(); ++i) {
    const std::string where = "entries[" + std::to_string(i) + "]";
    const Json& e = j[i];
    require_object(e, where);
    allow_keys(e, {"input", "output", "coefficient"}, where);
    Word w;
    for (const auto& l : get_array(e, "input", where)) w.push_back(lookup_element(cat, l, where + ".input"));
    int o = lookup_element(cat, field(e, "output", where), where + ".output");
    add_to(t, w, o, parse_coefficient(cat, e, where));
  }
  prune(t);
  return t;
}

Json coderivation_to_json(const CategoryPresentation& cat, const Coderivation& c) {
  Json j;
  j["degree"] = c.degree;
  j["entries"] = map_table_to_json(cat, c.comps);
  return j;
}

Json cofunctor_to_json(const CategoryPresentation& cat, const Cofunctor& f) {
  Json j;
  Json objs = Json::array();
  for (int o : f.object_map) objs.push_back(cat.objects[static_cast<size_t>(o)]);
  j["object_map"] = std::move(objs);
  j["entries"] = map_table_to_json(cat, f.comps);
  return j;
}

Json invariants_to_json(const coeff::ModuleInvariants& inv, const RingDescriptor& ring) {
  Json j;
  j["free_rank"] = inv.free_rank;
  Json d = Json::array();
  for (const auto& x : inv.divisors) d.push_back(ring.format(x));
  j["divisors"] = std::move(d);
  return j;
}

Json column_to_json(const coeff::Column& c, const RingDescriptor& ring) {
  Json a = Json::array();
  for (const auto& x : c) a.push_back(ring.format(x));
  return a;
}

Json matrix_to_json(const coeff::ExactMatrix& a, const RingDescriptor& ring) {
  Json j;
  j["rows"] = a.rows();
  j["cols"] = a.cols();
  Json e = Json::array();
  for (const auto& [r, c, v] : a.entries()) e.push_back(Json::array({r, c, ring.format(v)}));
  j["entries"] = std::move(e);
  return j;
}

Json export_document(const InputDocument& doc) {
  const CategoryPresentation& cat = doc.structure.cat;
  Json j;
  j["format"] = "ainf-input/1";
  if (!doc.name.empty()) j["name"] = doc.name;
  if (!doc.description.empty()) j["description"] = doc.description;
  j["ring"] = ring_to_json(cat.ring);
  j["objects"] = cat.objects;
  Json basis = Json::array();
  for (const auto& b : cat.basis.elements) {
    Json e;
    e["name"] = b.name;
    e["degree"] = b.degree;
    e["source"] = cat.objects[static_cast<size_t>(b.source)];
    e["target"] = cat.objects[static_cast<size_t>(b.target)];
    basis.push_back(std::move(e));
  }
  j["basis"] = std::move(basis);
  Json mults = Json::array();
  for (const auto& [arity, t] : doc.structure.m.components) append_entries(cat, arity, t, mults);
  j["multiplications"] = std::move(mults);
  if (doc.isotopy) {
    Json iso = Json::array();
    for (const auto& [arity, t] : doc.isotopy->components)
      if (arity >= 2) append_entries(cat, arity, t, iso);
    j["isotopy"] = std::move(iso);
  }
  if (doc.pairing) {
    Json p;
    p["degree"] = doc.pairing->degree;
    Json entries = Json::array();
    for (const auto& [xy, mat] : doc.pairing->pairings) {
      auto rows = cat.hom(xy.first, xy.second), cols = cat.hom(xy.second, xy.first);
      for (const auto& [r, c, v] : mat.entries()) {
        Json e;
        e["left"] = cat.basis[rows[static_cast<size_t>(r)]].name;
        e["right"] = cat.basis[cols[static_cast<size_t>(c)]].name;
        e["coefficient"] = cat.ring.format(v);
        entries.push_back(std::move(e));
      }
    }
    p["entries"] = std::move(entries);
    j["pairing"] = std::move(p);
  }
  return j;
}

InputDocument from_entry(const CatalogueEntry& e) {
  InputDocument d;
  d.name = e.name;
  d.description = e.description;
  d.structure = e.structure;
  const auto& cat = e.structure.cat;
  bool graded = true;
  for (const auto& [arity, t] : e.structure.m.components) graded = graded && (arity == 2 || t.empty());
  if (e.cy_degree && graded && cat.object_count() == 1) {
    // trace on the top-degree class
    int top = 0;
    for (int i = 0; i < cat.dim(); ++i)
      if (cat.basis.degree(i) > cat.basis.degree(top)) top = i;
    d.pairing = trace_pairing(e.structure, *e.cy_degree, {{0, Vec{{top, Scalar(1)}}}});
  }
  return d;
}

}  // namespace ainf::io
