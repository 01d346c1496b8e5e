#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "ainf/bar.hpp"
#include "ainf/catalogue.hpp"
#include "ainf/family.hpp"

namespace ainf::io {

using Json = nlohmann::ordered_json;

/// Parsed input document. Multiplication entries list the input word with the
/// last arrow first and the object chain from the final target back to the
/// first source.
struct InputDocument {
  std::string name;
  std::string description;
  AInfCategory structure;
  std::optional<AInfFunctor> isotopy;  // from the structure to itself, unshifted F_i
  std::optional<CYDatum> pairing;
};

/// Throws SchemaError on any violation (unknown keys included).
InputDocument parse_document(const Json& doc);
InputDocument parse_document_text(const std::string& text);
/// Reads a file, or "catalogue:NAME".
InputDocument load_input(const std::string& source);

Json export_document(const InputDocument& doc);
InputDocument from_entry(const CatalogueEntry& e);

Json ring_to_json(const coeff::RingDescriptor& ring);
coeff::RingDescriptor ring_from_json(const Json& j);

/// Entry lists {input, output, coefficient} with basis names.
Json map_table_to_json(const CategoryPresentation& cat, const MapTable& t);
Json coderivation_to_json(const CategoryPresentation& cat, const Coderivation& c);
Json cofunctor_to_json(const CategoryPresentation& cat, const Cofunctor& f);
MapTable map_table_from_json(const CategoryPresentation& cat, const Json& j);
Json invariants_to_json(const coeff::ModuleInvariants& inv, const coeff::RingDescriptor& ring);
Json column_to_json(const coeff::Column& c, const coeff::RingDescriptor& ring);
Json matrix_to_json(const coeff::ExactMatrix& a, const coeff::RingDescriptor& ring);

}  // namespace ainf::io
