#pragma once

#include <string>

#include "ainf/io.hpp"

namespace ainf::report {

using io::Json;

enum class HochschildVariant { full, compact, bigraded, homology };
HochschildVariant parse_variant(const std::string& s);
enum class FamilyPipeline { generic, cy, trivialize, freeness };
FamilyPipeline parse_pipeline(const std::string& s);

/// Every report carries "command", "input", "summary" and the details.
Json check(const io::InputDocument& doc, int max_weight);
Json transfer(const io::InputDocument& doc, int max_weight);
Json hochschild(const io::InputDocument& doc, int min_degree, int max_degree, int max_weight, HochschildVariant v);
/// Non-minimal inputs are replaced by their minimal model first.
Json kaledin(const io::InputDocument& doc, int truncation);
Json certify(const io::InputDocument& doc, int max_weight);
/// max_weight is the ħ-order for the trivialization pipeline.
Json family(const io::InputDocument& doc, FamilyPipeline p, int max_weight);
/// The entry as an input document plus the re-checked claims; an empty name
/// lists the catalogue.
Json catalogue(const std::string& name);

/// Summary line followed by an indented listing of the report.
std::string render_text(const Json& report);

}  // namespace ainf::report
