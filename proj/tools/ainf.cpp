// ainf: command-line front end. Exit codes: 0 verdict computed, 1 internal
// error, 2 schema violation, 3 unsupported ring, 4 precondition failure.
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ainf/error.hpp"
#include "ainf/report.hpp"

namespace {

using ainf::io::Json;

std::pair<int, int> parse_range(const std::string& s) {
  auto colon = s.find(':');
  try {
    if (colon == std::string::npos) {
      int n = std::stoi(s);
      return {n, n};
    }
    return {std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
  } catch (const std::exception&) {
    throw ainf::SchemaError("expected a degree or a range lo:hi, got '" + s + "'");
  }
}

void emit(const Json& report, const std::string& format) {
  if (format == "json")
    std::cout << report.dump(2) << "\n";
  else
    std::cout << ainf::report::render_text(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with finite A-infinity categories"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  std::string input;
  int max_weight = 4;
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", input, "Input document, or catalogue:NAME")->required();
  };

  auto* check = app.add_subcommand("check", "Check the A-infinity relations");
  add_input(check);
  check->add_option("--max-weight", max_weight, "Relations checked through this weight");

  auto* transfer = app.add_subcommand("transfer", "Minimal model by homotopy transfer");
  add_input(transfer);
  transfer->add_option("--max-weight", max_weight, "Truncation weight");

  auto* hoch = app.add_subcommand("hochschild", "Hochschild cohomology or homology");
  add_input(hoch);
  std::string degrees = "0:2", variant = "full";
  hoch->add_option("--degrees", degrees, "HH degree or range lo:hi");
  hoch->add_option("--weights", max_weight, "Truncation weight (letters for homology)");
  hoch->add_option("--variant", variant, "Complex to use")
      ->check(CLI::IsMember({"full", "compact", "bigraded", "homology"}));

  auto* kal = app.add_subcommand("kaledin", "Kaledin class of a minimal structure");
  add_input(kal);
  kal->add_option("--truncation", max_weight, "Truncation weight");

  auto* cert = app.add_subcommand("certify", "Formality certificate or non-formality witness");
  add_input(cert);
  cert->add_option("--max-weight", max_weight, "Weight through which higher products are removed");

  auto* fam = app.add_subcommand("family", "Criteria for families over poly(h)");
  add_input(fam);
  std::string pipeline = "generic";
  fam->add_option("--pipeline", pipeline, "Family criterion")
      ->check(CLI::IsMember({"generic", "cy", "trivialize", "freeness"}));
  fam->add_option("--max-weight", max_weight, "Truncation weight, or h-order for trivialize");

  auto* cat = app.add_subcommand("catalogue", "Show a catalogue entry, or list them");
  std::string name;
  cat->add_option("name", name, "Entry name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    namespace r = ainf::report;
    Json out;
    if (*cat) {
      out = r::catalogue(name);
    } else {
      ainf::io::InputDocument doc = ainf::io::load_input(input);
      if (*check) {
        out = r::check(doc, max_weight);
      } else if (*transfer) {
        out = r::transfer(doc, max_weight);
      } else if (*hoch) {
        auto [lo, hi] = parse_range(degrees);
        out = r::hochschild(doc, lo, hi, max_weight, r::parse_variant(variant));
      } else if (*kal) {
        out = r::kaledin(doc, max_weight);
      } else if (*cert) {
        out = r::certify(doc, max_weight);
      } else if (*fam) {
        out = r::family(doc, r::parse_pipeline(pipeline), max_weight);
      }
    }
    emit(out, format);
    return 0;
  } catch (const ainf::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const ainf::UnsupportedRing& e) {
    std::cerr << "unsupported ring: " << e.what() << "\n";
    return 3;
  } catch (const ainf::PreconditionFailed& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
