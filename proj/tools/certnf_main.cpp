// Command-line driver: normalization with certificates, certificate
// checking, conversion decision, and the law-check suites.
//
//   certnf nf "\f:o->o. f"            print the long normal form
//   certnf nf --cert TERM             emit the full result with derivations
//   certnf nf --subst FILE            normalize a substitution entrywise
//   certnf check cert.json            validate a certificate file
//   certnf eq TERM TERM               decide beta-eta convertibility
//   certnf laws --bounds depth=3      run the law suites
//
// Exit codes: 0 success / valid / convertible, 1 negative result,
// 2 usage or parse errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "certnf/glue.hpp"
#include "certnf/parser.hpp"
#include "certnf/pcatlab.hpp"
#include "certnf/serialize.hpp"

namespace {

using namespace certnf;

std::vector<std::pair<std::string, TyPtr>> parse_vars(const std::vector<std::string>& specs) {
  std::vector<std::pair<std::string, TyPtr>> out;
  for (const auto& s : specs) {
    auto colon = s.find(':');
    if (colon == std::string::npos || colon == 0)
      throw Error("--var expects name:TYPE, got '" + s + "'");
    out.emplace_back(s.substr(0, colon), parse_ty(s.substr(colon + 1)));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string read_source(const std::string& inline_term, const std::string& file) {
  if (!file.empty()) return read_file(file);
  if (!inline_term.empty()) return inline_term;
  throw Error("no term given (pass one inline or via --file)");
}

Bounds parse_bounds(const std::vector<std::string>& specs) {
  Bounds b;
  for (const auto& s : specs) {
    auto eq = s.find('=');
    if (eq == std::string::npos) throw Error("--bounds expects key=value, got '" + s + "'");
    std::string key = s.substr(0, eq);
    std::size_t value = std::stoul(s.substr(eq + 1));
    if (key == "types")
      b.ty_depth = value;
    else if (key == "ctxts")
      b.ctxt_len = value;
    else if (key == "depth")
      b.tm_depth = value;
    else if (key == "subst_depth")
      b.subst_tm_depth = value;
    else if (key == "assoc_types")
      b.assoc_ty_depth = value;
    else if (key == "assoc_depth")
      b.assoc_tm_depth = value;
    else if (key == "fuel")
      b.fuel = value;
    else
      throw Error("unknown bounds key '" + key + "'");
  }
  return b;
}

int run_nf(const std::string& inline_term, const std::string& file, const std::string& subst_file,
           const std::vector<std::string>& vars, bool cert, bool json_out) {
  if (!subst_file.empty()) {
    nlohmann::json doc = nlohmann::json::parse(read_file(subst_file));
    Subst s = subst_from_json(doc);
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : glue::normalize_subst(s)) out.push_back(nfresult_to_json(r));
    std::cout << canonical_dump(out) << "\n";
    return 0;
  }
  auto ctx = parse_vars(vars);
  TmPtr t = parse_term(read_source(inline_term, file), ctx);
  glue::NfResult r = glue::normalize(t);
  if (cert) {
    std::cout << canonical_dump(nfresult_to_json(r)) << "\n";
  } else if (json_out) {
    nlohmann::json out{{"ctxt", ctxt_to_json(t->ctxt())},
                       {"input", tm_to_json(t)},
                       {"nf", tm_to_json(r.nf)}};
    std::cout << canonical_dump(out) << "\n";
  } else {
    std::cout << print_term(r.nf) << "\n";
  }
  return 0;
}

int run_check(const std::string& path) {
  nlohmann::json doc = nlohmann::json::parse(read_file(path));
  EnvelopeCheck c = check_envelope(doc);
  if (c.ok) {
    std::cout << "valid\n";
    return 0;
  }
  std::cerr << "error: invalid certificate at " << (c.path.empty() ? "<root>" : c.path) << ": "
            << c.reason << "\n";
  return 1;
}

int run_eq(const std::string& lhs, const std::string& rhs, const std::vector<std::string>& vars,
           bool json_out) {
  auto ctx = parse_vars(vars);
  TmPtr t = parse_term(lhs, ctx);
  TmPtr u = parse_term(rhs, ctx);
  bool conv = glue::decide_conv(t, u);
  if (json_out)
    std::cout << canonical_dump(nlohmann::json{{"convertible", conv}}) << "\n";
  else
    std::cout << (conv ? "convertible" : "not convertible") << "\n";
  return conv ? 0 : 1;
}

int run_laws(const std::vector<std::string>& bounds_specs, const std::string& suite,
             bool json_out) {
  Bounds b = parse_bounds(bounds_specs);
  std::vector<LawReport> reports;
  if (suite.empty() || suite == "all") {
    reports = laws_all(b);
    reports.push_back(check_per(per_arrow(per_discrete(2), per_discrete(2)), "per_smoke"));
  } else if (suite == "rnm_category") {
    reports.push_back(laws_rnm_category(b));
  } else if (suite == "subst_category") {
    reports.push_back(laws_subst_category(b));
  } else if (suite == "actions") {
    reports.push_back(laws_actions(b));
  } else if (suite == "cartesian") {
    reports.push_back(laws_cartesian(b));
  } else if (suite == "ccc") {
    reports.push_back(laws_ccc(b));
  } else if (suite == "qu_naturality") {
    reports.push_back(laws_qu_naturality(b));
  } else {
    throw Error("unknown suite '" + suite + "'");
  }
  bool all_ok = true;
  if (json_out) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : reports) {
      out.push_back(r.to_json());
      all_ok = all_ok && r.passed();
    }
    std::cout << canonical_dump(out) << "\n";
  } else {
    for (const auto& r : reports) {
      std::cout << r.suite << ": cases=" << r.cases << " failures=" << r.failures.size()
                << (r.passed() ? " ok" : " FAILED") << "\n";
      for (const auto& f : r.failures) {
        std::cout << "  " << f.what;
        for (const auto& item : f.items) std::cout << " " << item.dump();
        std::cout << "\n";
      }
      all_ok = all_ok && r.passed();
    }
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certnf: normalize simply typed lambda terms with conversion certificates"};
  app.require_subcommand(1);

  std::string term, file, subst_file, cert_path, lhs, rhs, suite;
  std::vector<std::string> vars, bounds_specs;
  bool with_cert = false, json_out = false;

  CLI::App* nf = app.add_subcommand("nf", "normalize a term to long beta-eta normal form");
  nf->add_option("term", term, "term in surface syntax");
  nf->add_option("--file", file, "read the term from a file");
  nf->add_option("--subst", subst_file, "normalize a substitution given as JSON, entrywise");
  nf->add_option("--var", vars, "ambient context entry name:TYPE (repeatable, oldest first)")
      ->allow_extra_args(false);
  nf->add_flag("--cert", with_cert, "emit the result with all derivations as JSON");
  nf->add_flag("--json", json_out, "emit JSON output");

  CLI::App* check = app.add_subcommand("check", "validate a certificate JSON file");
  check->add_option("cert", cert_path, "certificate file")->required();

  CLI::App* eq = app.add_subcommand("eq", "decide beta-eta convertibility of two terms");
  eq->add_option("lhs", lhs, "first term")->required();
  eq->add_option("rhs", rhs, "second term")->required();
  eq->add_option("--var", vars, "ambient context entry name:TYPE (repeatable, oldest first)")
      ->allow_extra_args(false);
  eq->add_flag("--json", json_out, "emit JSON output");

  CLI::App* laws = app.add_subcommand("laws", "run the categorical law suites");
  laws->add_option("--bounds", bounds_specs,
                   "override bounds: types, ctxts, depth, subst_depth, assoc_types, "
                   "assoc_depth, fuel (key=value, repeatable)")
      ->allow_extra_args(false);
  laws->add_option("--suite", suite, "run a single suite by name");
  laws->add_flag("--json", json_out, "emit JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (nf->parsed()) return run_nf(term, file, subst_file, vars, with_cert, json_out);
    if (check->parsed()) return run_check(cert_path);
    if (eq->parsed()) return run_eq(lhs, rhs, vars, json_out);
    if (laws->parsed()) return run_laws(bounds_specs, suite, json_out);
  } catch (const certnf::ParseError& e) {
    std::cerr << "error: parse: " << e.what() << "\n";
    return 2;
  } catch (const certnf::UnboundVariable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const certnf::CodecError& e) {
    std::cerr << "error: codec: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: json: " << e.what() << "\n";
    return 2;
  } catch (const certnf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
