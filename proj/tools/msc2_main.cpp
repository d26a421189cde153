// msc2: exact computations with 2-dimensional algebras given by their 2x4
// structure-constant matrices.  Subcommands: der, aut, catalog, iso, verify.
//
// Exit codes: 0 success, 1 verification failure, 2 parse error,
// 3 resource cap exceeded, 4 precondition violation.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "msc2/msc2.hpp"

namespace {

using nlohmann::json;
using namespace msc2;

std::uint64_t default_cap() {
  if (const char* env = std::getenv("MSC2_GL_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 1) return v;
  }
  return kDefaultGlCap;
}

/// Splits on commas that are not nested inside parentheses, so literals like
/// GF(7^2,3) survive.
std::vector<std::string> split_fields(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

json cell_to_json(const CellResult& c) {
  return json{{"kind", c.kind},           {"subject", c.subject},
              {"field", c.field},         {"verdict", c.verdict},
              {"ok", c.ok},               {"quarantined", c.quarantined},
              {"oracle_n", c.oracle_n},   {"expected_n", c.expected_n},
              {"note", c.note}};
}

json report_to_json(const Report& r) {
  json cells = json::array();
  for (const auto& c : r.cells) cells.push_back(cell_to_json(c));
  return json{{"title", r.title},
              {"cells", std::move(cells)},
              {"failures", r.failures()},
              {"quarantined", r.quarantined()},
              {"passed", r.passed()}};
}

int cmd_der(const std::string& literal, bool as_json) {
  const Msc a = Msc::parse(literal);
  const Subspace der = derivations(a);
  if (as_json) {
    json basis = json::array();
    for (int i = 0; i < der.dim(); ++i) {
      json vec = json::array();
      for (const auto& e : der.basis()[static_cast<std::size_t>(i)]) vec.push_back(e.to_string());
      basis.push_back(std::move(vec));
    }
    std::cout << json{{"msc", a.to_string()}, {"dim", der.dim()}, {"basis", std::move(basis)}}
              << "\n";
  } else {
    std::cout << der.to_string() << "\n";
  }
  return 0;
}

int cmd_aut(const std::string& literal, std::uint64_t cap, int jobs, bool as_json) {
  const Msc a = Msc::parse(literal);
  std::vector<GL2Element> auts;
  try {
    auts = automorphisms_bruteforce(a, cap, jobs);
  } catch (const InfiniteField&) {
    throw InfiniteField("infinite field: use catalog expected-group mode");
  }
  if (as_json) {
    json elems = json::array();
    for (const auto& g : auts) elems.push_back(g.to_string());
    std::cout << json{{"msc", a.to_string()}, {"order", auts.size()}, {"elements", std::move(elems)}}
              << "\n";
  } else {
    std::cout << "order=" << auts.size() << "\n";
    for (const auto& g : auts) std::cout << g.to_string() << "\n";
  }
  return 0;
}

int cmd_catalog_list(const std::string& filter, bool as_json) {
  std::vector<CharClass> classes = {CharClass::NotTwoThree, CharClass::Two, CharClass::Three};
  if (!filter.empty()) {
    if (filter == "@neq23")
      classes = {CharClass::NotTwoThree};
    else if (filter == "@char2")
      classes = {CharClass::Two};
    else if (filter == "@char3")
      classes = {CharClass::Three};
    else
      throw ParseError(0, "filter must be @neq23, @char2 or @char3");
  }
  json out = json::array();
  for (CharClass cc : classes) {
    for (FamilyId f : all_families(cc)) {
      std::string names;
      for (const auto& p : param_names(f)) {
        if (!names.empty()) names += ",";
        names += param_name_str(p);
      }
      if (as_json) {
        out.push_back(json{{"family", f.name()}, {"arity", arity(f)}, {"params", names}});
      } else {
        std::cout << f.name() << " arity=" << arity(f) << " params=(" << names << ")\n";
      }
    }
  }
  if (as_json) std::cout << out << "\n";
  return 0;
}

int cmd_catalog_build(const std::vector<std::string>& args, bool as_json) {
  if (args.size() < 2) throw ParseError(0, "usage: catalog build <family> [params...] <field>");
  const FieldSpec spec = parse_field_spec(args.back());
  const FamilyId fam = parse_family(args.front());
  ParamVector params;
  for (std::size_t i = 1; i + 1 < args.size(); ++i)
    params.push_back(parse_element(spec, args[i]));
  const Msc a = build(fam, params, spec);
  if (as_json) {
    std::cout << json{{"family", fam.name()},
                      {"params", params_to_string(fam, params)},
                      {"msc", a.to_string()}}
              << "\n";
  } else {
    std::cout << a.to_string() << "\n";
  }
  return 0;
}

int cmd_iso(const std::string& lit_a, const std::string& lit_b, std::uint64_t cap, bool as_json) {
  const Msc a = Msc::parse(lit_a);
  const Msc b = Msc::parse(lit_b);
  const auto witness = find_isomorphism(a, b, cap);
  if (as_json) {
    json j{{"a", a.to_string()}, {"b", b.to_string()}, {"isomorphic", witness.has_value()}};
    if (witness) j["witness"] = witness->to_string();
    std::cout << j << "\n";
  } else {
    std::cout << "ISO " << a.to_string() << " " << b.to_string() << " "
              << (witness ? "witness=" + witness->to_string() : std::string("none")) << "\n";
  }
  return 0;
}

struct VerifyOptions {
  bool aut = false, der = false, twins = false, genericity = false;
  std::string chars;
  std::string fields;
  std::uint64_t seed = 42;
  int samples = 100;
  std::uint64_t cap = default_cap();
  int jobs = 1;
  std::string json_path;
};

std::vector<FieldSpec> default_fields(CharClass cc) {
  switch (cc) {
    case CharClass::NotTwoThree:
      return {FieldSpec::prime_field(5), FieldSpec::prime_field(7)};
    case CharClass::Two:
      return {FieldSpec::prime_field(2), FieldSpec::quad_ext_field(2, 1)};
    case CharClass::Three:
      return {FieldSpec::prime_field(3), FieldSpec::quad_ext_field(3, 2)};
  }
  return {};
}

int cmd_verify(const VerifyOptions& opt) {
  std::vector<CharClass> classes;
  if (opt.chars.empty()) {
    classes = {CharClass::NotTwoThree, CharClass::Two, CharClass::Three};
  } else {
    for (const auto& tok : split_fields(opt.chars)) {
      if (tok == "neq23")
        classes.push_back(CharClass::NotTwoThree);
      else if (tok == "char2")
        classes.push_back(CharClass::Two);
      else if (tok == "char3")
        classes.push_back(CharClass::Three);
      else
        throw ParseError(0, "--chars takes neq23, char2, char3");
    }
  }
  std::vector<FieldSpec> given;
  for (const auto& tok : split_fields(opt.fields)) given.push_back(parse_field_spec(tok));

  auto fields_for = [&](CharClass cc) {
    std::vector<FieldSpec> out;
    for (const auto& s : given)
      if (s.finite() && char_class_of(s) == cc) out.push_back(s);
    return out.empty() && given.empty() ? default_fields(cc) : out;
  };

  const bool all = !opt.aut && !opt.der && !opt.twins && !opt.genericity;
  SweepPolicy pol;
  pol.seed = opt.seed;
  pol.gl_cap = opt.cap;
  pol.jobs = opt.jobs;

  std::vector<Report> reports;
  for (CharClass cc : classes) {
    const auto fields = fields_for(cc);
    if (fields.empty()) {
      std::cout << "note: no fields of class " << char_class_suffix(cc) << " given; skipped\n";
      continue;
    }
    if (opt.aut || all) reports.push_back(verify_aut_tables(cc, fields, pol));
    if (opt.der || all) reports.push_back(verify_der_tables(cc, fields, pol));
    if (opt.twins || all) reports.push_back(verify_twins(fields, 20, opt.seed, 30, pol));
    if (opt.genericity || all)
      for (const auto& s : fields) reports.push_back(verify_genericity(s, opt.samples, opt.seed, pol));
  }

  bool passed = true;
  for (const auto& r : reports) {
    std::cout << r.to_text();
    passed = passed && r.passed();
  }
  if (!opt.json_path.empty()) {
    json summary = json::array();
    for (const auto& r : reports) summary.push_back(report_to_json(r));
    std::ofstream out(opt.json_path);
    out << json{{"command", "verify"}, {"seed", opt.seed}, {"passed", passed},
                {"reports", std::move(summary)}}
              .dump(2)
        << "\n";
  }
  std::cout << (passed ? "VERIFY PASS" : "VERIFY FAIL") << "\n";
  return passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact automorphism/derivation toolkit for 2-dimensional algebras"};
  app.require_subcommand(1);

  std::string der_literal;
  bool der_json = false;
  auto* der_cmd = app.add_subcommand("der", "derivation algebra of an MSC literal");
  der_cmd->add_option("msc", der_literal, "MSC literal")->required();
  der_cmd->add_flag("--json", der_json, "JSON output");

  std::string aut_literal;
  std::uint64_t aut_cap = default_cap();
  int aut_jobs = 1;
  bool aut_json = false;
  auto* aut_cmd = app.add_subcommand("aut", "automorphism group by enumeration");
  aut_cmd->add_option("msc", aut_literal, "MSC literal")->required();
  aut_cmd->add_option("--cap", aut_cap, "enumeration cap on q");
  aut_cmd->add_option("--jobs", aut_jobs, "worker threads");
  aut_cmd->add_flag("--json", aut_json, "JSON output");

  auto* cat_cmd = app.add_subcommand("catalog", "canonical families");
  std::string list_filter;
  bool list_json = false;
  auto* list_cmd = cat_cmd->add_subcommand("list", "list families");
  list_cmd->add_option("filter", list_filter, "@neq23 | @char2 | @char3");
  list_cmd->add_flag("--json", list_json, "JSON output");
  std::vector<std::string> build_args;
  bool build_json = false;
  auto* build_cmd = cat_cmd->add_subcommand("build", "build a family member");
  build_cmd->add_option("args", build_args, "<family> [params...] <field>")->expected(-1);
  build_cmd->add_flag("--json", build_json, "JSON output");
  cat_cmd->require_subcommand(1);

  std::string iso_a, iso_b;
  std::uint64_t iso_cap = default_cap();
  bool iso_json = false;
  auto* iso_cmd = app.add_subcommand("iso", "exhaustive isomorphism search");
  iso_cmd->add_option("a", iso_a, "MSC literal")->required();
  iso_cmd->add_option("b", iso_b, "MSC literal")->required();
  iso_cmd->add_option("--cap", iso_cap, "enumeration cap on q");
  iso_cmd->add_flag("--json", iso_json, "JSON output");

  VerifyOptions vopt;
  auto* verify_cmd = app.add_subcommand("verify", "verification campaigns");
  verify_cmd->add_flag("--aut", vopt.aut, "automorphism tables");
  verify_cmd->add_flag("--der", vopt.der, "derivation tables");
  verify_cmd->add_flag("--twins", vopt.twins, "twin isomorphisms + distinct cells");
  verify_cmd->add_flag("--genericity", vopt.genericity, "generic triviality");
  verify_cmd->add_option("--chars", vopt.chars, "neq23,char2,char3 (default: all)");
  verify_cmd->add_option("--fields", vopt.fields, "comma-separated field specs");
  verify_cmd->add_option("--seed", vopt.seed, "sampling seed");
  verify_cmd->add_option("--samples", vopt.samples, "genericity sample count");
  verify_cmd->add_option("--cap", vopt.cap, "enumeration cap on q");
  verify_cmd->add_option("--jobs", vopt.jobs, "worker threads");
  verify_cmd->add_option("--json", vopt.json_path, "write JSON summary to this file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*der_cmd) return cmd_der(der_literal, der_json);
    if (*aut_cmd) return cmd_aut(aut_literal, aut_cap, aut_jobs, aut_json);
    if (*list_cmd) return cmd_catalog_list(list_filter, list_json);
    if (*build_cmd) return cmd_catalog_build(build_args, build_json);
    if (*iso_cmd) return cmd_iso(iso_a, iso_b, iso_cap, iso_json);
    if (*verify_cmd) return cmd_verify(vopt);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const CharMismatch& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return 4;
  } catch (const InfiniteField& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return 4;
  } catch (const ArityError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return 4;
  } catch (const SpecMismatch& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return 4;
  } catch (const InvalidSpec& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return 4;
  } catch (const DivisionByZero& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return 4;
  } catch (const Singular& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
