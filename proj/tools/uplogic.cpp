// Command-line front end: parse, check, sat, valid, bounds, envelope,
// covers verify|search, props. Exit codes: 0 success, 1 negative verdict,
// 2 input error, 3 resource limit, 4 internal fault.

#include "uplogic/covers.hpp"
#include "uplogic/envelope.hpp"
#include "uplogic/errors.hpp"
#include "uplogic/parser.hpp"
#include "uplogic/semantics.hpp"
#include "uplogic/solver.hpp"
#include "uplogic/structure.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace uplogic;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;
constexpr int kResourceError = 3;
constexpr int kInternalError = 4;

bool json_mode = false;

void emit(const json& doc) { std::cout << doc.dump(2) << '\n'; }

json structure_json(const UpperProbStructure& m) { return json::parse(save_structure(m)); }

std::string braces(const std::vector<std::string>& names) {
  std::string out = "{";
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? "," : "") + names[i];
  return out + "}";
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

SolverOptions solver_options() {
  SolverOptions opts;
  if (const char* cap = std::getenv("UPLOGIC_ATOM_CAP")) {
    std::size_t value = 0;
    try {
      std::size_t used = 0;
      value = std::stoul(cap, &used);
      if (cap[used] != '\0') throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw InputError(std::string("UPLOGIC_ATOM_CAP is not a number: ") + cap);
    }
    if (value > kMaxTruthTableProps)
      throw InputError("UPLOGIC_ATOM_CAP may not exceed " + std::to_string(kMaxTruthTableProps));
    opts.atom_cap = value;
  }
  return opts;
}

json stats_json(const SolverStats& s) {
  return {{"disjuncts", s.disjuncts},       {"disjuncts_solved", s.disjuncts_solved},
          {"lp_rows", s.lp_rows},           {"lp_columns", s.lp_columns},
          {"pivots", s.pivots},             {"propositions", s.propositions},
          {"model_worlds", s.model_worlds}, {"model_measures", s.model_measures}};
}

int cmd_parse(const std::string& expr, const std::string& file, const std::string& kind) {
  const std::string text = file.empty() ? expr : read_file(file);
  std::string canonical;
  json doc;
  if (kind == "term") {
    canonical = print(parse_term(text));
  } else if (kind == "prop") {
    auto phi = parse_prop(text);
    canonical = print(phi);
    doc["size"] = size(phi);
  } else {
    auto f = parse_likelihood(text);
    canonical = print(f);
    doc["size"] = size(f);
  }
  if (json_mode) {
    json out{{"canonical", canonical}};
    out.update(doc);
    emit(out);
  } else {
    std::cout << canonical << '\n';
  }
  return kOk;
}

int cmd_check(const std::string& model_path, const std::string& expr) {
  const auto m = load_structure(read_file(model_path));
  const auto f = parse_likelihood(expr);
  const bool holds = eval(m, f);
  const auto values = likelihood_values(m, f);
  if (json_mode) {
    json vals = json::array();
    for (const auto& [phi, value] : values) vals.push_back({{"argument", print(phi)}, {"upper", to_string(value)}});
    emit({{"result", holds}, {"values", vals}});
  } else {
    std::cout << (holds ? "true" : "false") << '\n';
    for (const auto& [phi, value] : values) std::cout << "l(" << print(phi) << ") = " << to_string(value) << '\n';
  }
  return holds ? kOk : kNegative;
}

int cmd_sat(const std::string& expr, const std::string& model_out) {
  const auto res = sat(parse_likelihood(expr), solver_options());
  if (res.satisfiable && !model_out.empty()) write_file(model_out, save_structure(*res.model) + "\n");
  if (json_mode) {
    json doc{{"verdict", res.satisfiable ? "SAT" : "UNSAT"}};
    if (res.model) doc["model"] = structure_json(*res.model);
    doc["stats"] = stats_json(res.stats);
    emit(doc);
  } else {
    std::cout << (res.satisfiable ? "SAT" : "UNSAT") << '\n';
    if (res.model)
      std::cout << "model: " << res.stats.model_worlds << " worlds, " << res.stats.model_measures << " measures\n";
  }
  return res.satisfiable ? kOk : kNegative;
}

int cmd_valid(const std::string& expr, const std::string& counter_out) {
  const auto res = valid(parse_likelihood(expr), solver_options());
  if (!res.valid && !counter_out.empty()) write_file(counter_out, save_structure(*res.countermodel) + "\n");
  if (json_mode) {
    json doc{{"verdict", res.valid ? "VALID" : "INVALID"}};
    if (res.countermodel) doc["countermodel"] = structure_json(*res.countermodel);
    doc["stats"] = stats_json(res.stats);
    emit(doc);
  } else {
    std::cout << (res.valid ? "VALID" : "INVALID") << '\n';
  }
  return res.valid ? kOk : kNegative;
}

std::string endpoint_text(const Endpoint& e) { return to_string(e.value) + (e.attained ? " closed" : " open"); }

json endpoint_json(const Endpoint& e) { return {{"value", to_string(e.value)}, {"attained", e.attained}}; }

int cmd_bounds(const std::string& expr, const std::string& term) {
  const auto res = bounds(parse_likelihood(expr), parse_term(term), solver_options());
  if (json_mode) {
    json doc{{"verdict", res.satisfiable ? "SAT" : "UNSAT"}};
    if (res.satisfiable) {
      doc["lower"] = endpoint_json(res.lower);
      doc["upper"] = endpoint_json(res.upper);
      json per = json::array();
      for (const auto& d : res.provenance)
        per.push_back({{"disjunct", d.disjunct}, {"lower", endpoint_json(d.lower)}, {"upper", endpoint_json(d.upper)}});
      doc["disjuncts"] = per;
    }
    doc["stats"] = stats_json(res.stats);
    emit(doc);
  } else if (res.satisfiable) {
    std::cout << endpoint_text(res.lower) << " .. " << endpoint_text(res.upper) << '\n';
  } else {
    std::cout << "UNSAT\n";
  }
  return res.satisfiable ? kOk : kNegative;
}

const char* failure_name(EnvelopeFailure f) {
  switch (f) {
    case EnvelopeFailure::None: return "none";
    case EnvelopeFailure::EmptySet: return "empty-set";
    case EnvelopeFailure::WholeSet: return "whole-set";
    case EnvelopeFailure::EmptyCore: return "empty-core";
    case EnvelopeFailure::Shortfall: return "shortfall";
  }
  return "none";
}

int cmd_envelope(const std::string& path, const std::string& witness_dir) {
  const auto v = load_set_function(read_file(path));
  const auto res = is_upper_probability(v);
  if (res.upper && !witness_dir.empty()) {
    std::filesystem::create_directories(witness_dir);
    write_file((std::filesystem::path(witness_dir) / "witness.json").string(), save_structure(*res.witness) + "\n");
  }
  const auto failing = v.names_of(res.failing_set);
  if (json_mode) {
    json doc{{"verdict", res.upper ? "YES" : "NO"}};
    if (res.upper) {
      doc["witness"] = structure_json(*res.witness);
    } else {
      doc["reason"] = failure_name(res.failure);
      doc["failing_set"] = failing;
      doc["value"] = to_string(v(res.failing_set));
      if (res.failure == EnvelopeFailure::Shortfall) doc["achieved"] = to_string(res.achieved);
    }
    emit(doc);
  } else if (res.upper) {
    std::cout << "YES\n" << "witness: " << res.witness->measures().size() << " measures\n";
  } else {
    std::cout << "NO at " << braces(failing) << '\n';
    switch (res.failure) {
      case EnvelopeFailure::EmptySet: std::cout << "value at the empty set is not 0\n"; break;
      case EnvelopeFailure::WholeSet: std::cout << "value at the whole set is not 1\n"; break;
      case EnvelopeFailure::EmptyCore: std::cout << "no probability measure lies below the function\n"; break;
      default:
        std::cout << "largest dominated measure reaches " << to_string(res.achieved) << " < "
                  << to_string(v(res.failing_set)) << '\n';
    }
  }
  return res.upper ? kOk : kNegative;
}

int cmd_covers_verify(const std::string& cert_path, const std::string& omega, const std::string& function_path) {
  const auto c = load_certificate(read_file(cert_path));
  std::optional<SetFunction> v;
  if (!function_path.empty()) v = load_set_function(read_file(function_path));
  std::vector<std::string> ground = omega.empty() && v ? v->ground() : split_list(omega);
  if (ground.empty()) throw InputError("--omega is required without --function");
  const bool cover = verify_cover(c, ground);
  std::optional<bool> up3;
  if (cover && v) {
    auto sorted_ground = ground, function_ground = v->ground();
    std::sort(sorted_ground.begin(), sorted_ground.end());
    std::sort(function_ground.begin(), function_ground.end());
    if (sorted_ground != function_ground) throw InputError("--omega differs from the function's ground set");
    up3 = up3_check(*v, c);
  }
  if (json_mode) {
    json doc{{"cover", cover}};
    doc["up3"] = up3 ? json(*up3) : json(nullptr);
    emit(doc);
  } else {
    std::cout << "cover: " << (cover ? "valid" : "invalid") << '\n';
    if (up3) std::cout << "UP3: " << (*up3 ? "holds" : "violated") << '\n';
  }
  return cover && up3.value_or(true) ? kOk : kNegative;
}

int cmd_covers_search(const std::string& path, std::size_t m_max) {
  const auto v = load_set_function(read_file(path));
  const auto found = search_violation(v, m_max);
  if (json_mode) {
    json doc{{"verdict", found ? "violation" : "none"}, {"m_max", m_max}};
    if (found) doc["certificate"] = json::parse(save_certificate(*found));
    emit(doc);
  } else if (found) {
    std::cout << save_certificate(*found);
  } else {
    std::cout << "none up to " << m_max << '\n';
  }
  return found ? kNegative : kOk;
}

int cmd_props(const std::string& model_path, const std::string& function_path, std::size_t max_sets) {
  std::vector<PropertyResult> results;
  std::vector<std::string> ground;
  if (!model_path.empty()) {
    const auto m = load_structure(read_file(model_path));
    for (const auto& w : m.worlds()) ground.push_back(w.id);
    results = check_properties(m, max_sets);
  } else {
    const auto v = load_set_function(read_file(function_path));
    ground = v.ground();
    results = check_properties(v, max_sets);
  }
  auto names = [&](Subset s) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < ground.size(); ++i)
      if (s >> i & 1U) out.push_back(ground[i]);
    return out;
  };
  bool all = true;
  json arr = json::array();
  for (const auto& r : results) {
    all = all && r.pass;
    json witness = json::array();
    std::string text;
    for (Subset s : r.witness) {
      witness.push_back(names(s));
      text += (text.empty() ? "" : " ") + braces(names(s));
    }
    if (json_mode)
      arr.push_back({{"property", r.property}, {"pass", r.pass}, {"witness", witness}});
    else
      std::cout << "(" << r.property << ") " << (r.pass ? "PASS" : "FAIL") << (text.empty() ? "" : " " + text) << '\n';
  }
  if (json_mode) emit({{"results", arr}, {"pass", all}});
  return all ? kOk : kNegative;
}

int report(const char* kind, const std::string& message, int code, const ParseError* pe = nullptr) {
  if (json_mode) {
    json doc{{"error", kind}, {"message", message}};
    if (pe) {
      doc["line"] = pe->line();
      doc["column"] = pe->column();
      doc["expected"] = pe->expected();
      doc["found"] = pe->found();
    }
    emit(doc);
  } else {
    std::cout << kind << " error: " << message << '\n';
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reasoning about upper probabilities: formulas, structures, envelopes, covers"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", json_mode, "Machine-readable output");

  std::string expr, file, kind = "formula", model, formula, out, term, function, cert, omega;
  std::size_t m_max = 4, max_sets = 3;
  std::function<int()> action;

  auto* parse = app.add_subcommand("parse", "Print the canonical form of an expression");
  parse->add_option("expr", expr, "Expression text");
  parse->add_option("--file", file, "Read the expression from a file");
  parse->add_option("--kind", kind, "formula, term or prop")->check(CLI::IsMember({"formula", "term", "prop"}));
  parse->callback([&] {
    if (expr.empty() == file.empty()) throw CLI::ValidationError("parse", "give exactly one of <expr> and --file");
    action = [&] { return cmd_parse(expr, file, kind); };
  });

  auto* check = app.add_subcommand("check", "Evaluate a formula in a structure");
  check->add_option("--model", model, "Structure JSON")->required();
  check->add_option("--formula", formula, "Likelihood formula")->required();
  check->callback([&] { action = [&] { return cmd_check(model, formula); }; });

  auto* satc = app.add_subcommand("sat", "Decide satisfiability");
  satc->add_option("--formula", formula, "Likelihood formula")->required();
  satc->add_option("--model-out", out, "Write the satisfying structure here");
  satc->callback([&] { action = [&] { return cmd_sat(formula, out); }; });

  auto* validc = app.add_subcommand("valid", "Decide validity");
  validc->add_option("--formula", formula, "Likelihood formula")->required();
  validc->add_option("--counter-out", out, "Write the countermodel here");
  validc->callback([&] { action = [&] { return cmd_valid(formula, out); }; });

  auto* boundsc = app.add_subcommand("bounds", "Tightest range of a term under a formula");
  boundsc->add_option("--formula", formula, "Likelihood formula")->required();
  boundsc->add_option("--term", term, "Likelihood term")->required();
  boundsc->callback([&] { action = [&] { return cmd_bounds(formula, term); }; });

  auto* env = app.add_subcommand("envelope", "Decide whether a set function is an upper probability");
  env->add_option("--function", function, "Set function JSON")->required();
  env->add_option("--witness-out", out, "Directory for witness.json");
  env->callback([&] { action = [&] { return cmd_envelope(function, out); }; });

  auto* covers = app.add_subcommand("covers", "(n,k)-cover tools");
  covers->require_subcommand(1);
  covers->fallthrough();
  auto* verify = covers->add_subcommand("verify", "Check a cover certificate");
  verify->add_option("--certificate", cert, "Certificate JSON")->required();
  verify->add_option("--omega", omega, "Comma-separated ground set");
  verify->add_option("--function", function, "Also check UP3 against this set function");
  verify->callback([&] { action = [&] { return cmd_covers_verify(cert, omega, function); }; });
  auto* search = covers->add_subcommand("search", "Search for a cover violating UP3");
  search->add_option("--function", function, "Set function JSON")->required();
  search->add_option("--m-max", m_max, "Largest cover size")->check(CLI::Range(1, 64));
  search->callback([&] { action = [&] { return cmd_covers_search(function, m_max); }; });

  auto* props = app.add_subcommand("props", "Report properties (1)-(6)");
  auto* model_opt = props->add_option("--model", model, "Structure JSON");
  auto* function_opt = props->add_option("--function", function, "Set function JSON");
  model_opt->excludes(function_opt);
  props->add_option("--max-sets", max_sets, "Largest n for (1) and (2)")->check(CLI::Range(2, 16));
  props->callback([&] {
    if (model.empty() && function.empty()) throw CLI::ValidationError("props", "give --model or --function");
    action = [&] { return cmd_props(model, function, max_sets); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    return action();
  } catch (const ParseError& e) {
    return report("parse", e.what(), kInputError, &e);
  } catch (const InputError& e) {
    return report("input", e.what(), kInputError);
  } catch (const ResourceError& e) {
    return report("resource", e.what(), kResourceError);
  } catch (const std::filesystem::filesystem_error& e) {
    return report("input", e.what(), kInputError);
  } catch (const std::exception& e) {
    return report("internal", e.what(), kInternalError);
  }
}
