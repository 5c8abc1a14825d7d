// dianet: diagnosability analysis of synchronized labelled Petri nets.
//
// Exit codes: 0 diagnosable, 1 non-diagnosable, 2 inconclusive,
//             3 input or usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dianet/io.hpp"

using namespace dianet;

namespace {

std::size_t node_limit_from_env() {
  const char* env = std::getenv("DIANET_NODE_LIMIT");
  if (!env) return kDefaultNodeLimit;
  char* end = nullptr;
  unsigned long long value = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || value == 0) {
    std::cerr << "warning: ignoring invalid DIANET_NODE_LIMIT '" << env
              << "'\n";
    return kDefaultNodeLimit;
  }
  return static_cast<std::size_t>(value);
}

// Warnings on stderr; fatal under --strict.
bool report_assumptions(const SystemSpec& spec, bool strict) {
  bool ok = true;
  for (const auto& c : spec.components) {
    AssumptionReport report = validate_assumptions(c, spec.sigma);
    for (const auto& v : report.violations) {
      ok = false;
      std::cerr << (strict ? "error" : "warning") << ": assumption "
                << v.assumption << " violated: " << v.detail << "\n";
    }
  }
  return ok || !strict;
}

std::vector<ActionId> selected_faults(const SystemSpec& spec,
                                      const std::string& fault_name) {
  auto faults = spec.sigma.faults();
  if (fault_name.empty()) {
    if (faults.empty()) throw Error("the system declares no faults");
    return faults;
  }
  auto id = spec.sigma.find(fault_name);
  if (!id || !spec.sigma.is_fault(*id))
    throw Error("'" + fault_name + "' is not a declared fault");
  return {*id};
}

int exit_code_for(const std::vector<Status>& statuses) {
  int code = 0;
  for (Status s : statuses) {
    if (s == Status::non_diagnosable) return 1;
    if (s == Status::inconclusive) code = std::max(code, 2);
  }
  return code;
}

void describe(std::ostream& out, const SystemSpec& spec, const Verdict& v,
              bool fallback_used) {
  out << "fault " << spec.sigma.name(v.fault) << ": " << to_string(v.status);
  if (v.method) out << " [" << to_string(*v.method) << "]";
  if (fallback_used) out << " (resolved by global fallback)";
  out << "  (" << v.markings_explored << " markings, " << v.time_ms << " ms)";
  if (v.vacuous_verifier) out << " [verifier admits no infinite run]";
  out << "\n";
  if (v.witness) {
    auto show = [&](const TraceLasso& t) {
      std::string s;
      for (ActionId a : t.stem) s += spec.sigma.name(a) + " ";
      s += "( ";
      for (ActionId a : t.loop) s += spec.sigma.name(a) + " ";
      s += ")^w";
      return s;
    };
    out << "  faulty:      " << show(v.witness->faulty_trace) << "\n";
    out << "  fault-free:  " << show(v.witness->fault_free_trace) << "\n";
    out << "  observation: " << show(v.witness->observation) << "\n";
  }
}

int run_check(const std::string& file, const std::string& fault_name,
              bool global, bool no_fallback, int jobs, bool strict,
              const std::string& json_path, std::size_t limit) {
  SystemSpec spec = parse_system_file(file);
  if (!report_assumptions(spec, strict)) return 3;
  std::vector<ActionId> faults = selected_faults(spec, fault_name);

  std::string json_text;
  std::vector<Status> statuses;
  if (global) {
    std::vector<Verdict> verdicts;
    for (ActionId f : faults) {
      Verdict v = check_global(spec, f, limit);
      describe(std::cout, spec, v, false);
      statuses.push_back(v.status);
      verdicts.push_back(std::move(v));
    }
    json_text = verdicts.size() == 1
                    ? emit_verdict_json(verdicts[0], spec.name, spec.sigma)
                    : emit_verdicts_json(verdicts, spec.name, spec.sigma);
  } else {
    DistributedReport report =
        run_distributed(spec, !no_fallback, jobs, limit);
    for (ActionId f : faults) {
      auto it = report.aggregate.find(f);
      if (it == report.aggregate.end()) {
        std::cerr << "error: checking fault " << spec.sigma.name(f)
                  << " failed: " << report.errors[f] << "\n";
        return 3;
      }
      describe(std::cout, spec, it->second,
               report.fallback_used.count(f) > 0);
      statuses.push_back(it->second.status);
    }
    json_text = emit_verdict_json(report, spec.sigma);
  }
  if (!json_path.empty()) {
    std::ofstream out(json_path, std::ios::binary);
    if (!out) throw Error("cannot write '" + json_path + "'");
    out << json_text;
  }
  return exit_code_for(statuses);
}

int run_export(const std::string& file, const std::string& what,
               const std::string& fault_name, bool prune, bool strict,
               std::size_t limit) {
  SystemSpec spec = parse_system_file(file);
  if (!report_assumptions(spec, strict)) return 3;

  auto fault = [&]() -> ActionId {
    auto faults = selected_faults(spec, fault_name);
    if (faults.size() != 1)
      throw Error("select one fault with --fault (system has several)");
    return faults[0];
  };

  if (what == "net") {
    ProductNet pn = system_product(spec);
    if (prune) pn = prune_unreachable(pn, limit);
    std::cout << emit_dot(pn.net, spec.sigma);
  } else if (what == "verifier") {
    ProductNet pn = system_product(spec);
    if (prune) pn = prune_unreachable(pn, limit);
    std::cout << emit_dot(build_verifier(pn.net, fault(), spec.sigma),
                          spec.sigma);
  } else if (what == "prefix") {
    ProductNet pn = system_product(spec);
    if (prune) pn = prune_unreachable(pn, limit);
    if (fault_name.empty()) {
      std::cout << emit_dot(unfold(pn.net, limit), spec.sigma);
    } else {
      VerifierNet v = build_verifier(pn.net, fault(), spec.sigma);
      std::cout << emit_dot(unfold(v.net, limit), spec.sigma);
    }
  } else if (what.rfind("view:", 0) == 0) {
    std::string comp = what.substr(5);
    int index = -1;
    for (int i = 0; i < static_cast<int>(spec.components.size()); ++i)
      if (spec.components[i].name == comp) index = i;
    if (index < 0) throw Error("no component named '" + comp + "'");
    ProductNet pn = component_view(spec, index, fault());
    if (prune) pn = prune_unreachable(pn, limit);
    std::cout << emit_dot(pn.net, spec.sigma);
  } else {
    throw Error("--what must be net, verifier, view:<component> or prefix");
  }
  return 0;
}

int run_validate(const std::string& file, bool strict) {
  SystemSpec spec = parse_system_file(file);
  int violations = 0;
  for (const auto& c : spec.components) {
    AssumptionReport report = validate_assumptions(c, spec.sigma);
    violations += static_cast<int>(report.violations.size());
    for (const auto& v : report.violations)
      std::cout << "assumption " << v.assumption << " violated: " << v.detail
                << "\n";
  }
  std::cout << "ok: " << spec.components.size() << " components, "
            << spec.sigma.size() << " actions, " << spec.sigma.faults().size()
            << " faults";
  if (violations) std::cout << ", " << violations << " assumption warnings";
  std::cout << "\n";
  return strict && violations ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"diagnosability analysis of synchronized labelled Petri nets"};
  app.require_subcommand(1);
  std::size_t limit = node_limit_from_env();

  std::string file, fault_name, json_path, what;
  bool global = false, distributed = false, no_fallback = false;
  bool strict = false, prune = false;
  int jobs = 0;

  CLI::App* check = app.add_subcommand("check", "decide diagnosability");
  check->add_option("file", file, "system description")->required();
  check->add_option("--fault", fault_name, "check only this fault");
  check->add_flag("--global", global, "single twin-plant check of the product");
  check->add_flag("--distributed", distributed,
                  "per-component checks with aggregation (default)");
  check->add_flag("--no-fallback", no_fallback,
                  "do not resolve inconclusive faults globally");
  check->add_option("--jobs", jobs, "worker count (default: all cores)");
  check->add_flag("--strict", strict, "assumption violations become errors");
  check->add_option("--json", json_path, "write the canonical JSON verdict");

  CLI::App* exp = app.add_subcommand("export-dot", "emit Graphviz drawings");
  exp->add_option("file", file, "system description")->required();
  exp->add_option("--what", what, "net | verifier | view:<component> | prefix")
      ->required();
  exp->add_option("--fault", fault_name, "fault for verifier/view/prefix");
  exp->add_flag("--prune", prune, "restrict to transitions on infinite runs");
  exp->add_flag("--strict", strict, "assumption violations become errors");

  CLI::App* val = app.add_subcommand("validate", "parse and check assumptions");
  val->add_option("file", file, "system description")->required();
  val->add_flag("--strict", strict, "assumption violations become errors");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) {
      if (global && distributed)
        throw Error("--global and --distributed exclude each other");
      return run_check(file, fault_name, global, no_fallback, jobs, strict,
                       json_path, limit);
    }
    if (exp->parsed())
      return run_export(file, what, fault_name, prune, strict, limit);
    return run_validate(file, strict);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
