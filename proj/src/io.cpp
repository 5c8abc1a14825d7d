#include "dianet/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace dianet {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

SystemSpec parse_system(std::string_view text) {
  SystemSpec spec;
  bool have_system = false;
  std::vector<std::string> observable, unobservable, fault_names;
  bool have_obs = false, have_unobs = false, have_faults = false;

  struct RawComponent {
    std::string name;
    int line;
    std::string initial;
    bool have_initial = false;
    std::vector<std::array<std::string, 3>> trans;  // src action dst
    std::vector<int> trans_lines;
  };
  std::vector<RawComponent> raw;
  RawComponent* open = nullptr;

  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    const std::string& head = tokens[0];

    auto rest = [&](std::size_t from = 1) {
      return std::vector<std::string>(tokens.begin() + from, tokens.end());
    };

    if (head == "system") {
      if (have_system) throw SyntaxError(lineno, "duplicate 'system' line");
      if (tokens.size() != 2)
        throw SyntaxError(lineno, "expected: system <name>");
      spec.name = tokens[1];
      have_system = true;
    } else if (head == "observable:" || head == "unobservable:" ||
               head == "faults:") {
      if (open) throw SyntaxError(lineno, "alphabet line inside a component");
      auto& target = head == "observable:"
                         ? observable
                         : head == "unobservable:" ? unobservable : fault_names;
      bool& seen = head == "observable:"
                       ? have_obs
                       : head == "unobservable:" ? have_unobs : have_faults;
      if (seen) throw SyntaxError(lineno, "duplicate '" + head + "' line");
      seen = true;
      for (auto& t : rest()) target.push_back(t);
    } else if (head == "component") {
      if (open) throw SyntaxError(lineno, "missing 'end' before 'component'");
      if (tokens.size() != 2)
        throw SyntaxError(lineno, "expected: component <name>");
      for (const auto& rc : raw)
        if (rc.name == tokens[1])
          throw DuplicateState(lineno,
                               "component '" + tokens[1] + "' defined twice");
      raw.push_back({tokens[1], lineno, "", false, {}, {}});
      open = &raw.back();
    } else if (head == "initial") {
      if (!open) throw SyntaxError(lineno, "'initial' outside a component");
      if (tokens.size() != 2)
        throw SyntaxError(lineno, "expected: initial <state>");
      if (open->have_initial)
        throw DuplicateState(lineno, "component '" + open->name +
                                         "' declares a second initial state");
      open->initial = tokens[1];
      open->have_initial = true;
    } else if (head == "trans") {
      if (!open) throw SyntaxError(lineno, "'trans' outside a component");
      if (tokens.size() != 4)
        throw SyntaxError(lineno, "expected: trans <src> <action> <dst>");
      open->trans.push_back({tokens[1], tokens[2], tokens[3]});
      open->trans_lines.push_back(lineno);
    } else if (head == "end") {
      if (!open) throw SyntaxError(lineno, "'end' without open component");
      if (!open->have_initial)
        throw SyntaxError(lineno, "component '" + open->name +
                                      "' has no initial state");
      open = nullptr;
    } else {
      throw SyntaxError(lineno, "unrecognized directive '" + head + "'");
    }
  }
  if (open) throw SyntaxError(lineno, "unterminated component block");
  if (!have_system) throw SyntaxError(lineno, "missing 'system' line");
  if (raw.empty()) throw SyntaxError(lineno, "no components defined");

  // Every fault must be declared unobservable.
  std::set<std::string> unobs_set(unobservable.begin(), unobservable.end());
  for (const auto& f : fault_names)
    if (!unobs_set.count(f))
      throw FaultNotUnobservable("fault '" + f +
                                 "' is not listed as unobservable");
  std::set<std::string> fault_set(fault_names.begin(), fault_names.end());
  try {
    for (const auto& a : observable) spec.sigma.add_observable(a);
    for (const auto& a : unobservable)
      spec.sigma.add_unobservable(a, fault_set.count(a) > 0);
  } catch (const Error& e) {
    throw SyntaxError(1, e.what());
  }

  for (auto& rc : raw) {
    Automaton a;
    a.name = rc.name;
    std::map<std::string, StateId> states;
    auto state_id = [&](const std::string& s) {
      auto [it, inserted] = states.try_emplace(s, a.states.size());
      if (inserted) a.add_state(s);
      return it->second;
    };
    a.initial = state_id(rc.initial);
    std::set<std::array<std::string, 3>> dedup;
    for (std::size_t k = 0; k < rc.trans.size(); ++k) {
      const auto& [src, action, dst] = rc.trans[k];
      if (!dedup.insert(rc.trans[k]).second) continue;  // relation: a set
      auto id = spec.sigma.find(action);
      if (!id)
        throw UndeclaredAction(rc.trans_lines[k],
                               "action '" + action + "' is not declared");
      a.add_transition(state_id(src), *id, state_id(dst));
    }
    spec.components.push_back(std::move(a));
  }

  // Non-fault unobservable labels must stay component-local.
  std::map<ActionId, int> users;
  for (const auto& c : spec.components)
    for (ActionId act : c.alphabet()) users[act]++;
  for (const auto& [act, count] : users)
    if (count >= 2 && !spec.sigma.is_observable(act) &&
        !spec.sigma.is_fault(act))
      throw SharedUnobservable("unobservable non-fault action '" +
                               spec.sigma.name(act) +
                               "' is shared between components");
  return spec;
}

SystemSpec parse_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_system(buf.str());
}

std::string render_system(const SystemSpec& spec) {
  std::ostringstream out;
  out << "system " << spec.name << "\n";
  auto emit_list = [&](const char* head, const std::vector<ActionId>& ids) {
    out << head;
    for (ActionId a : ids) out << " " << spec.sigma.name(a);
    out << "\n";
  };
  std::vector<ActionId> obs, unobs;
  for (ActionId a = 0; a < spec.sigma.size(); ++a)
    (spec.sigma.is_observable(a) ? obs : unobs).push_back(a);
  emit_list("observable:", obs);
  emit_list("unobservable:", unobs);
  emit_list("faults:", spec.sigma.faults());
  for (const auto& c : spec.components) {
    out << "component " << c.name << "\n";
    out << "  initial " << c.states[c.initial] << "\n";
    for (const auto& t : c.transitions)
      out << "  trans " << c.states[t.src] << " " << spec.sigma.name(t.action)
          << " " << c.states[t.dst] << "\n";
    out << "end\n";
  }
  return out.str();
}

namespace {

using nlohmann::json;

json trace_json(const AlphabetPartition& sigma,
                const std::vector<ActionId>& seq) {
  json out = json::array();
  for (ActionId a : seq) out.push_back(sigma.name(a));
  return out;
}

json trace_lasso_json(const AlphabetPartition& sigma, const TraceLasso& l) {
  json out;
  out["stem"] = trace_json(sigma, l.stem);
  out["loop"] = trace_json(sigma, l.loop);
  return out;
}

json verdict_json(const Verdict& v, const std::string& system,
                  const AlphabetPartition& sigma,
                  const std::set<ActionId>* fallback_used,
                  const std::string* error) {
  json out;
  out["system"] = system;
  out["fault"] = sigma.name(v.fault);
  out["status"] = to_string(v.status);
  if (v.method) out["method"] = to_string(*v.method);
  json stats;
  stats["markings_explored"] = v.markings_explored;
  if (v.vacuous_verifier) stats["vacuous_verifier"] = true;
  if (error) stats["error"] = *error;
  out["stats"] = std::move(stats);
  if (v.witness) {
    json w;
    w["faulty"] = trace_lasso_json(sigma, v.witness->faulty_trace);
    w["fault_free"] = trace_lasso_json(sigma, v.witness->fault_free_trace);
    w["observation"] = trace_lasso_json(sigma, v.witness->observation);
    out["witness"] = std::move(w);
  }
  if (fallback_used)
    out["fallback_used"] = fallback_used->count(v.fault) > 0;
  return out;
}

}  // namespace

std::string emit_verdict_json(const Verdict& verdict,
                              const std::string& system,
                              const AlphabetPartition& sigma) {
  json out = verdict_json(verdict, system, sigma, nullptr, nullptr);
  return out.dump(2) + "\n";
}

std::string emit_verdicts_json(const std::vector<Verdict>& verdicts,
                               const std::string& system,
                               const AlphabetPartition& sigma) {
  json arr = json::array();
  for (const Verdict& v : verdicts)
    arr.push_back(verdict_json(v, system, sigma, nullptr, nullptr));
  return arr.dump(2) + "\n";
}

std::string emit_verdict_json(const DistributedReport& report,
                              const AlphabetPartition& sigma) {
  json arr = json::array();
  for (ActionId f : sigma.faults()) {
    auto it = report.aggregate.find(f);
    if (it != report.aggregate.end()) {
      arr.push_back(verdict_json(it->second, report.system, sigma,
                                 &report.fallback_used, nullptr));
    } else {
      // A failed task leaves the fault without a verdict.
      Verdict none;
      none.fault = f;
      none.status = Status::inconclusive;
      const std::string* error = nullptr;
      if (auto e = report.errors.find(f); e != report.errors.end())
        error = &e->second;
      arr.push_back(verdict_json(none, report.system, sigma,
                                 &report.fallback_used, error));
    }
  }
  return arr.dump(2) + "\n";
}

std::string emit_dot(const LabelledNet& net, const AlphabetPartition& sigma) {
  std::ostringstream out;
  out << "digraph \"" << net.name << "\" {\n";
  out << "  rankdir=TB;\n";
  for (PlaceId p = 0; p < net.num_places(); ++p) {
    bool marked = net.initial.contains(p);
    out << "  p" << p << " [shape=circle, label=\"" << net.place_names[p]
        << (marked ? "\\n&#9679;" : "") << "\"];\n";
  }
  for (TransId t = 0; t < net.num_transitions(); ++t) {
    out << "  t" << t << " [shape=box, label=\""
        << sigma.name(net.label[t]) << "\"];\n";
    for (PlaceId p : net.pre[t]) out << "  p" << p << " -> t" << t << ";\n";
    for (PlaceId p : net.post[t]) out << "  t" << t << " -> p" << p << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string emit_dot(const VerifierNet& v, const AlphabetPartition& sigma) {
  std::ostringstream out;
  out << "digraph \"" << v.net.name << "\" {\n";
  out << "  rankdir=TB;\n";
  for (PlaceId p = 0; p < v.net.num_places(); ++p) {
    bool marked = v.net.initial.contains(p);
    out << "  p" << p << " [shape=circle, label=\"" << v.net.place_names[p]
        << (marked ? "\\n&#9679;" : "") << "\"];\n";
  }
  for (TransId t = 0; t < v.net.num_transitions(); ++t) {
    // Fused transitions show the plain label; replica copies keep their tag.
    std::string label = sigma.name(v.net.label[t]);
    if (v.trans_replica[t] == Replica::one) label += "^1";
    if (v.trans_replica[t] == Replica::two) label += "^2";
    out << "  t" << t << " [shape=box, label=\"" << label << "\"];\n";
    for (PlaceId p : v.net.pre[t]) out << "  p" << p << " -> t" << t << ";\n";
    for (PlaceId p : v.net.post[t]) out << "  t" << t << " -> p" << p << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string emit_dot(const OccurrenceNet& on, const AlphabetPartition& sigma) {
  std::ostringstream out;
  out << "digraph \"prefix(" << on.base.name << ")\" {\n";
  out << "  rankdir=TB;\n";
  for (int c = 0; c < static_cast<int>(on.conditions.size()); ++c) {
    out << "  c" << c << " [shape=circle, label=\""
        << on.base.place_names[on.conditions[c].place] << ":" << c
        << "\"];\n";
  }
  for (int e = 0; e < static_cast<int>(on.events.size()); ++e) {
    const auto& ev = on.events[e];
    out << "  e" << e << " [shape=box, label=\""
        << sigma.name(on.base.label[ev.trans]) << ":" << e << "\""
        << (ev.cutoff ? ", style=dashed" : "") << "];\n";
    for (int c : ev.preset) out << "  c" << c << " -> e" << e << ";\n";
    for (int c : ev.postset) out << "  e" << e << " -> c" << c << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace dianet
