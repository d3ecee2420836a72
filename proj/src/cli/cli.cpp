#include "sel/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sel/normalizer.hpp"
#include "sel/oracle.hpp"
#include "sel/tasks.hpp"
#include "sel/textio.hpp"

namespace sel::cli {
namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string command;
  std::string kb_path;
  std::string axiom;
  std::string concept_text;
  std::string format = "text";
  bool trace = false;
  std::string dot;
  std::size_t max_domain = 4;
  std::size_t max_prec = 4;
};

void report_diagnostics(const std::vector<ParseDiagnostic>& diags, const std::string& where, std::ostream& err) {
  for (const auto& d : diags) err << where << ":" << to_string(d) << "\n";
}

KnowledgeBase load(const Config& cfg, std::ostream& err) {
  std::ifstream in(cfg.kb_path, std::ios::binary);
  if (!in) throw InputError("cannot read " + cfg.kb_path);
  std::stringstream buf;
  buf << in.rdbuf();
  auto parsed = parse(buf.str());
  if (!parsed.ok()) {
    report_diagnostics(parsed.diagnostics, cfg.kb_path, err);
    throw InputError("parse failed");
  }
  return desugar_blocks(*parsed.value);
}

Axiom load_axiom(const Config& cfg, std::ostream& err) {
  if (cfg.axiom.empty()) throw InputError("--axiom is required");
  auto parsed = parse_axiom(cfg.axiom);
  if (!parsed.ok()) {
    report_diagnostics(parsed.diagnostics, "--axiom", err);
    throw InputError("axiom parse failed");
  }
  return *parsed.value;
}

ConceptTerm load_concept(const Config& cfg, std::ostream& err) {
  if (cfg.concept_text.empty()) throw InputError("--concept is required");
  auto parsed = parse_concept(cfg.concept_text);
  if (!parsed.ok()) {
    report_diagnostics(parsed.diagnostics, "--concept", err);
    throw InputError("concept parse failed");
  }
  return *parsed.value;
}

TaskOptions task_options(const Config& cfg, std::ostream& err) {
  TaskOptions opt;
  if (const char* steps = std::getenv("SEL_MAX_STEPS")) opt.tableau.max_steps = std::strtoull(steps, nullptr, 10);
  if (cfg.trace) {
    opt.tableau.trace = [&err](const tableau::TraceRecord& r) {
      nlohmann::ordered_json j;
      j["rule"] = tableau::rule_name(r.rule);
      j["element"] = r.element;
      j["variable"] = r.variable;
      j["added"] = r.added;
      err << j.dump() << "\n";
    };
  }
  return opt;
}

int boolean_result(const Config& cfg, Report report, const Answer& a, const char* yes, const char* no,
                   std::ostream& out) {
  report.answer = a.value;
  if (cfg.format == "json") {
    report.rule_applications = a.counters.total();
    report.elements = a.elements;
    if (a.clash) report.clash = Report::Clash{a.clash->element, a.clash->variable};
    out << emit_json(report) << "\n";
    return kAnswered;
  }
  out << (a.value ? yes : no) << "\n";
  return a.value ? kAnswered : kNegative;
}

int dispatch(const Config& cfg, std::ostream& out, std::ostream& err) {
  const KnowledgeBase kb = load(cfg, err);
  const TaskOptions opt = task_options(cfg, err);
  const bool json = cfg.format == "json";
  Report report;
  report.task = cfg.command;

  if (cfg.command == "sat") return boolean_result(cfg, report, check_satisfiable(kb, opt), "satisfiable", "unsatisfiable", out);

  if (cfg.command == "entails") {
    const Axiom axiom = load_axiom(cfg, err);
    report.axiom = to_string(axiom);
    return boolean_result(cfg, report, check_entails(kb, axiom, opt), "entailed", "not entailed", out);
  }

  if (cfg.command == "concept-sat") {
    const ConceptTerm c = load_concept(cfg, err);
    Answer a = check_entails(kb, global(Gci{c, ConceptTerm::bot()}), opt);
    a.value = !a.value;
    return boolean_result(cfg, report, a, "satisfiable", "unsatisfiable", out);
  }

  if (cfg.command == "instances") {
    const auto names = instances(kb, load_concept(cfg, err), opt);
    if (json) {
      report.answer = names;
      out << emit_json(report) << "\n";
    } else {
      for (const auto& n : names) out << n << "\n";
    }
    return kAnswered;
  }

  if (cfg.command == "normalize") {
    const NormalizationResult r = normalize(kb);
    if (cfg.trace) {
      for (const auto& step : r.trace) {
        nlohmann::ordered_json j;
        j["rule"] = step.rule;
        j["replaced"] = to_string(step.replaced);
        j["replacements"] = nlohmann::ordered_json::array();
        for (const auto& a : step.replacements) j["replacements"].push_back(to_string(a));
        err << j.dump() << "\n";
      }
    }
    const std::string text = serialize(r.kb);
    if (json) {
      std::vector<std::string> lines;
      std::istringstream in(text);
      for (std::string line; std::getline(in, line);) lines.push_back(line);
      report.answer = lines;
      out << emit_json(report) << "\n";
    } else {
      out << text;
    }
    return kAnswered;
  }

  if (cfg.command == "oracle") {
    const auto model = search_model(kb, cfg.max_domain, cfg.max_prec);
    if (json) {
      nlohmann::ordered_json j;
      j["task"] = "oracle";
      j["answer"] = model.has_value();
      if (model) j["model"] = nlohmann::ordered_json::parse(structure_to_json(*model));
      out << j.dump() << "\n";
      return kAnswered;
    }
    if (!model) {
      out << "no model within bounds\n";
      return kNegative;
    }
    out << "model found\n" << structure_to_json(*model) << "\n";
    return kAnswered;
  }

  // dump-graph
  const tableau::Verdict v = tableau::saturate(normalize(kb).kb, opt.tableau);
  const std::string dot = emit_dot(v.graph);
  if (cfg.dot.empty()) {
    out << dot;
  } else {
    std::ofstream file(cfg.dot, std::ios::binary);
    if (!file) throw InputError("cannot write " + cfg.dot);
    file << dot;
  }
  return kAnswered;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Standpoint EL reasoner"};
  app.require_subcommand(1);
  Config cfg;
  const std::vector<std::pair<const char*, const char*>> commands = {
      {"sat", "decide satisfiability"},
      {"entails", "decide entailment of --axiom"},
      {"concept-sat", "decide satisfiability of --concept"},
      {"instances", "list individuals that are instances of --concept"},
      {"normalize", "print the normal form"},
      {"oracle", "bounded model search"},
      {"dump-graph", "saturate and write the completion graph as DOT"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("kb", cfg.kb_path, "knowledge base (.sel)")->required();
    sub->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json"}));
    sub->add_flag("--trace", cfg.trace, "step records as JSON lines on stderr");
    if (std::string(name) == "entails") sub->add_option("--axiom", cfg.axiom)->required();
    if (std::string(name) == "concept-sat" || std::string(name) == "instances")
      sub->add_option("--concept", cfg.concept_text)->required();
    if (std::string(name) == "dump-graph") sub->add_option("--dot", cfg.dot, "output path (default stdout)");
    if (std::string(name) == "oracle") {
      sub->add_option("--max-domain", cfg.max_domain)->check(CLI::Range(1, 8));
      sub->add_option("--max-prec", cfg.max_prec)->check(CLI::Range(1, 8));
    }
    sub->callback([&cfg, sub] { cfg.command = sub->get_name(); });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kAnswered;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kInputError;
  }

  try {
    return dispatch(cfg, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace sel::cli
