#include <json.hpp>
#include <set>
#include <sstream>

#include "sel/tableau.hpp"
#include "sel/textio.hpp"

namespace sel {

std::string emit_json(const Report& report) {
  nlohmann::ordered_json j;
  j["task"] = report.task;
  if (const auto* b = std::get_if<bool>(&report.answer))
    j["answer"] = *b;
  else
    j["answer"] = std::get<std::vector<std::string>>(report.answer);
  if (report.axiom) j["axiom"] = *report.axiom;
  if (report.rule_applications) j["ruleApplications"] = *report.rule_applications;
  if (report.elements) j["elements"] = *report.elements;
  if (report.clash) j["clash"] = {{"element", report.clash->element}, {"variable", report.clash->variable}};
  return j.dump();
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string emit_dot(const tableau::CompletionGraph& graph) {
  const auto& elems = graph.elements();
  std::ostringstream out;
  out << "digraph completion {\n";
  for (std::size_t e = 0; e < elems.size(); ++e)
    out << "  n" << e << " [label=" << quoted(elems[e].name + " (" + std::to_string(elems[e].constraint_count) + ")")
        << "];\n";
  for (const auto& q : graph.quasi_roles()) {
    const std::string label = graph.symbols().roles[q.role] + " @ (" + graph.variables()[q.from_var].name + "," +
                              graph.variables()[q.to_var].name + ")";
    out << "  n" << q.from << " -> n" << q.to << " [label=" << quoted(label) << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace sel
