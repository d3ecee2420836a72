// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fuzz.hpp"
#include "sel/cli.hpp"
#include "sel/oracle.hpp"
#include "sel/tasks.hpp"
#include "sel/textio.hpp"

namespace {

using namespace sel;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

template <typename F>
auto timed(double& elapsed, F&& f) {
  const auto t0 = Clock::now();
  auto r = f();
  elapsed = seconds_since(t0);
  return r;
}

struct Tally {
  bool bounds_ok = true;
  std::size_t bounded_runs = 0;
  std::set<int> normalization_rules;
  tableau::RuleCounters tableau_rules;

  // Saturates the normalized kb, recording counters and the counting bounds.
  tableau::Verdict saturate(const KnowledgeBase& kb) {
    const NormalizationResult norm = normalize(kb);
    for (const auto& step : norm.trace) normalization_rules.insert(step.rule);
    tableau::Verdict v = tableau::saturate(norm.kb);
    record(v);
    return v;
  }
  void record(const tableau::Verdict& v) {
    bounds_ok = bounds_ok && testing::within_counting_bounds(v.graph, v.counters);
    ++bounded_runs;
    tableau_rules += v.counters;
  }
};

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("%s [%d] %s: %s\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

void tumour_satisfiable(Tally& tally) {
  double t = 0;
  const bool sat = timed(t, [&] { return tally.saturate(testing::load_corpus("tumour.sel")).satisfiable; });
  report(1, sat && t < 1.0, "tumour corpus is satisfiable", std::string(sat ? "satisfiable" : "unsatisfiable") + " in " + fmt(t) + " s");
}

void tumour_inferences(Tally& tally) {
  const KnowledgeBase kb = testing::load_corpus("tumour.sel");
  const KnowledgeBase clinic = testing::load_corpus("tumour_clinic.sel");
  bool ok = true;
  double worst = 0;
  std::string missed;
  auto check = [&](bool result, double t, const std::string& name) {
    worst = std::max(worst, t);
    if (!result || t >= 1.0) {
      ok = false;
      missed += " " + name;
    }
  };
  for (const char* q : {"B(TT)[Tumour(b)]", "B(TT)[Tissue(b)]", "B(TP)[Tissue(b)]", "B(TP)[(ex ProductOf.Tumour)(b)]",
                        "B(TP)[(ex ProductOf.(Tumour & AbnormalGrowthProcess))(b)]"}) {
    double t = 0;
    const Answer a = timed(t, [&] { return check_entails(kb, testing::axiom_from(q)); });
    check(a.value, t, q);
  }
  double t = 0;
  const bool clinic_entailed =
      timed(t, [&] { return entails(clinic, testing::axiom_from("B(CL)[(ex AssociatedWith.ColonCancerRisk)(p1)]")); });
  check(clinic_entailed, t, "clinic entailment");
  const auto found = timed(t, [&] { return instances(clinic, testing::concept_from("B(CL)[ex AssociatedWith.ColonCancerRisk]")); });
  check(std::find(found.begin(), found.end(), "p1") != found.end(), t, "clinic instances");
  const bool inconsistent = timed(t, [&] { return !tally.saturate(testing::load_corpus("tumour_inconsistent.sel")).satisfiable; });
  check(inconsistent, t, "inconsistent corpus");
  report(2, ok, "tumour inference suite", ok ? "8 queries answered as expected, slowest " + fmt(worst) + " s" : "failed:" + missed);
}

void normalization(Tally& tally) {
  testing::KbGenerator gen(3001);
  std::size_t not_normal = 0, disagree = 0, budget = 0;
  double worst_ratio = 0;
  for (int i = 0; i < 500; ++i) {
    const KnowledgeBase kb = gen.next();
    const NormalizationResult norm = normalize(kb);
    for (const auto& step : norm.trace) tally.normalization_rules.insert(step.rule);
    not_normal += !is_normal_form(norm.kb);
    worst_ratio = std::max(worst_ratio, static_cast<double>(token_size(norm.kb)) / static_cast<double>(token_size(kb)));
    try {
      disagree += search_model(kb, 4, 4).has_value() != search_model(norm.kb, 4, 4).has_value();
    } catch (const SearchBudgetExceeded&) {
      ++budget;
    }
  }
  const bool ok = not_normal == 0 && worst_ratio <= 10 && disagree == 0 && budget == 0;
  report(3, ok, "normalization on 500 generated KBs",
         std::to_string(not_normal) + " not normal, max size ratio " + fmt(worst_ratio) + ", " +
             std::to_string(disagree) + " oracle disagreements, " + std::to_string(budget) + " budget stops");
}

void differential(Tally& tally) {
  testing::KbGenerator gen(4001);
  std::size_t unsound = 0, bad_models = 0, sat = 0, misses = 0;
  const auto t0 = Clock::now();
  for (int i = 0; i < 500; ++i) {
    const KnowledgeBase kb = gen.next();
    const testing::DifferentialResult r = testing::differential(kb);
    for (int rule : r.normalization_rules) tally.normalization_rules.insert(rule);
    tally.tableau_rules += r.counters;
    tally.bounds_ok = tally.bounds_ok && r.bounds_ok;
    ++tally.bounded_runs;
    sat += r.tableau_sat;
    unsound += r.unsound;
    bad_models += r.extraction_failed || r.extraction_capped;
    misses += r.oracle_miss;
    if (r.unsound || r.extraction_failed) std::printf("  counterexample:\n%s  %s\n", serialize(kb).c_str(), r.detail.c_str());
  }
  report(4, unsound == 0 && bad_models == 0, "differential fuzzing on 500 KBs",
         std::to_string(unsound) + " unsound, " + std::to_string(sat) + " satisfiable with " + std::to_string(bad_models) +
             " failed extractions, " + std::to_string(misses) + " beyond oracle bounds, " + fmt(seconds_since(t0)) + " s");
}

bool scaling(Tally& tally, std::string& detail) {
  std::vector<double> xs, ys;
  double slowest = 0;
  for (int n : {50, 100, 200, 400, 800}) {
    const KnowledgeBase kb = testing::chain_family(n);
    double t = 0;
    const bool sat = timed(t, [&] { return tally.saturate(kb).satisfiable; });
    if (!sat) {
      detail = "chain n=" + std::to_string(n) + " unsatisfiable";
      return false;
    }
    xs.push_back(std::log(n));
    ys.push_back(std::log(std::max(t, 1e-6)));
    slowest = t;
    detail += "n=" + std::to_string(n) + ":" + fmt(t) + "s ";
  }
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  const double slope = sxy / sxx;
  detail += "slope " + fmt(slope);
  return slope <= 7 && slowest <= 60;
}

void determinism() {
  struct Command {
    std::vector<std::string> args;
  };
  const std::vector<Command> commands = {
      {{"sat"}},
      {{"sat", "--format", "json", "--trace"}},
      {{"entails", "--axiom", "B(TT)[Tumour(b)]"}},
      {{"entails", "--axiom", "B(CL)[(ex AssociatedWith.ColonCancerRisk)(p1)]", "--format", "json"}},
      {{"concept-sat", "--concept", "B(SN)[Tumour & Process]"}},
      {{"instances", "--concept", "B(CL)[ex AssociatedWith.ColonCancerRisk]"}},
      {{"instances", "--concept", "Top", "--format", "json"}},
      {{"normalize"}},
      {{"normalize", "--trace"}},
      {{"oracle", "--max-domain", "2", "--max-prec", "2"}},
      {{"dump-graph"}},
  };
  std::size_t runs = 0, differing = 0;
  std::string first;
  for (const char* file : {"tumour.sel", "tumour_clinic.sel", "tumour_inconsistent.sel", "grammar.sel"}) {
    for (const Command& c : commands) {
      std::vector<std::string> args = c.args;
      args.insert(args.begin() + 1, testing::corpus_path(file));
      std::string outputs[2];
      for (auto& o : outputs) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        o = std::to_string(code) + "\n" + out.str() + "\n" + err.str();
      }
      ++runs;
      if (outputs[0] != outputs[1]) {
        ++differing;
        if (first.empty()) first = std::string(" first: ") + file + " " + args[0];
      }
    }
  }
  report(7, differing == 0, "determinism of every command on every corpus file",
         std::to_string(runs) + " command runs repeated, " + std::to_string(differing) + " differ" + first);
}

void coverage(const Tally& tally) {
  std::string missing;
  for (int r = kFirstNormalizationRule; r <= kLastNormalizationRule; ++r)
    if (!tally.normalization_rules.count(r)) missing += " (" + std::to_string(r) + ")";
  for (std::size_t r = 0; r < tableau::kRuleCount; ++r)
    if (tally.tableau_rules.applications[r] == 0) missing += std::string(" ") + tableau::rule_name(tableau::Rule(r));
  report(8, missing.empty(), "rule coverage",
         missing.empty() ? "all 12 normalization rules and all 12 tableau rules fired" : "never fired:" + missing);
}

}  // namespace

int main() {
  Tally tally;
  tumour_satisfiable(tally);
  tumour_inferences(tally);
  normalization(tally);
  differential(tally);
  for (const char* file : {"tumour_clinic.sel", "grammar.sel"}) tally.saturate(testing::load_corpus(file));
  std::string scaling_detail;
  const bool scaling_ok = scaling(tally, scaling_detail);
  report(5, tally.bounds_ok, "counting bounds on every run",
         std::to_string(tally.bounded_runs) + " saturations within 27|K|^6 steps, 3|K|^2 elements, 2|K|^3 constraints");
  report(6, scaling_ok, "polynomial scaling on the chain family", scaling_detail);
  determinism();
  coverage(tally);
  std::printf("%s\n", failures == 0 ? "all criteria passed" : (std::to_string(failures) + " criteria failed").c_str());
  return failures == 0 ? 0 : 1;
}
