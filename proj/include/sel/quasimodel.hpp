// Coherence, runs, and model extraction on saturated completion graphs.
#pragma once

#include <optional>
#include <vector>

#include "sel/oracle.hpp"
#include "sel/signature.hpp"
#include "sel/tableau.hpp"

namespace sel::tableau {

bool check_coherence(const CompletionGraph& g);

// r(ε) for every element, indexed by element id.
using Run = std::vector<VarId>;

bool is_run(const CompletionGraph& g, const Run& r);

struct RunSet {
  std::vector<Run> runs;
  bool capped = false;
};

// Every run, by backtracking over per-element choices with quasi-role
// propagation; stops with capped = true once more than `cap` runs exist.
RunSet enumerate_runs(const CompletionGraph& g, std::size_t cap);

// A set of runs such that every variable of every element is hit by one of
// them; capped if more than `cap` runs would be needed or the search gives up.
RunSet covering_runs(const CompletionGraph& g, std::size_t cap);

struct Extraction {
  std::optional<StandpointStructure> model;
  bool capped = false;
};

// Δ holds each individual's element once and, for every other element, one
// copy per variable. A precisification fixes a standpoint signature t and
// rotates each element's copies over its variables of type t, so every
// variable is taken by some copy and every copy visits every variable of
// type t; individuals follow assignments closed under their quasi-roles.
// Roles are the quasi-roles between the variables taken. `cap` bounds the
// number of precisifications. Names of `vocabulary` unknown to the graph get
// empty extensions (standpoints: all of Π), so the result can be checked
// against the knowledge base the graph was normalized from.
Extraction extract_model(const CompletionGraph& g, std::size_t cap, const Signature* vocabulary = nullptr);

}  // namespace sel::tableau
