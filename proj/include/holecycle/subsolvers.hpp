#pragma once

#include <map>
#include <optional>
#include <random>
#include <utility>

#include "holecycle/core.hpp"

// Reference solvers for the cited external decomposition theorems, plus the
// equalized proper edge colouring. The searches are exhaustive/randomized
// and valid at desk scale; the feasibility predicates restate the cited
// iff-conditions exactly.

namespace holecycle {

struct SolverBudget {
  uint64_t seed = 12345;
  int max_restarts = 40;
  long max_moves_per_restart = 80000;
};

struct Feasibility {
  bool ok = true;
  std::string reason;
};

Feasibility alspach_feasible(int v, const std::vector<int>& lens);
Feasibility alspach_minus_I_feasible(int v, const std::vector<int>& lens);
Feasibility bipartite_feasible(int p, int q, const std::vector<int>& lens);
Feasibility choufuhuang_feasible(int p, int q, long b, long d);

// Exact search. Canonical order, optional node cap (-1 = unbounded), optional
// per-cycle pure-edge cap. Returns nullopt on exhaustion or infeasibility.
std::optional<std::vector<Cycle>> decompose_exhaustive(const Graph& g, std::vector<int> lengths,
                                                       int per_cycle_pure_cap = 1 << 30,
                                                       long node_cap = -1);

// Backtracking with randomized restarts escalating to a switch-based walk.
std::optional<std::vector<Cycle>> try_decompose(const Graph& g, std::vector<int> lengths,
                                                const SolverBudget& b);

// Greedy split of an even graph into (arbitrary-length) cycles.
std::vector<Cycle> any_cycle_decomposition(const Graph& g);

// One cycle of the given length inside g, if any (exact search).
std::optional<Cycle> find_cycle_of_length(const Graph& g, int len, long node_cap = -1);

// Like try_decompose but throws SearchExhausted with the given context.
std::vector<Cycle> solve_graph(const Graph& g, std::vector<int> lengths, const SolverBudget& b,
                               const std::string& what);

std::vector<Cycle> solve_complete(int v, std::vector<int> lengths, const SolverBudget& b = {});
std::pair<std::vector<Cycle>, std::vector<std::pair<int, int>>> solve_complete_minus_I(
    int v, std::vector<int> lengths, const SolverBudget& b = {});
std::vector<Cycle> solve_bipartite(int p, int q, std::vector<int> lengths,
                                   const SolverBudget& b = {});
std::vector<Cycle> solve_bipartite_46(int p, int q, int b4, int d6, const SolverBudget& b = {});

// Proper edge colouring with `ell` colours whose class sizes differ by at
// most one. Requires max degree <= ell and that the degree-ell vertices
// induce a forest.
using EdgeColoring = std::map<std::pair<int, int>, int>;
EdgeColoring equalized_coloring(const Graph& g, int ell);

}  // namespace holecycle
