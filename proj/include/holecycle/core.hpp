#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Core model: the complete graph with a hole K_{u+w}-K_u, cycle packings,
// leaves, and the independent verifier that certifies every decomposition
// produced elsewhere in the library.

namespace holecycle {

enum class Err {
  ZeroPart,
  NotAnEdge,
  NotTwin,
  InvalidOrigin,
  DegreeNotGreater,
  BoundViolated,
  NoWitness,
  NotEven,
  HypothesisViolated,
  StructureMismatch,
  SearchExhausted,
  Infeasible,
  OutOfScope,
  InternalInvariantBreach,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
 public:
  Err code;
  Error(Err c, const std::string& msg)
      : std::runtime_error(std::string(err_name(c)) + ": " + msg), code(c) {}
};

[[noreturn]] inline void fail(Err c, const std::string& msg) { throw Error(c, msg); }

inline void require(bool ok, Err c, const std::string& msg) {
  if (!ok) fail(c, msg);
}

// Internal breach: used where the paper's argument guarantees a property.
inline void ensure(bool ok, const std::string& msg) {
  if (!ok) fail(Err::InternalInvariantBreach, msg);
}

enum class Part : uint8_t { Hole, Outer };

// Public-facing vertex of K_{u+w}-K_u. Internally all code uses dense ids:
// hole vertices are 0..u-1, outer vertices u..u+w-1.
struct Vertex {
  Part part;
  int index;
  bool operator==(const Vertex&) const = default;
};

constexpr int kMaxVertices = 32;

uint32_t low_mask(int k);  // bits 0..k-1

// Dense graph on at most 32 global vertex ids, adjacency held as bitmask
// rows. Also serves as a "host": subgraph hosts such as K_{U',W} live on
// the same global ids with a restricted edge set. `wside` marks vertices
// outside the hole so pure/cross classification survives subgraphs.
struct Graph {
  int n = 0;
  uint32_t wside = 0;
  std::array<uint32_t, kMaxVertices> adj{};

  bool edge(int x, int y) const { return x != y && (adj[x] >> y) & 1u; }
  void add_edge(int x, int y) {
    adj[x] |= 1u << y;
    adj[y] |= 1u << x;
  }
  void remove_edge(int x, int y) {
    adj[x] &= ~(1u << y);
    adj[y] &= ~(1u << x);
  }
  void toggle_edge(int x, int y) {
    adj[x] ^= 1u << y;
    adj[y] ^= 1u << x;
  }
  int degree(int x) const { return __builtin_popcount(adj[x]); }
  bool in_w(int x) const { return (wside >> x) & 1u; }
  bool pure(int x, int y) const { return in_w(x) && in_w(y); }

  int edge_count() const;
  int pure_count() const;
  int cross_count() const { return edge_count() - pure_count(); }
  bool even() const;
  uint32_t support() const;  // vertices of positive degree
  bool trivial() const { return edge_count() == 0; }

  // Twin test per the neighbourhood definition: Nbd(x)\{y} == Nbd(y)\{x}.
  bool twin(int x, int y) const {
    return (adj[x] & ~(1u << y)) == (adj[y] & ~(1u << x));
  }

  bool operator==(const Graph&) const = default;
};

// K_{u+w}-K_u on u+w global ids.
Graph hole_graph(int u, int w);
// Complete graph on the vertices of `mask` (ambient id space n, side labels kept).
Graph complete_on(int n, uint32_t mask, uint32_t wside);
// Complete bipartite graph between two disjoint masks.
Graph bipartite_on(int n, uint32_t amask, uint32_t bmask, uint32_t wside);

// A cycle is a vertex sequence; length 0 (trivial bookkeeping object) or >= 3.
using Cycle = std::vector<int>;

// Canonical form: minimum vertex first, then the lexicographically smaller
// of the two directions, so cycle multisets compare deterministically.
Cycle canonical_cycle(const Cycle& c);

bool cycle_in_graph(const Graph& g, const Cycle& c);
int cycle_pure_count(const Graph& host, const Cycle& c);
void add_cycle_edges(Graph& g, const Cycle& c);
void remove_cycle_edges(Graph& g, const Cycle& c);
bool cycle_edges_disjoint_from(const Graph& used, const Cycle& c);

// Host plus edge-disjoint cycles. Cycles of length 0 are representable but
// stripped from public outputs.
struct Packing {
  Graph host;
  std::vector<Cycle> cycles;

  Packing() = default;
  Packing(Graph h, std::vector<Cycle> cs) : host(std::move(h)), cycles(std::move(cs)) {}

  Graph leave() const;  // unreduced: same vertex set, uncovered edges
  void validate() const;
  std::vector<int> length_multiset() const;
};

struct LeaveView {
  Graph g;
  int pure_edges = 0;
  int cross_edges = 0;
  uint32_t vertices = 0;  // support of the reduced leave
};

LeaveView reduced_leave(const Packing& p);

enum class Verdict { Pass, EdgeReuse, NotPartition, LengthMismatch, BadCycle };

const char* verdict_name(Verdict v);

struct Certificate {
  Graph host;
  std::vector<Cycle> cycles;
  std::vector<int> target_lengths;
  Verdict verdict = Verdict::Pass;
  std::string detail;
  std::vector<int> per_cycle_pure_counts;
  bool pass() const { return verdict == Verdict::Pass; }
};

// Independent check that `cycles` partitions the host edge set and matches
// the target length multiset. Never throws; failures land in the verdict.
Certificate verify_decomposition(const Graph& host, const std::vector<Cycle>& cycles,
                                 std::vector<int> target_lengths);

// ---- spec-facing convenience over (u,w) hosts ----

struct HostGraph {
  int u = 0, w = 0;
  Graph g;
};

HostGraph build_host(int u, int w);

inline int to_id(const HostGraph& h, Vertex v) {
  return v.part == Part::Hole ? v.index : h.u + v.index;
}
inline Vertex to_vertex(const HostGraph& h, int id) {
  return id < h.u ? Vertex{Part::Hole, id} : Vertex{Part::Outer, id - h.u};
}

enum class EdgeKind { Pure, Cross };
EdgeKind edge_kind(const HostGraph& h, Vertex x, Vertex y);

// JSON object form {"u":..,"w":..,"cycles":[["U0","W3",...],...]}; tokens
// are "U<i>" for hole vertices and "W<j>" for outer ones.
std::string decomposition_to_json(int u, int w, const std::vector<Cycle>& cycles);
struct JsonDecomposition {
  int u, w;
  std::vector<Cycle> cycles;
};
JsonDecomposition decomposition_from_json(const std::string& text);

std::vector<int> sorted_lengths(const std::vector<Cycle>& cycles);

}  // namespace holecycle
