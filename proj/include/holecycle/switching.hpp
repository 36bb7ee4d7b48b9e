#pragma once

#include <cstdint>
#include <utility>

#include "holecycle/core.hpp"

// The (alpha,beta)-switch and the elementary leave-shaping moves built on it.

namespace holecycle {

struct SwitchOutcome {
  Packing packing_after;
  int origin = -1;
  int terminus = -1;
  std::vector<std::pair<int, int>> pair_partition;
};

// Partition of (Nbd_L(a) u Nbd_L(b)) \ ((Nbd_L(a) n Nbd_L(b)) u {a,b}) into
// pairs, each of which supports a valid switch. The pairing is recovered by
// chasing the alternating port trails through the packed cycles, so it is
// fully determined by the packing.
std::vector<std::pair<int, int>> switch_pairs(const Packing& p, int alpha, int beta);

SwitchOutcome perform_switch(const Packing& p, int alpha, int beta, int origin);

// Repacking that drops deg_L(y) by 2 and raises deg_L(z) by 2; degrees are
// taken in the unreduced leave, so z may be isolated.
Packing equalise_one_step(const Packing& p, int y, int z);

enum class IsolateMode { I, II, III };

struct AbsentTwin {
  int x = -1;  // mode III: vertex of degree >= 4
  int y = -1;  // absent vertex (modes I and II report it here too)
};

// Witnesses from the isolated-vertex lemma. `smask` is the S set for mode II.
AbsentTwin find_absent_twin(const Graph& host, const Graph& leave, IsolateMode mode,
                            uint32_t smask = 0);

// ---- structure classification ----

struct ChainRing {
  bool ring = false;
  std::vector<Cycle> cycles;  // A_1..A_s in chain/ring order
  std::vector<int> links;     // link vertices; size s-1 for chains, s for rings
  bool good = false;
};

struct StructureComponent {
  enum Kind { SingleCycle, Chain, Ring, Other } kind = Other;
  uint32_t vertices = 0;
  int edges = 0;
  Cycle cycle;    // kind == SingleCycle
  ChainRing cr;   // kind == Chain or Ring
};

struct StructureReport {
  std::vector<StructureComponent> comps;
  int count(StructureComponent::Kind k) const;
  const StructureComponent* find(StructureComponent::Kind k) const;
  std::string dump() const;  // test diagnostics
};

// Exact tagging of each reduced-leave component; requires an even leave.
StructureReport classify_structure(const Graph& host, const Graph& leave);

// floor((edge_count + mu)/4) - 1, the component bound for leaves with one
// degree-4 vertex.
int max_components_bound(int edge_count, int mu);

int deficiency(const Packing& p);  // (1/2) sum (deg_L(x) - 2) over the reduced leave

int leave_component_count(const Graph& leave);

// Repacking whose reduced leave has exactly one degree-4 vertex, all other
// degrees 2, and at most k + d(P) - 1 components.
Packing pick_apart(const Packing& p, int mu);

}  // namespace holecycle
