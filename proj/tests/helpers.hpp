#pragma once

#include <random>

#include "holecycle/core.hpp"
#include "holecycle/subsolvers.hpp"

// Shared test scaffolding: build a packing whose leave is an explicitly
// chosen graph by greedily decomposing the complement.

namespace holecycle::testutil {

inline Packing packing_with_leave(const Graph& host, const Graph& leave) {
  Graph rest = host;
  for (int v = 0; v < host.n; ++v)
    for (int u = v + 1; u < host.n; ++u)
      if (leave.edge(v, u)) {
        ensure(host.edge(v, u), "requested leave is not inside the host");
        rest.remove_edge(v, u);
      }
  Packing p{host, any_cycle_decomposition(rest)};
  p.validate();
  return p;
}

inline Graph graph_from_cycles(const Graph& host, const std::vector<Cycle>& cycles) {
  Graph g;
  g.n = host.n;
  g.wside = host.wside;
  for (const auto& c : cycles) add_cycle_edges(g, c);
  return g;
}

// An explicit cycle through alternating parts: builds a cycle of `len` in the
// (u,w) host using `npure` pure edges, starting at outer offset `wo`, hole
// offset `uo`. npure and len must satisfy host parity (len - npure even).
inline Cycle mixed_cycle(int u, int w, int len, int npure, int uo, int wo) {
  // W-run of npure+1 vertices gives npure pure edges; remainder alternates.
  int cross = len - npure;
  ensure(cross % 2 == 0 && cross >= 0, "cycle parity impossible");
  Cycle c;
  int wi = wo, ui = uo;
  for (int i = 0; i <= npure; ++i) c.push_back(u + wi++);
  for (int i = 0; i < (cross - 2) / 2; ++i) {
    c.push_back(ui++);
    c.push_back(u + wi++);
  }
  if (cross >= 2) c.push_back(ui++);
  ensure(wi <= w && ui <= u, "mixed_cycle ran out of vertices");
  ensure((int)c.size() == len, "mixed_cycle length bug");
  return c;
}

}  // namespace holecycle::testutil
