#include "holecycle/switching.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace holecycle {

namespace {

struct PortOwner {
  // owner[letter][v]: -1 absent edge, -2 leave, >=0 cycle index
  std::array<std::array<int, kMaxVertices>, 2> owner;
};

constexpr int kLeave = -2;

// Couplings pair up the two cycle-owned ports that a single pi-application
// exchanges. letter 0 = edge at alpha, letter 1 = edge at beta.
struct Coupling {
  int to_letter, to_vertex;
  int cycle;
  int arc;  // 0 = whole-cycle swap, 1/2 = one arc of a cycle through both
};

struct ChaseContext {
  int alpha, beta;
  PortOwner own;
  std::map<std::pair<int, int>, Coupling> couple;  // (letter, vertex) -> coupling
  uint32_t dset = 0;
};

int find_pos(const Cycle& c, int v) {
  for (int i = 0; i < (int)c.size(); ++i)
    if (c[i] == v) return i;
  return -1;
}

ChaseContext build_context(const Packing& p, int alpha, int beta) {
  const Graph host = p.host;
  require(host.twin(alpha, beta), Err::NotTwin, "switch endpoints must be twin");
  Graph L = p.leave();
  ChaseContext cx;
  cx.alpha = alpha;
  cx.beta = beta;
  for (auto& row : cx.own.owner)
    row.fill(-1);
  uint32_t common = host.adj[alpha] & ~(1u << beta);
  for (int v = 0; v < host.n; ++v) {
    if (!((common >> v) & 1u)) continue;
    cx.own.owner[0][v] = L.edge(alpha, v) ? kLeave : -1;
    cx.own.owner[1][v] = L.edge(beta, v) ? kLeave : -1;
  }
  for (int ci = 0; ci < (int)p.cycles.size(); ++ci) {
    const Cycle& c = p.cycles[ci];
    if (c.empty()) continue;
    int m = (int)c.size();
    int ia = find_pos(c, alpha), ib = find_pos(c, beta);
    if (ia < 0 && ib < 0) continue;
    auto record = [&](int letter, int v, int partner_letter, int pv, int arc) {
      cx.own.owner[letter][v] = ci;
      cx.couple[{letter, v}] = Coupling{partner_letter, pv, ci, arc};
    };
    if (ib < 0 || ia < 0) {
      int letter = ia >= 0 ? 0 : 1;
      int pos = ia >= 0 ? ia : ib;
      int n1 = c[(pos + 1) % m], n2 = c[(pos + m - 1) % m];
      record(letter, n1, letter, n2, 0);
      record(letter, n2, letter, n1, 0);
    } else {
      // arc 1 runs forward alpha->beta, arc 2 forward beta->alpha
      int a1 = c[(ia + 1) % m], b1 = c[(ib + m - 1) % m];
      int b2 = c[(ib + 1) % m], a2 = c[(ia + m - 1) % m];
      if (a1 != beta) {
        record(0, a1, 1, b1, 1);
        record(1, b1, 0, a1, 1);
      }
      if (b2 != alpha) {
        record(1, b2, 0, a2, 2);
        record(0, a2, 1, b2, 2);
      }
    }
  }
  for (int v = 0; v < host.n; ++v) {
    if (!((common >> v) & 1u)) continue;
    int oa = cx.own.owner[0][v], ob = cx.own.owner[1][v];
    ensure(oa != -1 && ob != -1, "host edge at a twin neighbour has no owner");
    if ((oa == kLeave) != (ob == kLeave)) cx.dset |= 1u << v;
  }
  return cx;
}

// Follow the port trail from `origin`, collecting the arcs that must be
// swapped. Returns the terminus.
int chase(const ChaseContext& cx, int origin, std::map<int, int>& marks) {
  int letter = cx.own.owner[0][origin] == kLeave ? 1 : 0;
  int v = origin;
  for (;;) {
    auto it = cx.couple.find({letter, v});
    ensure(it != cx.couple.end(), "port trail left the coupling structure");
    const Coupling& cp = it->second;
    marks[cp.cycle] |= cp.arc == 0 ? 4 : cp.arc;
    int nl = 1 - cp.to_letter, nv = cp.to_vertex;
    if (cx.own.owner[nl][nv] == kLeave) return nv;
    letter = nl;
    v = nv;
  }
}

Cycle swap_vertices(const Cycle& c, int a, int b) {
  Cycle r = c;
  for (int& v : r) v = v == a ? b : (v == b ? a : v);
  return r;
}

// Replace one alpha-beta arc of `c` by its pi-image, leaving the other arc
// untouched.
Cycle swap_one_arc(const Cycle& c, int alpha, int beta, int arc) {
  int m = (int)c.size();
  int ia = find_pos(c, alpha), ib = find_pos(c, beta);
  auto interior = [&](int from, int to) {  // vertices strictly between, walking forward
    Cycle r;
    for (int i = (from + 1) % m; i != to; i = (i + 1) % m) r.push_back(c[i]);
    return r;
  };
  Cycle int1 = interior(ia, ib), int2 = interior(ib, ia);
  Cycle r;
  r.push_back(alpha);
  if (arc == 1) {
    r.insert(r.end(), int1.rbegin(), int1.rend());
    r.push_back(beta);
    r.insert(r.end(), int2.begin(), int2.end());
  } else {
    r.insert(r.end(), int1.begin(), int1.end());
    r.push_back(beta);
    r.insert(r.end(), int2.rbegin(), int2.rend());
  }
  return r;
}

}  // namespace

std::vector<std::pair<int, int>> switch_pairs(const Packing& p, int alpha, int beta) {
  ChaseContext cx = build_context(p, alpha, beta);
  std::vector<std::pair<int, int>> pairs;
  uint32_t todo = cx.dset;
  while (todo) {
    int x = __builtin_ctz(todo);
    std::map<int, int> marks;
    int y = chase(cx, x, marks);
    ensure(((cx.dset >> y) & 1u) && y != x, "chase terminus not a valid pair partner");
    pairs.push_back({std::min(x, y), std::max(x, y)});
    todo &= ~(1u << x);
    todo &= ~(1u << y);
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

SwitchOutcome perform_switch(const Packing& p, int alpha, int beta, int origin) {
  ChaseContext cx = build_context(p, alpha, beta);
  require(origin >= 0 && origin < p.host.n && ((cx.dset >> origin) & 1u), Err::InvalidOrigin,
          "origin must lie in the switchable set");
  std::map<int, int> marks;
  int terminus = chase(cx, origin, marks);

  SwitchOutcome out;
  out.origin = origin;
  out.terminus = terminus;
  out.packing_after = p;
  for (auto [ci, mark] : marks) {
    Cycle& c = out.packing_after.cycles[ci];
    if (mark == 4 || mark == 3)
      c = swap_vertices(c, alpha, beta);
    else
      c = swap_one_arc(c, alpha, beta, mark);
  }

  // The leave must differ from the old one in exactly the four toggled edges.
  Graph oldL = p.leave();
  Graph newL = out.packing_after.leave();
  out.packing_after.validate();
  for (int v = 0; v < p.host.n; ++v) {
    uint32_t want = oldL.adj[v];
    if (v == alpha || v == beta)
      want ^= (1u << origin) | (1u << terminus);
    else if (v == origin || v == terminus)
      want ^= (1u << alpha) | (1u << beta);
    ensure(newL.adj[v] == want, "switch toggled an unexpected edge");
  }
  ensure(p.length_multiset() == out.packing_after.length_multiset(),
         "switch changed the cycle length multiset");

  uint32_t todo = cx.dset;
  while (todo) {
    int x = __builtin_ctz(todo);
    std::map<int, int> m2;
    int y = chase(cx, x, m2);
    out.pair_partition.push_back({std::min(x, y), std::max(x, y)});
    todo &= ~((1u << x) | (1u << y));
  }
  std::sort(out.pair_partition.begin(), out.pair_partition.end());
  return out;
}

Packing equalise_one_step(const Packing& p, int y, int z) {
  require(p.host.twin(y, z), Err::NotTwin, "equalise endpoints must be twin");
  Graph L = p.leave();
  require(L.degree(y) > L.degree(z), Err::DegreeNotGreater,
          "deg_L(y) must exceed deg_L(z)");
  auto pairs = switch_pairs(p, y, z);
  uint32_t yonly = L.adj[y] & ~L.adj[z] & ~(1u << z);
  for (auto [o, t] : pairs) {
    if (((yonly >> o) & 1u) && ((yonly >> t) & 1u)) {
      int before = leave_component_count(L);
      SwitchOutcome sw = perform_switch(p, y, z, o);
      Graph L2 = sw.packing_after.leave();
      ensure(L2.degree(y) == L.degree(y) - 2 && L2.degree(z) == L.degree(z) + 2,
             "equalise changed degrees unexpectedly");
      ensure(leave_component_count(L2) <= before + 1,
             "equalise grew the component count by more than one");
      return sw.packing_after;
    }
  }
  fail(Err::InternalInvariantBreach, "no switch pair lies inside Nbd_L(y)\\Nbd_L(z)");
}

namespace {

uint32_t component_of(const Graph& g, int start) {
  uint32_t comp = 1u << start, frontier = comp;
  while (frontier) {
    uint32_t next = 0;
    for (int v = 0; v < g.n; ++v)
      if ((frontier >> v) & 1u) next |= g.adj[v];
    frontier = next & ~comp;
    comp |= next;
  }
  return comp;
}

}  // namespace

int leave_component_count(const Graph& leave) {
  uint32_t todo = leave.support();
  int k = 0;
  while (todo) {
    int v = __builtin_ctz(todo);
    todo &= ~component_of(leave, v);
    ++k;
  }
  return k;
}

AbsentTwin find_absent_twin(const Graph& host, const Graph& leave, IsolateMode mode,
                            uint32_t smask) {
  uint32_t active = host.support();
  uint32_t wmask = active & host.wside;
  uint32_t umask = active & ~host.wside;
  int u = __builtin_popcount(umask), w = __builtin_popcount(wmask);
  int ell = leave.edge_count();
  uint32_t inL = leave.support();
  auto deg_ge = [&](uint32_t mask, int d) {
    uint32_t r = 0;
    for (int v = 0; v < host.n; ++v)
      if (((mask >> v) & 1u) && leave.degree(v) >= d) r |= 1u << v;
    return r;
  };
  auto first_absent = [&](uint32_t mask) -> int {
    uint32_t a = mask & ~inL;
    return a ? __builtin_ctz(a) : -1;
  };
  AbsentTwin res;
  switch (mode) {
    case IsolateMode::I: {
      require(ell <= 2 * (u + 1), Err::BoundViolated, "mode I size bound");
      require(deg_ge(umask, 4) != 0, Err::BoundViolated, "mode I needs a degree-4 hole vertex");
      res.y = first_absent(umask);
      require(res.y >= 0, Err::NoWitness, "no absent hole vertex");
      return res;
    }
    case IsolateMode::II: {
      require(ell <= std::min(2 * (u + 2), 2 * w + 1), Err::BoundViolated, "mode II size bound");
      uint32_t d4 = deg_ge(smask, 4);
      require(__builtin_popcount(d4) >= 2 || deg_ge(smask, 6) != 0, Err::BoundViolated,
              "mode II needs two degree-4 vertices or one of degree 6 in S");
      res.y = first_absent(smask);
      require(res.y >= 0, Err::NoWitness, "no absent vertex in S");
      return res;
    }
    case IsolateMode::III: {
      require(ell <= std::min({2 * (u + 2), 2 * w + 1, u + w}), Err::BoundViolated,
              "mode III size bound");
      uint32_t d4 = deg_ge(active, 4);
      require(__builtin_popcount(d4) >= 2 || deg_ge(active, 6) != 0, Err::BoundViolated,
              "mode III needs two degree-4 vertices or one of degree 6");
      for (uint32_t side : {umask, wmask}) {
        uint32_t cand = d4 & side;
        int y = first_absent(side);
        if (cand && y >= 0) {
          res.x = __builtin_ctz(cand);
          res.y = y;
          return res;
        }
      }
      fail(Err::NoWitness, "no side holds both a degree-4 vertex and an absent one");
    }
  }
  fail(Err::InternalInvariantBreach, "unreachable");
}

int max_components_bound(int edge_count, int mu) { return (edge_count + mu) / 4 - 1; }

int deficiency(const Packing& p) {
  Graph L = p.leave();
  int d = 0;
  for (int v = 0; v < L.n; ++v)
    if (L.degree(v) > 0) d += L.degree(v) - 2;
  return d / 2;
}

// ---- structure classification ----

namespace {

std::vector<Cycle> trace_two_regular(const Graph& g, uint32_t comp) {
  // comp induces a disjoint union of simple cycles
  std::vector<Cycle> out;
  Graph rest = g;
  for (int v = 0; v < g.n; ++v)
    if (!((comp >> v) & 1u)) rest.adj[v] = 0;
  for (int v = 0; v < g.n; ++v)
    rest.adj[v] &= comp;
  for (;;) {
    int start = -1;
    for (int v = 0; v < g.n; ++v)
      if (rest.adj[v]) {
        start = v;
        break;
      }
    if (start < 0) break;
    Cycle c{start};
    int prev = -1, cur = start;
    for (;;) {
      uint32_t nb = rest.adj[cur] & ~(prev >= 0 ? (1u << prev) : 0u);
      if (!nb) break;
      int nxt = __builtin_ctz(nb);
      if (nxt == start) {
        // close
        prev = cur;
        cur = nxt;
        break;
      }
      c.push_back(nxt);
      prev = cur;
      cur = nxt;
    }
    if (cur != start || c.size() < 3) return {};  // not a clean cycle cover
    for (size_t i = 0; i < c.size(); ++i) rest.remove_edge(c[i], c[(i + 1) % c.size()]);
    out.push_back(c);
  }
  return out;
}

struct SplitResult {
  std::vector<Cycle> cycles;
};

// Enumerate the ways of splitting each degree-4 vertex into two degree-2
// copies; a valid split turns the component into vertex-disjoint cycles of
// the original graph.
void enumerate_splits(const Graph& g, uint32_t comp, const std::vector<int>& v4, size_t idx,
                      std::vector<std::array<uint32_t, 2>>& assign,
                      std::vector<SplitResult>& results) {
  if (results.size() > 200) return;  // plenty; components here are tiny
  if (idx == v4.size()) {
    // walk the graph treating each deg-4 vertex's two copies separately
    Graph rest = g;
    for (int v = 0; v < g.n; ++v) rest.adj[v] &= comp;
    for (int v = 0; v < g.n; ++v)
      if (!((comp >> v) & 1u)) rest.adj[v] = 0;
    std::vector<Cycle> cycles;
    bool ok = true;
    // Trace cycles: start at any remaining edge, walk; at a deg-4 vertex the
    // exit edge is forced by the pairing.
    auto v4index = [&](int v) {
      for (size_t i = 0; i < v4.size(); ++i)
        if (v4[i] == v) return (int)i;
      return -1;
    };
    while (ok) {
      int sx = -1, sy = -1;
      for (int v = 0; v < g.n && sx < 0; ++v)
        if (rest.adj[v]) {
          sx = v;
          sy = __builtin_ctz(rest.adj[v]);
        }
      if (sx < 0) break;
      Cycle c{sx};
      uint32_t seen_here = 0;
      int prev = sx, cur = sy;
      while (ok) {
        if (cur == sx) break;
        if ((seen_here >> cur) & 1u) {
          ok = false;
          break;
        }
        seen_here |= 1u << cur;
        c.push_back(cur);
        int vi = v4index(cur);
        int nxt;
        if (vi < 0) {
          uint32_t nb = rest.adj[cur] & ~(1u << prev);
          if (!nb) {
            ok = false;
            break;
          }
          nxt = __builtin_ctz(nb);
        } else {
          int side = (assign[vi][0] >> prev) & 1u ? 0 : 1;
          uint32_t nb = assign[vi][side] & rest.adj[cur] & ~(1u << prev);
          if (!nb) {
            ok = false;
            break;
          }
          nxt = __builtin_ctz(nb);
        }
        prev = cur;
        cur = nxt;
      }
      if (!ok) break;
      // entering sx: if sx is deg-4, the entry edge must pair with the exit sy
      int vi = v4index(sx);
      if (vi >= 0) {
        int side_exit = (assign[vi][0] >> sy) & 1u ? 0 : 1;
        int side_enter = (assign[vi][0] >> prev) & 1u ? 0 : 1;
        if (side_exit != side_enter) {
          ok = false;
          break;
        }
      }
      if (c.size() < 3) {
        ok = false;
        break;
      }
      for (size_t i = 0; i < c.size(); ++i) rest.remove_edge(c[i], c[(i + 1) % c.size()]);
      cycles.push_back(c);
    }
    if (ok) results.push_back(SplitResult{cycles});
    return;
  }
  int v = v4[idx];
  uint32_t nb = g.adj[v] & comp;
  int e[4], k = 0;
  for (int x = 0; x < g.n; ++x)
    if ((nb >> x) & 1u) e[k++] = x;
  ensure(k == 4, "degree-4 split on a non-degree-4 vertex");
  const int pairings[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
  for (auto& pr : pairings) {
    assign[idx][0] = (1u << e[pr[0]]) | (1u << e[pr[1]]);
    assign[idx][1] = (1u << e[pr[2]]) | (1u << e[pr[3]]);
    enumerate_splits(g, comp, v4, idx + 1, assign, results);
  }
}

uint32_t verts_of(const Cycle& c) {
  uint32_t m = 0;
  for (int v : c) m |= 1u << v;
  return m;
}

// Try to order `cycles` as a chain or ring; fills cr and returns true.
bool arrange_chain_ring(const Graph& host, const std::vector<Cycle>& cycles, ChainRing& cr) {
  int s = (int)cycles.size();
  if (s < 2) return false;
  std::vector<uint32_t> vs(s);
  for (int i = 0; i < s; ++i) vs[i] = verts_of(cycles[i]);
  std::vector<std::vector<int>> shared(s, std::vector<int>(s, 0));
  for (int i = 0; i < s; ++i)
    for (int j = i + 1; j < s; ++j)
      shared[i][j] = shared[j][i] = __builtin_popcount(vs[i] & vs[j]);

  if (s == 2) {
    if (shared[0][1] == 1) {
      cr.ring = false;
      cr.cycles = cycles;
      cr.links = {__builtin_ctz(vs[0] & vs[1])};
      cr.good = true;
      return true;
    }
    if (shared[0][1] == 2) {
      cr.ring = true;
      cr.cycles = cycles;
      uint32_t both = vs[0] & vs[1];
      int a = __builtin_ctz(both);
      int b = __builtin_ctz(both & ~(1u << a));
      cr.links = {a, b};
      cr.good = true;
      return true;
    }
    return false;
  }
  // adjacency in the share graph must be 0/1 and form a path or a cycle
  std::vector<int> degs(s, 0);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j)
      if (j != i) {
        if (shared[i][j] > 1) return false;
        degs[i] += shared[i][j];
      }
  int ones = 0, twos = 0;
  for (int d : degs) {
    if (d == 1) ++ones;
    else if (d == 2) ++twos;
    else return false;
  }
  bool is_path = (ones == 2 && twos == s - 2);
  bool is_cycle = (ones == 0 && twos == s);
  if (!is_path && !is_cycle) return false;
  // order the cycles along the path / around the ring
  std::vector<int> order;
  std::vector<bool> used(s, false);
  int cur = 0;
  if (is_path)
    for (int i = 0; i < s; ++i)
      if (degs[i] == 1) cur = i;
  order.push_back(cur);
  used[cur] = true;
  while ((int)order.size() < s) {
    int nxt = -1;
    for (int j = 0; j < s; ++j)
      if (!used[j] && shared[cur][j] == 1) nxt = j;
    if (nxt < 0) return false;  // disconnected share graph
    order.push_back(nxt);
    used[nxt] = true;
    cur = nxt;
  }
  if (is_cycle && shared[order.back()][order[0]] != 1) return false;
  cr.ring = is_cycle;
  cr.cycles.clear();
  for (int i : order) cr.cycles.push_back(cycles[i]);
  cr.links.clear();
  int nlinks = is_cycle ? s : s - 1;
  for (int i = 0; i < nlinks; ++i) {
    uint32_t both = verts_of(cr.cycles[i]) & verts_of(cr.cycles[(i + 1) % s]);
    if (__builtin_popcount(both) != 1) return false;
    cr.links.push_back(__builtin_ctz(both));
  }
  // goodness
  auto in_w = [&](int v) { return host.in_w(v); };
  auto pure_cnt = [&](const Cycle& c) { return cycle_pure_count(host, c); };
  if (!cr.ring) {
    bool internal_ok = true;
    for (int i = 1; i + 1 < s; ++i) {
      int la = cr.links[i - 1], lb = cr.links[i];
      if (in_w(la) == in_w(lb)) internal_ok = false;
    }
    bool end_ok = (in_w(cr.links.front()) && pure_cnt(cr.cycles.front()) >= 1) ||
                  (in_w(cr.links.back()) && pure_cnt(cr.cycles.back()) >= 1);
    cr.good = internal_ok && end_ok;
  } else {
    auto cycle_links_mixed = [&](int i) {
      int la = cr.links[(i + s - 1) % s], lb = cr.links[i];
      return in_w(la) != in_w(lb);
    };
    if (s % 2 == 0) {
      cr.good = true;
      for (int i = 0; i < s; ++i)
        if (!cycle_links_mixed(i)) cr.good = false;
    } else {
      int both_w = -1;
      bool rest_ok = true;
      for (int i = 0; i < s; ++i) {
        int la = cr.links[(i + s - 1) % s], lb = cr.links[i];
        if (in_w(la) && in_w(lb)) {
          if (both_w >= 0) rest_ok = false;
          both_w = i;
        } else if (in_w(la) == in_w(lb)) {
          rest_ok = false;
        }
      }
      cr.good = rest_ok && both_w >= 0 && pure_cnt(cr.cycles[both_w]) >= 1;
    }
  }
  return true;
}

}  // namespace

int StructureReport::count(StructureComponent::Kind k) const {
  int c = 0;
  for (const auto& comp : comps) c += comp.kind == k;
  return c;
}

const StructureComponent* StructureReport::find(StructureComponent::Kind k) const {
  for (const auto& comp : comps)
    if (comp.kind == k) return &comp;
  return nullptr;
}

std::string StructureReport::dump() const {
  std::ostringstream os;
  for (const auto& c : comps) {
    switch (c.kind) {
      case StructureComponent::SingleCycle:
        os << "cycle(" << c.cycle.size() << ") ";
        break;
      case StructureComponent::Chain:
        os << "chain(s=" << c.cr.cycles.size() << (c.cr.good ? ",good" : "") << ") ";
        break;
      case StructureComponent::Ring:
        os << "ring(s=" << c.cr.cycles.size() << (c.cr.good ? ",good" : "") << ") ";
        break;
      case StructureComponent::Other:
        os << "other(" << c.edges << "e) ";
        break;
    }
  }
  return os.str();
}

StructureReport classify_structure(const Graph& host, const Graph& leave) {
  require(leave.even(), Err::NotEven, "classification needs an even leave");
  StructureReport rep;
  uint32_t todo = leave.support();
  while (todo) {
    int v0 = __builtin_ctz(todo);
    uint32_t comp = component_of(leave, v0);
    todo &= ~comp;
    StructureComponent sc;
    sc.vertices = comp;
    for (int v = 0; v < leave.n; ++v)
      if ((comp >> v) & 1u) sc.edges += leave.degree(v);
    sc.edges /= 2;

    std::vector<int> v4;
    bool degs_ok = true;
    for (int v = 0; v < leave.n; ++v)
      if ((comp >> v) & 1u) {
        int d = leave.degree(v);
        if (d == 4)
          v4.push_back(v);
        else if (d != 2)
          degs_ok = false;
      }
    if (!degs_ok || (int)v4.size() > 10) {
      sc.kind = StructureComponent::Other;
      rep.comps.push_back(sc);
      continue;
    }
    if (v4.empty()) {
      auto cycles = trace_two_regular(leave, comp);
      if (cycles.size() == 1) {
        sc.kind = StructureComponent::SingleCycle;
        sc.cycle = cycles[0];
      } else {
        sc.kind = StructureComponent::Other;
      }
      rep.comps.push_back(sc);
      continue;
    }
    std::vector<SplitResult> results;
    std::vector<std::array<uint32_t, 2>> assign(v4.size());
    enumerate_splits(leave, comp, v4, 0, assign, results);
    ChainRing best;
    int best_rank = -1;  // 3 good chain, 2 chain, 1 good ring, 0 ring
    for (const auto& r : results) {
      ChainRing cr;
      if (!arrange_chain_ring(host, r.cycles, cr)) continue;
      int rank = cr.ring ? (cr.good ? 1 : 0) : (cr.good ? 3 : 2);
      if (rank > best_rank) {
        best_rank = rank;
        best = cr;
      }
    }
    if (best_rank < 0) {
      sc.kind = StructureComponent::Other;
    } else {
      sc.kind = best.ring ? StructureComponent::Ring : StructureComponent::Chain;
      sc.cr = best;
    }
    rep.comps.push_back(sc);
  }
  return rep;
}

Packing pick_apart(const Packing& p, int mu) {
  require(mu == 1 || mu == 2, Err::HypothesisViolated, "mu must be 1 or 2");
  const Graph& host = p.host;
  uint32_t active = host.support();
  int u = __builtin_popcount(active & ~host.wside);
  int w = __builtin_popcount(active & host.wside);
  Graph L = p.leave();
  require(L.edge_count() <= std::min({2 * (u + 2), 2 * w + 1, u + w}), Err::HypothesisViolated,
          "leave too large to pick apart");
  require(L.pure_count() == mu, Err::HypothesisViolated,
          "leave pure-edge count does not match mu");
  bool had_w4 = false;
  for (int v = 0; v < host.n; ++v)
    if (host.in_w(v) && L.degree(v) >= 4) had_w4 = true;
  int ell = L.edge_count();
  {
    bool any4 = false;
    for (int v = 0; v < host.n; ++v) any4 |= L.degree(v) >= 4;
    require(any4, Err::HypothesisViolated, "pick_apart needs a vertex of degree >= 4");
  }
  int k0 = leave_component_count(L);
  int d0 = deficiency(p);

  Packing cur = p;
  for (;;) {
    Graph Lc = cur.leave();
    int n4 = 0, n6 = 0;
    for (int v = 0; v < host.n; ++v) {
      if (Lc.degree(v) >= 4) ++n4;
      if (Lc.degree(v) >= 6) ++n6;
    }
    if (n4 <= 1 && n6 == 0) break;
    // prefer hole-side pairs, as the proof does
    int y = -1, z = -1;
    for (uint32_t side : {active & ~host.wside, active & host.wside}) {
      int cy = -1, cz = -1;
      for (int v = 0; v < host.n; ++v)
        if ((side >> v) & 1u) {
          if (cy < 0 && Lc.degree(v) >= 4) cy = v;
          if (cz < 0 && Lc.degree(v) == 0) cz = v;
        }
      if (cy >= 0 && cz >= 0) {
        y = cy;
        z = cz;
        break;
      }
    }
    ensure(y >= 0, "pick_apart found no twin pair to equalise");
    cur = equalise_one_step(cur, y, z);
  }
  Graph Lf = cur.leave();
  int n4 = 0;
  bool rest2 = true;
  int x4 = -1;
  for (int v = 0; v < host.n; ++v) {
    int d = Lf.degree(v);
    if (d == 4) {
      ++n4;
      x4 = v;
    } else if (d != 0 && d != 2) {
      rest2 = false;
    }
  }
  ensure(n4 == 1 && rest2, "pick_apart postcondition failed");
  ensure(leave_component_count(Lf) <= k0 + d0 - 1, "pick_apart component bound failed");
  if (ell <= 2 * u + 2 && had_w4)
    ensure(host.in_w(x4), "degree-4 vertex should have landed outside the hole");
  return cur;
}

}  // namespace holecycle
