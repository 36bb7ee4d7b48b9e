#include "holecycle/core.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "json.hpp"

namespace holecycle {

const char* err_name(Err e) {
  switch (e) {
    case Err::ZeroPart: return "ZeroPart";
    case Err::NotAnEdge: return "NotAnEdge";
    case Err::NotTwin: return "NotTwin";
    case Err::InvalidOrigin: return "InvalidOrigin";
    case Err::DegreeNotGreater: return "DegreeNotGreater";
    case Err::BoundViolated: return "BoundViolated";
    case Err::NoWitness: return "NoWitness";
    case Err::NotEven: return "NotEven";
    case Err::HypothesisViolated: return "HypothesisViolated";
    case Err::StructureMismatch: return "StructureMismatch";
    case Err::SearchExhausted: return "SearchExhausted";
    case Err::Infeasible: return "Infeasible";
    case Err::OutOfScope: return "OutOfScope";
    case Err::InternalInvariantBreach: return "InternalInvariantBreach";
  }
  return "Unknown";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "Pass";
    case Verdict::EdgeReuse: return "EdgeReuse";
    case Verdict::NotPartition: return "NotPartition";
    case Verdict::LengthMismatch: return "LengthMismatch";
    case Verdict::BadCycle: return "BadCycle";
  }
  return "Unknown";
}

int Graph::edge_count() const {
  int total = 0;
  for (int i = 0; i < n; ++i) total += degree(i);
  return total / 2;
}

int Graph::pure_count() const {
  int total = 0;
  for (int i = 0; i < n; ++i)
    if (in_w(i)) total += __builtin_popcount(adj[i] & wside);
  return total / 2;
}

bool Graph::even() const {
  for (int i = 0; i < n; ++i)
    if (degree(i) % 2) return false;
  return true;
}

uint32_t Graph::support() const {
  uint32_t s = 0;
  for (int i = 0; i < n; ++i)
    if (adj[i]) s |= 1u << i;
  return s;
}

uint32_t low_mask(int k) { return k >= 32 ? ~0u : (1u << k) - 1u; }

Graph hole_graph(int u, int w) {
  require(u >= 1 && w >= 1, Err::ZeroPart, "both parts must be nonempty");
  require(u + w <= kMaxVertices, Err::OutOfScope, "desk-scale cap is 32 vertices");
  Graph g;
  g.n = u + w;
  g.wside = low_mask(u + w) & ~low_mask(u);
  for (int x = 0; x < g.n; ++x)
    for (int y = x + 1; y < g.n; ++y)
      if (g.in_w(x) || g.in_w(y)) g.add_edge(x, y);
  return g;
}

Graph complete_on(int n, uint32_t mask, uint32_t wside) {
  Graph g;
  g.n = n;
  g.wside = wside;
  for (int x = 0; x < n; ++x)
    if ((mask >> x) & 1u)
      for (int y = x + 1; y < n; ++y)
        if ((mask >> y) & 1u) g.add_edge(x, y);
  return g;
}

Graph bipartite_on(int n, uint32_t amask, uint32_t bmask, uint32_t wside) {
  Graph g;
  g.n = n;
  g.wside = wside;
  for (int x = 0; x < n; ++x)
    if ((amask >> x) & 1u)
      for (int y = 0; y < n; ++y)
        if ((bmask >> y) & 1u && x != y) g.add_edge(x, y);
  return g;
}

Cycle canonical_cycle(const Cycle& c) {
  if (c.size() < 3) return {};
  int m = (int)c.size();
  int pos = (int)(std::min_element(c.begin(), c.end()) - c.begin());
  Cycle fwd(m), bwd(m);
  for (int i = 0; i < m; ++i) {
    fwd[i] = c[(pos + i) % m];
    bwd[i] = c[(pos - i % m + m + m) % m];
  }
  return fwd <= bwd ? fwd : bwd;
}

bool cycle_in_graph(const Graph& g, const Cycle& c) {
  if (c.empty()) return true;
  if (c.size() < 3) return false;
  uint32_t seen = 0;
  for (size_t i = 0; i < c.size(); ++i) {
    int x = c[i], y = c[(i + 1) % c.size()];
    if (x < 0 || x >= g.n) return false;
    if (seen & (1u << x)) return false;
    seen |= 1u << x;
    if (!g.edge(x, y)) return false;
  }
  return true;
}

int cycle_pure_count(const Graph& host, const Cycle& c) {
  int total = 0;
  for (size_t i = 0; i < c.size(); ++i)
    total += host.pure(c[i], c[(i + 1) % c.size()]);
  return total;
}

void add_cycle_edges(Graph& g, const Cycle& c) {
  for (size_t i = 0; i < c.size(); ++i) g.add_edge(c[i], c[(i + 1) % c.size()]);
}

void remove_cycle_edges(Graph& g, const Cycle& c) {
  for (size_t i = 0; i < c.size(); ++i) g.remove_edge(c[i], c[(i + 1) % c.size()]);
}

bool cycle_edges_disjoint_from(const Graph& used, const Cycle& c) {
  for (size_t i = 0; i < c.size(); ++i)
    if (used.edge(c[i], c[(i + 1) % c.size()])) return false;
  return true;
}

Graph Packing::leave() const {
  Graph L = host;
  for (const auto& c : cycles) remove_cycle_edges(L, c);
  return L;
}

void Packing::validate() const {
  Graph used;
  used.n = host.n;
  used.wside = host.wside;
  for (const auto& c : cycles) {
    ensure(cycle_in_graph(host, c), "packing holds a non-host cycle");
    ensure(cycle_edges_disjoint_from(used, c), "packing cycles overlap");
    add_cycle_edges(used, c);
  }
}

std::vector<int> Packing::length_multiset() const {
  std::vector<int> r;
  for (const auto& c : cycles)
    if (!c.empty()) r.push_back((int)c.size());
  std::sort(r.begin(), r.end());
  return r;
}

LeaveView reduced_leave(const Packing& p) {
  LeaveView lv;
  lv.g = p.leave();
  lv.pure_edges = lv.g.pure_count();
  lv.cross_edges = lv.g.cross_count();
  lv.vertices = lv.g.support();
  return lv;
}

Certificate verify_decomposition(const Graph& host, const std::vector<Cycle>& cycles,
                                 std::vector<int> target_lengths) {
  Certificate cert;
  cert.host = host;
  cert.cycles = cycles;
  std::sort(target_lengths.begin(), target_lengths.end());
  target_lengths.erase(std::remove(target_lengths.begin(), target_lengths.end(), 0),
                       target_lengths.end());
  cert.target_lengths = target_lengths;

  Graph used;
  used.n = host.n;
  used.wside = host.wside;
  for (const auto& c : cycles) {
    if (c.empty()) continue;
    if (!cycle_in_graph(host, c)) {
      cert.verdict = Verdict::BadCycle;
      cert.detail = "cycle is not a simple cycle of the host";
      return cert;
    }
    if (!cycle_edges_disjoint_from(used, c)) {
      cert.verdict = Verdict::EdgeReuse;
      cert.detail = "an edge appears in two cycles";
      return cert;
    }
    add_cycle_edges(used, c);
  }
  for (int i = 0; i < host.n; ++i)
    if (used.adj[i] != host.adj[i]) {
      cert.verdict = Verdict::NotPartition;
      cert.detail = "union of cycle edge sets is not the host edge set";
      return cert;
    }
  std::vector<int> lens;
  for (const auto& c : cycles)
    if (!c.empty()) lens.push_back((int)c.size());
  std::sort(lens.begin(), lens.end());
  if (lens != target_lengths) {
    cert.verdict = Verdict::LengthMismatch;
    cert.detail = "cycle length multiset differs from target";
    return cert;
  }
  for (const auto& c : cycles)
    if (!c.empty()) cert.per_cycle_pure_counts.push_back(cycle_pure_count(host, c));
  return cert;
}

HostGraph build_host(int u, int w) { return HostGraph{u, w, hole_graph(u, w)}; }

EdgeKind edge_kind(const HostGraph& h, Vertex x, Vertex y) {
  int a = to_id(h, x), b = to_id(h, y);
  require(a != b && h.g.edge(a, b), Err::NotAnEdge, "not a host edge");
  return h.g.pure(a, b) ? EdgeKind::Pure : EdgeKind::Cross;
}

std::string decomposition_to_json(int u, int w, const std::vector<Cycle>& cycles) {
  nlohmann::json j;
  j["u"] = u;
  j["w"] = w;
  auto arr = nlohmann::json::array();
  std::vector<Cycle> canon;
  for (const auto& c : cycles)
    if (!c.empty()) canon.push_back(canonical_cycle(c));
  std::sort(canon.begin(), canon.end());
  for (const auto& c : canon) {
    auto jc = nlohmann::json::array();
    for (int v : c)
      jc.push_back(v < u ? "U" + std::to_string(v) : "W" + std::to_string(v - u));
    arr.push_back(jc);
  }
  j["cycles"] = arr;
  return j.dump();
}

JsonDecomposition decomposition_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  JsonDecomposition d;
  d.u = j.at("u").get<int>();
  d.w = j.at("w").get<int>();
  for (const auto& jc : j.at("cycles")) {
    Cycle c;
    for (const auto& tok : jc) {
      std::string s = tok.get<std::string>();
      require(s.size() >= 2 && (s[0] == 'U' || s[0] == 'W'), Err::Infeasible,
              "bad vertex token " + s);
      int idx = std::stoi(s.substr(1));
      c.push_back(s[0] == 'U' ? idx : d.u + idx);
    }
    d.cycles.push_back(canonical_cycle(c));
  }
  return d;
}

std::vector<int> sorted_lengths(const std::vector<Cycle>& cycles) {
  std::vector<int> lens;
  for (const auto& c : cycles)
    if (!c.empty()) lens.push_back((int)c.size());
  std::sort(lens.begin(), lens.end());
  return lens;
}

}  // namespace holecycle
