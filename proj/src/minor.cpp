#include "lpflat/minor.hpp"

#include <algorithm>
#include <set>

#include "lpflat/error.hpp"

namespace lpflat {

bool validate_witness(const Graph& host, const Graph& minor, const MinorWitness& witness) {
  if (static_cast<int>(witness.branch_sets.size()) != minor.n()) return false;
  if (static_cast<int>(witness.edge_map.size()) != minor.num_edges()) return false;
  std::vector<int> owner(host.n(), -1);
  for (int i = 0; i < minor.n(); ++i) {
    const auto& set = witness.branch_sets[i];
    if (set.empty()) return false;
    for (int v : set) {
      if (v < 0 || v >= host.n() || owner[v] >= 0) return false;
      owner[v] = i;
    }
    // connectivity inside the branch set
    std::vector<int> stack{set.front()};
    std::vector<char> seen(host.n(), 0);
    seen[set.front()] = 1;
    std::size_t reached = 0;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      ++reached;
      for (int w : host.neighbors(v)) {
        if (!seen[w] && owner[w] == i) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    if (reached != set.size()) return false;
  }
  for (int k = 0; k < minor.num_edges(); ++k) {
    const Edge& me = minor.edges()[k];
    const Edge& he = witness.edge_map[k];
    if (!host.has_edge(he)) return false;
    const int a = owner[he.u];
    const int b = owner[he.v];
    if (!((a == me.u && b == me.v) || (a == me.v && b == me.u))) return false;
  }
  return true;
}

namespace {

/// Injective map of h's vertices into g's preserving h's edges.
class SubgraphEmbedder {
 public:
  SubgraphEmbedder(const Graph& g, const Graph& h) : g_(g), h_(h) {
    order_.resize(h.n());
    for (int i = 0; i < h.n(); ++i) order_[i] = i;
    // Connected, high-degree-first order so adjacency checks bite early.
    std::vector<char> placed(h.n(), 0);
    for (int pos = 0; pos < h.n(); ++pos) {
      int best = -1;
      int best_key = -1;
      for (int v = 0; v < h.n(); ++v) {
        if (placed[v]) continue;
        int back = 0;
        for (int i = 0; i < pos; ++i) back += h.has_edge(order_[i], v) ? 1 : 0;
        const int key = back * 64 + h.degree(v);
        if (key > best_key) {
          best_key = key;
          best = v;
        }
      }
      order_[pos] = best;
      placed[best] = 1;
    }
  }

  std::optional<std::vector<int>> find() {
    map_.assign(h_.n(), -1);
    used_.assign(g_.n(), 0);
    if (extend(0)) return map_;
    return std::nullopt;
  }

 private:
  bool extend(int pos) {
    if (pos == h_.n()) return true;
    const int a = order_[pos];
    const int need = h_.degree(a);
    for (int x = 0; x < g_.n(); ++x) {
      if (used_[x] || g_.degree(x) < need) continue;
      bool ok = true;
      for (int i = 0; i < pos && ok; ++i) {
        const int b = order_[i];
        if (h_.has_edge(a, b) && !g_.has_edge(x, map_[b])) ok = false;
      }
      if (!ok) continue;
      map_[a] = x;
      used_[x] = 1;
      if (extend(pos + 1)) return true;
      used_[x] = 0;
      map_[a] = -1;
    }
    return false;
  }

  const Graph& g_;
  const Graph& h_;
  std::vector<int> order_;
  std::vector<int> map_;
  std::vector<char> used_;
};

class MinorSearch {
 public:
  MinorSearch(const Graph& host, const Graph& minor) : host_(host), minor_(minor) {}

  std::optional<MinorWitness> run() {
    std::vector<std::vector<int>> branch(host_.n());
    for (int v = 0; v < host_.n(); ++v) branch[v] = {v};
    return search(host_, branch);
  }

 private:
  std::optional<MinorWitness> search(const Graph& cur, const std::vector<std::vector<int>>& branch) {
    if (cur.n() < minor_.n() || cur.num_edges() < minor_.num_edges()) return std::nullopt;
    auto key = canonical_form(cur);
    if (failed_.count(key)) return std::nullopt;

    if (auto map = SubgraphEmbedder(cur, minor_).find()) return build_witness(*map, branch);

    if (cur.n() > minor_.n()) {
      for (const Edge& e : cur.edges()) {
        std::vector<int> vertex_map;
        Graph next = contract_edge(cur, e, vertex_map);
        std::vector<std::vector<int>> merged(next.n());
        for (int v = 0; v < cur.n(); ++v)
          merged[vertex_map[v]].insert(merged[vertex_map[v]].end(), branch[v].begin(), branch[v].end());
        if (auto found = search(next, merged)) return found;
      }
    }
    failed_.insert(std::move(key));
    return std::nullopt;
  }

  MinorWitness build_witness(const std::vector<int>& map, const std::vector<std::vector<int>>& branch) const {
    MinorWitness w;
    w.branch_sets.resize(minor_.n());
    for (int a = 0; a < minor_.n(); ++a) {
      w.branch_sets[a] = branch[map[a]];
      std::sort(w.branch_sets[a].begin(), w.branch_sets[a].end());
    }
    for (const Edge& me : minor_.edges()) {
      const auto& sa = w.branch_sets[me.u];
      const auto& sb = w.branch_sets[me.v];
      Edge found;
      bool ok = false;
      for (int x : sa) {
        for (int y : sb) {
          if (host_.has_edge(x, y)) {
            found = Edge(x, y);
            ok = true;
            break;
          }
        }
        if (ok) break;
      }
      w.edge_map.push_back(found);
    }
    return w;
  }

  const Graph& host_;
  const Graph& minor_;
  std::set<std::vector<std::uint64_t>> failed_;
};

}  // namespace

std::optional<MinorWitness> has_minor(const Graph& g, const Graph& h, const MinorSearchLimits& limits) {
  if (g.n() > limits.max_vertices || g.num_edges() > limits.max_edges) {
    throw Error(ErrorKind::SizeCapExceeded, "exact minor search is capped at " + std::to_string(limits.max_vertices) +
                                                " vertices / " + std::to_string(limits.max_edges) + " edges; host has " +
                                                std::to_string(g.n()) + " / " + std::to_string(g.num_edges()));
  }
  if (h.n() > g.n() || h.num_edges() > g.num_edges()) return std::nullopt;
  return MinorSearch(g, h).run();
}

TwoTreeReduction reduce_series_parallel(const Graph& g) {
  const int n = g.n();
  std::vector<std::set<int>> adj(n);
  for (const Edge& e : g.edges()) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  std::vector<char> alive(n, 1);
  TwoTreeReduction out;
  int remaining = n;
  bool progress = true;
  while (remaining > 0 && progress) {
    progress = false;
    for (int v = 0; v < n; ++v) {
      if (!alive[v] || adj[v].size() > 2) continue;
      ReductionStep step;
      step.vertex = v;
      step.neighbors.assign(adj[v].begin(), adj[v].end());
      for (int w : step.neighbors) adj[w].erase(v);
      if (step.neighbors.size() == 2) {
        const int a = step.neighbors[0];
        const int b = step.neighbors[1];
        step.added_edge = adj[a].insert(b).second;
        adj[b].insert(a);
      }
      adj[v].clear();
      alive[v] = 0;
      --remaining;
      out.trace.push_back(std::move(step));
      progress = true;
    }
  }
  for (int v = 0; v < n; ++v)
    if (alive[v]) out.residual_core.push_back(v);
  out.partial_two_tree = remaining == 0;
  return out;
}

}  // namespace lpflat
