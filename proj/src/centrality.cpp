#include "citenet/centrality.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <queue>
#include <thread>
#include <unordered_map>

namespace citenet {

const char* centrality_kind_name(CentralityKind k) {
  switch (k) {
    case CentralityKind::degree: return "degree";
    case CentralityKind::in_degree: return "in_degree";
    case CentralityKind::out_degree: return "out_degree";
    case CentralityKind::betweenness: return "betweenness";
    case CentralityKind::closeness: return "closeness";
    case CentralityKind::pagerank: return "pagerank";
    case CentralityKind::semi_local: return "semi_local";
    case CentralityKind::volume: return "volume";
    case CentralityKind::coreness: return "coreness";
  }
  return "degree";
}

std::optional<CentralityKind> parse_centrality_kind(const std::string& name) {
  for (CentralityKind k : all_centrality_kinds())
    if (name == centrality_kind_name(k)) return k;
  return std::nullopt;
}

std::vector<CentralityKind> all_centrality_kinds() {
  return {CentralityKind::degree,      CentralityKind::in_degree,
          CentralityKind::out_degree,  CentralityKind::betweenness,
          CentralityKind::closeness,   CentralityKind::pagerank,
          CentralityKind::semi_local,  CentralityKind::volume,
          CentralityKind::coreness};
}

std::optional<double> CentralityTable::score_of(const std::string& node) const {
  for (size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i] == node) return scores[i];
  return std::nullopt;
}

DisconnectedGraphError::DisconnectedGraphError(std::string from, std::string to)
    : std::runtime_error("graph is disconnected: no path from " + from +
                         " to " + to),
      from_node(std::move(from)),
      to_node(std::move(to)) {}

// ---- internal graph views --------------------------------------------------

namespace {

struct MultAdj {
  NodeId target;
  double weight;  // edge multiplicity
};

// Precomputed adjacency in the three forms the centralities consume:
// multiplicity-weighted (degree, pagerank), simple directed projection
// (shortest paths), simple undirected projection (neighborhood measures).
// All lists are sorted by neighbor id, which fixes floating-point
// accumulation order independent of build history and worker count.
struct GraphView {
  int n = 0;
  bool directed = true;
  std::vector<std::vector<MultAdj>> out_mult;  // undirected: incident list
  std::vector<std::vector<MultAdj>> in_mult;   // undirected: same as out
  std::vector<double> out_weight;              // total outgoing multiplicity
  std::vector<double> in_weight;
  std::vector<std::vector<NodeId>> simple_out;  // no self-loops, no parallels
  std::vector<std::vector<NodeId>> simple_in;
  std::vector<std::vector<NodeId>> undirected;  // directions ignored
};

std::vector<MultAdj> aggregate_sorted(std::vector<NodeId>& targets) {
  std::sort(targets.begin(), targets.end());
  std::vector<MultAdj> out;
  for (size_t i = 0; i < targets.size();) {
    size_t j = i;
    while (j < targets.size() && targets[j] == targets[i]) ++j;
    out.push_back({targets[i], static_cast<double>(j - i)});
    i = j;
  }
  return out;
}

std::vector<NodeId> simple_neighbors(const std::vector<MultAdj>& mult,
                                     NodeId self) {
  std::vector<NodeId> out;
  out.reserve(mult.size());
  for (const auto& a : mult)
    if (a.target != self) out.push_back(a.target);
  return out;
}

GraphView make_view(const LabeledGraph& g) {
  GraphView view;
  view.n = static_cast<int>(g.node_count());
  view.directed = g.directed();
  std::vector<std::vector<NodeId>> out_raw(view.n), in_raw(view.n);
  for (const auto& e : g.edges()) {
    if (view.directed) {
      out_raw[e.src].push_back(e.dst);
      in_raw[e.dst].push_back(e.src);
    } else {
      out_raw[e.src].push_back(e.dst);
      out_raw[e.dst].push_back(e.src);  // self-loops land twice, degree +2
    }
  }
  view.out_mult.resize(view.n);
  view.in_mult.resize(view.n);
  view.out_weight.assign(view.n, 0.0);
  view.in_weight.assign(view.n, 0.0);
  view.simple_out.resize(view.n);
  view.simple_in.resize(view.n);
  view.undirected.resize(view.n);
  for (NodeId u = 0; u < static_cast<NodeId>(view.n); ++u) {
    view.out_mult[u] = aggregate_sorted(out_raw[u]);
    for (const auto& a : view.out_mult[u]) view.out_weight[u] += a.weight;
    view.simple_out[u] = simple_neighbors(view.out_mult[u], u);
  }
  if (view.directed) {
    for (NodeId u = 0; u < static_cast<NodeId>(view.n); ++u) {
      view.in_mult[u] = aggregate_sorted(in_raw[u]);
      for (const auto& a : view.in_mult[u]) view.in_weight[u] += a.weight;
      view.simple_in[u] = simple_neighbors(view.in_mult[u], u);
      std::vector<NodeId> both = view.simple_out[u];
      both.insert(both.end(), view.simple_in[u].begin(), view.simple_in[u].end());
      std::sort(both.begin(), both.end());
      both.erase(std::unique(both.begin(), both.end()), both.end());
      view.undirected[u] = std::move(both);
    }
  } else {
    view.in_mult = view.out_mult;
    view.in_weight = view.out_weight;
    view.simple_in = view.simple_out;
    view.undirected = view.simple_out;
  }
  return view;
}

// ---- deterministic parallel helpers -----------------------------------------

// Runs fn(item) over 0..items-1 on `workers` threads. Results must land in
// per-item slots; no cross-item accumulation happens here.
void parallel_for(size_t items, int workers,
                  const std::function<void(size_t)>& fn) {
  workers = std::max(1, workers);
  const size_t threads = std::min<size_t>(workers, std::max<size_t>(items, 1));
  if (threads <= 1) {
    for (size_t i = 0; i < items; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  std::mutex error_mu;
  std::exception_ptr error;
  for (size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      while (true) {
        const size_t i = next.fetch_add(1);
        if (i >= items) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

constexpr size_t kReduceBlock = 64;

// Sums per-item contributions into a vector of `slots` doubles. Items are
// grouped into fixed-size blocks; block partials are merged in ascending
// block order no matter which thread finished them, so the result is
// bitwise identical for every worker count.
std::vector<double> blocked_parallel_sum(
    size_t items, size_t slots, int workers,
    const std::function<void(size_t, std::vector<double>&)>& fn) {
  std::vector<double> total(slots, 0.0);
  const size_t nblocks = (items + kReduceBlock - 1) / kReduceBlock;
  if (nblocks == 0) return total;
  workers = std::max(1, workers);
  const size_t threads = std::min<size_t>(workers, nblocks);

  std::atomic<size_t> next{0};
  std::mutex mu;
  std::map<size_t, std::vector<double>> pending;
  size_t merged = 0;
  std::exception_ptr error;

  auto work = [&] {
    std::vector<double> local;
    while (true) {
      const size_t b = next.fetch_add(1);
      if (b >= nblocks) return;
      local.assign(slots, 0.0);
      const size_t begin = b * kReduceBlock;
      const size_t end = std::min(items, begin + kReduceBlock);
      try {
        for (size_t i = begin; i < end; ++i) fn(i, local);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
        return;
      }
      std::lock_guard lock(mu);
      pending.emplace(b, std::move(local));
      while (!pending.empty() && pending.begin()->first == merged) {
        const auto& part = pending.begin()->second;
        for (size_t i = 0; i < slots; ++i) total[i] += part[i];
        pending.erase(pending.begin());
        ++merged;
      }
    }
  };

  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (size_t t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  return total;
}

// ---- individual measures -----------------------------------------------------

std::vector<double> degree_scores(const GraphView& view, CentralityKind kind,
                                  bool distinct) {
  const int n = view.n;
  std::vector<double> scores(n, 0.0);
  if (n <= 1) return scores;
  for (int u = 0; u < n; ++u) {
    double k = 0.0;
    if (distinct) {
      switch (kind) {
        case CentralityKind::degree:
          k = view.directed ? static_cast<double>(view.simple_out[u].size() +
                                                  view.simple_in[u].size())
                            : static_cast<double>(view.undirected[u].size());
          break;
        case CentralityKind::in_degree:
          k = static_cast<double>(view.simple_in[u].size());
          break;
        case CentralityKind::out_degree:
          k = static_cast<double>(view.simple_out[u].size());
          break;
        default: break;
      }
    } else {
      switch (kind) {
        case CentralityKind::degree:
          k = view.directed ? view.out_weight[u] + view.in_weight[u]
                            : view.out_weight[u];
          break;
        case CentralityKind::in_degree: k = view.in_weight[u]; break;
        case CentralityKind::out_degree: k = view.out_weight[u]; break;
        default: break;
      }
    }
    scores[u] = k / (n - 1);
  }
  return scores;
}

// One Brandes source: accumulates shortest-path dependencies of s into acc.
void brandes_source(const std::vector<std::vector<NodeId>>& adj, int n, int s,
                    std::vector<double>& acc) {
  std::vector<int> dist(n, -1);
  std::vector<double> sigma(n, 0.0), delta(n, 0.0);
  std::vector<std::vector<NodeId>> preds(n);
  std::vector<NodeId> order;
  order.reserve(n);

  std::queue<NodeId> queue;
  dist[s] = 0;
  sigma[s] = 1.0;
  queue.push(static_cast<NodeId>(s));
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop();
    order.push_back(v);
    for (const NodeId w : adj[v]) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push(w);
      }
      if (dist[w] == dist[v] + 1) {
        sigma[w] += sigma[v];
        preds[w].push_back(v);
      }
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId w = *it;
    for (const NodeId v : preds[w])
      delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
    if (w != static_cast<NodeId>(s)) acc[w] += delta[w];
  }
}

std::vector<double> betweenness_scores(const GraphView& view,
                                       const CentralityParams& params) {
  const int n = view.n;
  if (n < 3) return std::vector<double>(n, 0.0);
  const auto& adj = view.directed ? view.simple_out : view.undirected;
  auto raw = blocked_parallel_sum(
      n, n, params.workers,
      [&](size_t s, std::vector<double>& acc) {
        brandes_source(adj, n, static_cast<int>(s), acc);
      });
  // Undirected traversal visits each unordered pair from both endpoints.
  if (!view.directed)
    for (auto& x : raw) x /= 2.0;
  double norm = static_cast<double>(n - 1) * (n - 2) / 2.0;
  if (params.normalizer == BetweennessNormalizer::directed_pairs)
    norm = static_cast<double>(n - 1) * (n - 2);
  for (auto& x : raw) x /= norm;
  return raw;
}

// BFS distance sum from u over nodes with matching component id (pass -1 to
// span the whole graph). Returns pairs (reached count, distance sum).
std::pair<int, long long> farness(const std::vector<std::vector<NodeId>>& adj,
                                  int n, int u,
                                  const std::vector<int>& component,
                                  int component_id) {
  std::vector<int> dist(n, -1);
  std::queue<NodeId> queue;
  dist[u] = 0;
  queue.push(static_cast<NodeId>(u));
  int reached = 0;
  long long sum = 0;
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop();
    ++reached;
    sum += dist[v];
    for (const NodeId w : adj[v]) {
      if (dist[w] >= 0) continue;
      if (component_id >= 0 && component[w] != component_id) continue;
      dist[w] = dist[v] + 1;
      queue.push(w);
    }
  }
  return {reached, sum};
}

// Undirected connected components.
std::vector<int> undirected_components(const GraphView& view) {
  std::vector<int> comp(view.n, -1);
  int next = 0;
  for (int s = 0; s < view.n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = next;
    std::vector<NodeId> stack{static_cast<NodeId>(s)};
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      for (const NodeId w : view.undirected[v])
        if (comp[w] < 0) {
          comp[w] = next;
          stack.push_back(w);
        }
    }
    ++next;
  }
  return comp;
}

// Iterative Tarjan strongly connected components.
std::vector<int> strong_components(const GraphView& view) {
  const int n = view.n;
  std::vector<int> comp(n, -1), low(n, 0), disc(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<NodeId> stack;
  int time = 0, next_comp = 0;

  struct Frame {
    NodeId v;
    size_t edge;
  };
  for (int root = 0; root < n; ++root) {
    if (disc[root] >= 0) continue;
    std::vector<Frame> frames{{static_cast<NodeId>(root), 0}};
    disc[root] = low[root] = time++;
    stack.push_back(static_cast<NodeId>(root));
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto& adj = view.simple_out[f.v];
      if (f.edge < adj.size()) {
        const NodeId w = adj[f.edge++];
        if (disc[w] < 0) {
          disc[w] = low[w] = time++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        const NodeId v = f.v;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        if (low[v] == disc[v]) {
          while (true) {
            const NodeId w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = next_comp;
            if (w == v) break;
          }
          ++next_comp;
        }
      }
    }
  }
  return comp;
}

std::vector<double> closeness_scores(const LabeledGraph& g, const GraphView& view,
                                     const CentralityParams& params) {
  const int n = view.n;
  std::vector<double> scores(n, 0.0);
  if (n <= 1) return scores;
  const auto& adj = view.directed ? view.simple_out : view.undirected;

  if (params.closeness_mode == ClosenessMode::strict) {
    // Sequential reachability precheck so the reported pair never depends
    // on thread timing.
    std::vector<int> none;
    auto [fwd_count, fwd_sum] = farness(adj, n, 0, none, -1);
    (void)fwd_sum;
    if (fwd_count < n) {
      std::vector<int> dist(n, -1);
      std::queue<NodeId> queue;
      dist[0] = 0;
      queue.push(0);
      while (!queue.empty()) {
        const NodeId v = queue.front();
        queue.pop();
        for (const NodeId w : adj[v])
          if (dist[w] < 0) {
            dist[w] = dist[v] + 1;
            queue.push(w);
          }
      }
      for (int v = 0; v < n; ++v)
        if (dist[v] < 0)
          throw DisconnectedGraphError(g.node_label(0), g.node_label(v));
    }
    if (view.directed) {
      // Strong connectivity also needs everyone to reach node 0.
      auto [rev_count, rev_sum] = farness(view.simple_in, n, 0, none, -1);
      (void)rev_sum;
      if (rev_count < n) {
        std::vector<int> dist(n, -1);
        std::queue<NodeId> queue;
        dist[0] = 0;
        queue.push(0);
        while (!queue.empty()) {
          const NodeId v = queue.front();
          queue.pop();
          for (const NodeId w : view.simple_in[v])
            if (dist[w] < 0) {
              dist[w] = dist[v] + 1;
              queue.push(w);
            }
        }
        for (int v = 0; v < n; ++v)
          if (dist[v] < 0)
            throw DisconnectedGraphError(g.node_label(v), g.node_label(0));
      }
    }
    std::vector<int> none2;
    parallel_for(n, params.workers, [&](size_t u) {
      auto [count, sum] = farness(adj, n, static_cast<int>(u), none2, -1);
      (void)count;
      scores[u] = static_cast<double>(n - 1) / static_cast<double>(sum);
    });
    return scores;
  }

  // Component-local variant: scores within each mutual-reachability class.
  const std::vector<int> comp =
      view.directed ? strong_components(view) : undirected_components(view);
  std::vector<int> comp_size(*std::max_element(comp.begin(), comp.end()) + 1, 0);
  for (int c : comp) ++comp_size[c];
  parallel_for(n, params.workers, [&](size_t u) {
    const int c = comp[u];
    if (comp_size[c] <= 1) return;  // isolated in its class, scores 0
    auto [count, sum] = farness(adj, n, static_cast<int>(u), comp, c);
    (void)count;
    scores[u] =
        static_cast<double>(comp_size[c] - 1) / static_cast<double>(sum);
  });
  return scores;
}

struct PagerankResult {
  std::vector<double> scores;
  bool converged = true;
  int iterations = 0;
};

PagerankResult pagerank_scores(const GraphView& view,
                               const CentralityParams& params) {
  const int n = view.n;
  PagerankResult result;
  if (n == 0) return result;
  std::vector<double> x(n, 1.0 / n), next(n, 0.0);
  for (int iter = 1; iter <= params.max_iter; ++iter) {
    double dangling = 0.0;
    for (int v = 0; v < n; ++v)
      if (view.out_weight[v] == 0.0) dangling += x[v];
    for (int u = 0; u < n; ++u) {
      double link = 0.0;
      for (const auto& a : view.in_mult[u])
        link += x[a.target] * a.weight / view.out_weight[a.target];
      next[u] = params.q / n + (1.0 - params.q) * (link + dangling / n);
    }
    double change = 0.0;
    for (int u = 0; u < n; ++u) change += std::abs(next[u] - x[u]);
    x.swap(next);
    result.iterations = iter;
    if (change < params.tol) {
      result.scores = std::move(x);
      return result;
    }
  }
  result.converged = false;
  result.scores = std::move(x);
  return result;
}

// Number of distinct nodes within distance 2 (the node itself excluded).
int within_two(const std::vector<std::vector<NodeId>>& adj, int n, int u,
               std::vector<int>& mark, int stamp) {
  (void)n;
  int count = 0;
  mark[u] = stamp;
  for (const NodeId v : adj[u]) {
    if (mark[v] != stamp) {
      mark[v] = stamp;
      ++count;
    }
  }
  // Second ring: neighbors of neighbors.
  for (const NodeId v : adj[u])
    for (const NodeId w : adj[v])
      if (mark[w] != stamp) {
        mark[w] = stamp;
        ++count;
      }
  return count;
}

std::vector<double> semi_local_scores(const GraphView& view, int workers) {
  const int n = view.n;
  std::vector<double> scores(n, 0.0);
  if (n <= 1) return scores;
  std::vector<double> d2(n, 0.0);
  parallel_for(n, workers, [&](size_t u) {
    std::vector<int> mark(n, -1);
    d2[u] = within_two(view.undirected, n, static_cast<int>(u), mark,
                       static_cast<int>(u));
  });
  parallel_for(n, workers, [&](size_t u) {
    double total = 0.0;
    for (const NodeId v : view.undirected[u])
      for (const NodeId w : view.undirected[v]) total += d2[w];
    scores[u] = total;
  });
  return scores;
}

std::vector<double> volume_scores(const GraphView& view, int h, int workers) {
  const int n = view.n;
  std::vector<double> scores(n, 0.0);
  if (n <= 1) return scores;
  parallel_for(n, workers, [&](size_t s) {
    std::vector<int> dist(n, -1);
    std::queue<NodeId> queue;
    dist[s] = 0;
    queue.push(static_cast<NodeId>(s));
    double total = 0.0;
    while (!queue.empty()) {
      const NodeId v = queue.front();
      queue.pop();
      total += static_cast<double>(view.undirected[v].size());
      if (dist[v] == h) continue;
      for (const NodeId w : view.undirected[v])
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push(w);
        }
    }
    scores[s] = total;
  });
  return scores;
}

// Shell decomposition: repeatedly strip nodes of degree <= k, ascending k.
std::vector<double> coreness_scores(const GraphView& view) {
  const int n = view.n;
  std::vector<double> scores(n, 0.0);
  if (n == 0) return scores;
  std::vector<int> degree(n);
  for (int u = 0; u < n; ++u)
    degree[u] = static_cast<int>(view.undirected[u].size());
  std::vector<bool> removed(n, false);
  int remaining = n;
  int k = 0;
  while (remaining > 0) {
    bool stripped = true;
    while (stripped) {
      stripped = false;
      for (int u = 0; u < n; ++u) {
        if (removed[u] || degree[u] > k) continue;
        removed[u] = true;
        --remaining;
        scores[u] = k;
        stripped = true;
        for (const NodeId w : view.undirected[u])
          if (!removed[w]) --degree[w];
      }
    }
    ++k;
  }
  return scores;
}

}  // namespace

// ---- public API --------------------------------------------------------------

namespace {

CentralityTable finish_table(const LabeledGraph& g, CentralityKind kind,
                             const CentralityParams& params,
                             std::vector<double> scores) {
  CentralityTable table;
  table.kind = kind;
  table.params = params;
  table.nodes.reserve(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u)
    table.nodes.push_back(g.node_label(u));
  table.scores = std::move(scores);
  return table;
}

CentralityTable compute_with_view(const LabeledGraph& g, const GraphView& view,
                                  CentralityKind kind,
                                  const CentralityParams& params) {
  switch (kind) {
    case CentralityKind::in_degree:
    case CentralityKind::out_degree:
      if (!view.directed)
        throw std::invalid_argument(
            std::string(centrality_kind_name(kind)) +
            " is undefined on an undirected graph");
      [[fallthrough]];
    case CentralityKind::degree:
      return finish_table(g, kind, params,
                          degree_scores(view, kind, params.distinct_degree));
    case CentralityKind::betweenness:
      return finish_table(g, kind, params, betweenness_scores(view, params));
    case CentralityKind::closeness:
      return finish_table(g, kind, params, closeness_scores(g, view, params));
    case CentralityKind::pagerank: {
      auto pr = pagerank_scores(view, params);
      auto table = finish_table(g, kind, params, std::move(pr.scores));
      table.converged = pr.converged;
      table.iterations = pr.iterations;
      return table;
    }
    case CentralityKind::semi_local:
      return finish_table(g, kind, params,
                          semi_local_scores(view, params.workers));
    case CentralityKind::volume:
      return finish_table(g, kind, params,
                          volume_scores(view, params.h, params.workers));
    case CentralityKind::coreness:
      return finish_table(g, kind, params, coreness_scores(view));
  }
  throw std::invalid_argument("unknown centrality kind");
}

}  // namespace

CentralityTable compute_centrality(const LabeledGraph& g, CentralityKind kind,
                                   const CentralityParams& params) {
  const GraphView view = make_view(g);
  return compute_with_view(g, view, kind, params);
}

int h_index(std::span<const int> citation_counts) {
  std::vector<int> sorted(citation_counts.begin(), citation_counts.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  int h = 0;
  while (h < static_cast<int>(sorted.size()) && sorted[h] >= h + 1) ++h;
  return h;
}

CentralityBatch all_centralities(const SnapshotSeries& series,
                                 const std::vector<CentralityKind>& kinds,
                                 const CentralityParams& params) {
  CentralityBatch batch;
  for (const auto& [year, graph] : series.snapshots) {
    const GraphView view = make_view(graph);
    for (const CentralityKind kind : kinds) {
      CentralityOutcome outcome;
      try {
        outcome.table = compute_with_view(graph, view, kind, params);
      } catch (const std::exception& ex) {
        outcome.error = ex.what();
      }
      batch.emplace(std::make_pair(year, kind), std::move(outcome));
    }
  }
  return batch;
}

}  // namespace citenet
