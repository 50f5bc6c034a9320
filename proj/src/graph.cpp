#include "msign/graph.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <sstream>

namespace msign {

std::size_t Digraph::edge_count() const noexcept {
  std::size_t e = 0;
  for (const auto& s : adj_) e += s.size();
  return e;
}

void Digraph::add_edge(std::size_t from, std::size_t to) {
  if (from >= adj_.size() || to >= adj_.size()) throw DomainError("edge endpoint out of range");
  if (from == to) return;
  auto& s = adj_[from];
  auto it = std::lower_bound(s.begin(), s.end(), to);
  if (it == s.end() || *it != to) s.insert(it, to);
}

bool Digraph::has_edge(std::size_t from, std::size_t to) const {
  if (from >= adj_.size()) return false;
  return std::binary_search(adj_[from].begin(), adj_[from].end(), to);
}

std::vector<std::pair<std::size_t, std::size_t>> Digraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t u = 0; u < adj_.size(); ++u)
    for (std::size_t v : adj_[u]) out.emplace_back(u, v);
  return out;
}

namespace {

template <typename T, typename Pred>
Digraph build(const Matrix<T>& a, Pred nonzero) {
  if (!a.square()) throw DomainError("digraph_of: matrix is not square");
  Digraph g(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j && nonzero(a(i, j))) g.add_edge(j, i);
  return g;
}

}  // namespace

Digraph digraph_of(const QualMatrix& a) {
  return build(a, [](Sign s) { return s != Sign::Zero; });
}

Digraph digraph_of(const RealMatrix& a) {
  return build(a, [](double x) { return x != 0.0; });
}

Digraph digraph_of(const MixedMatrix& a) {
  return build(a, [](const MixedEntry& e) { return is_nonzero(e); });
}

std::optional<CycleWitness> find_cycle(const Digraph& g) {
  const std::size_t n = g.node_count();
  enum : char { White, Grey, Black };
  std::vector<char> color(n, White);
  struct Frame {
    std::size_t node;
    std::size_t next;
  };
  std::vector<Frame> stack;
  for (std::size_t root = 0; root < n; ++root) {
    if (color[root] != White) continue;
    stack.push_back({root, 0});
    color[root] = Grey;
    while (!stack.empty()) {
      Frame& top = stack.back();
      const auto& succ = g.successors(top.node);
      if (top.next == succ.size()) {
        color[top.node] = Black;
        stack.pop_back();
        continue;
      }
      const std::size_t w = succ[top.next++];
      if (color[w] == White) {
        color[w] = Grey;
        stack.push_back({w, 0});
      } else if (color[w] == Grey) {
        CycleWitness cycle;
        auto it = std::find_if(stack.begin(), stack.end(),
                               [w](const Frame& f) { return f.node == w; });
        for (; it != stack.end(); ++it) cycle.push_back(it->node);
        cycle.push_back(w);
        return cycle;
      }
    }
  }
  return std::nullopt;
}

bool validate_cycle(const Digraph& g, const CycleWitness& w) {
  if (w.size() < 3 || w.front() != w.back()) return false;
  for (std::size_t k = 0; k + 1 < w.size(); ++k)
    if (!g.has_edge(w[k], w[k + 1])) return false;
  return true;
}

std::vector<std::size_t> topo_permutation(const Digraph& g) {
  // Kahn's algorithm on the reversed graph: a node is placed once every node it
  // points to has been placed.
  const std::size_t n = g.node_count();
  std::vector<std::size_t> pending(n, 0);
  std::vector<std::vector<std::size_t>> preds(n);
  for (std::size_t u = 0; u < n; ++u) {
    pending[u] = g.successors(u).size();
    for (std::size_t v : g.successors(u)) preds[v].push_back(u);
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t u = 0; u < n; ++u)
    if (pending[u] == 0) ready.push(u);
  std::vector<std::size_t> perm;
  perm.reserve(n);
  while (!ready.empty()) {
    const std::size_t u = ready.top();
    ready.pop();
    perm.push_back(u);
    for (std::size_t p : preds[u])
      if (--pending[p] == 0) ready.push(p);
  }
  if (perm.size() != n) throw DomainError("topo_permutation: graph has a cycle");
  return perm;
}

std::vector<std::vector<bool>> reachability(const Digraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < n; ++s) {
    auto& row = reach[s];
    stack.assign(g.successors(s).begin(), g.successors(s).end());
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      if (row[u]) continue;
      row[u] = true;
      for (std::size_t v : g.successors(u))
        if (!row[v]) stack.push_back(v);
    }
  }
  return reach;
}

bool strongly_connected(const Digraph& g) {
  const std::size_t n = g.node_count();
  if (n <= 1) return true;
  const auto reach = reachability(g);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && !reach[i][j]) return false;
  return true;
}

Digraph bipartite_graph(const QualMatrix& m1, const QualMatrix& m2) {
  if (!m1.square() || !m2.square() || m1.rows() != m2.rows())
    throw DomainError("bipartite_cycle_free: patterns must be square of equal size");
  const std::size_t n = m1.rows();
  Digraph g(2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (m1(j, i) != Sign::Zero) g.add_edge(n + i, j);
      if (m2(j, i) != Sign::Zero) g.add_edge(i, n + j);
    }
  return g;
}

BipartiteResult bipartite_cycle_free(const QualMatrix& m1, const QualMatrix& m2) {
  BipartiteResult r;
  r.cycle = find_cycle(bipartite_graph(m1, m2));
  r.cycle_free = !r.cycle.has_value();
  return r;
}

std::string to_dot(const Digraph& g, std::size_t bipartite_half) {
  auto label = [bipartite_half](std::size_t v) {
    if (bipartite_half == 0) return std::to_string(v);
    return v < bipartite_half ? "s" + std::to_string(v) : "p" + std::to_string(v - bipartite_half);
  };
  std::ostringstream os;
  os << "digraph D {\n";
  for (std::size_t v = 0; v < g.node_count(); ++v) os << "  " << label(v) << ";\n";
  for (const auto& [a, b] : g.edges()) os << "  " << label(a) << " -> " << label(b) << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace msign
