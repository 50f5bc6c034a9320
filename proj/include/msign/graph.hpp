#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "msign/qual.hpp"

namespace msign {

/// Directed graph on nodes 0..n-1 with sorted, duplicate-free adjacency lists
/// and no self-loops.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(std::size_t n) : adj_(n) {}

  std::size_t node_count() const noexcept { return adj_.size(); }
  std::size_t edge_count() const noexcept;

  /// Inserts from -> to. Self-loops and duplicates are ignored.
  void add_edge(std::size_t from, std::size_t to);
  bool has_edge(std::size_t from, std::size_t to) const;
  const std::vector<std::size_t>& successors(std::size_t v) const { return adj_.at(v); }

  /// All edges in lexicographic (from, to) order.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

 private:
  std::vector<std::vector<std::size_t>> adj_;
};

/// Closed walk v0, v1, ..., vk with vk == v0.
using CycleWitness = std::vector<std::size_t>;

/// D_A: edge (j, i) whenever a_ij is nonzero and i != j. Indefinite entries count.
Digraph digraph_of(const QualMatrix& a);
Digraph digraph_of(const RealMatrix& a);
Digraph digraph_of(const MixedMatrix& a);

std::optional<CycleWitness> find_cycle(const Digraph& g);
bool validate_cycle(const Digraph& g, const CycleWitness& w);

/// perm[k] is the original node placed at position k. Every edge j -> i ends up
/// with pos(i) < pos(j), so permute_symmetric(A, perm) is upper-triangular.
/// Throws DomainError on cyclic input.
std::vector<std::size_t> topo_permutation(const Digraph& g);

/// reach[j][i] is true iff a path of length >= 1 leads from j to i.
std::vector<std::vector<bool>> reachability(const Digraph& g);

bool strongly_connected(const Digraph& g);

/// Bipartite graph with sigma nodes 0..n-1 and phi nodes n..2n-1:
/// phi_i -> sigma_j when [M1]_ji != 0, sigma_i -> phi_j when [M2]_ji != 0.
Digraph bipartite_graph(const QualMatrix& m1, const QualMatrix& m2);

struct BipartiteResult {
  bool cycle_free = true;
  std::optional<CycleWitness> cycle;
};

BipartiteResult bipartite_cycle_free(const QualMatrix& m1, const QualMatrix& m2);

/// Graphviz text. With bipartite_half > 0, nodes below it are labelled s<i>
/// and the rest p<i - bipartite_half>.
std::string to_dot(const Digraph& g, std::size_t bipartite_half = 0);

}  // namespace msign
