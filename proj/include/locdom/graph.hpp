#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "locdom/vertex_set.hpp"

namespace locdom {

// Detection region kind. Open uses N(v), Closed uses N[v]; both are uniform
// and symmetric, which is what lets locating codes be computed as
// region(v) ∩ S.
enum class DetectionKind { Open, Closed };

const char* to_string(DetectionKind kind);

struct KingTorusShape {
  int rows = 0;
  int cols = 0;
  // Wrap shorter than 5 in either dimension is usable for tiny brute-force
  // experiments but is not a valid proxy for the infinite grid.
  bool faithful = false;
};

// Finite simple undirected graph over dense vertex indices 0..n-1 with
// bitset adjacency. Immutable after construction; safe to share across
// threads.
class Graph {
 public:
  // Symmetric closure of the edge list; duplicate edges collapse.
  static Graph from_edge_list(int n, const std::vector<std::pair<int, int>>& edges);

  // rows x cols torus where (r,c) is adjacent to the 8 cells at Chebyshev
  // distance 1 with wraparound. Requires rows, cols >= 3.
  static Graph king_torus(int rows, int cols);

  int vertex_count() const { return n_; }
  long long edge_count() const;
  int degree(int v) const;
  bool adjacent(int u, int v) const;

  const VertexSet& open_neighborhood(int v) const;
  const VertexSet& closed_neighborhood(int v) const;
  const VertexSet& detection_region(int v, DetectionKind kind) const;

  const std::optional<KingTorusShape>& torus() const { return torus_; }
  int cell_index(int r, int c) const;            // torus graphs only
  std::pair<int, int> cell_coords(int v) const;  // torus graphs only

  void check_vertex(int v) const;

 private:
  Graph() = default;
  void add_edge(int u, int v);
  void finish();

  int n_ = 0;
  std::vector<VertexSet> open_;
  std::vector<VertexSet> closed_;
  std::optional<KingTorusShape> torus_;
};

// neighbors(g, v, kind): N(v) or N[v].
inline const VertexSet& neighbors(const Graph& g, int v, DetectionKind kind) {
  return g.detection_region(v, kind);
}

}  // namespace locdom
