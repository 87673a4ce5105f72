#include "locdom/graph.hpp"

#include <string>

#include "locdom/errors.hpp"

namespace locdom {

const char* to_string(DetectionKind kind) {
  return kind == DetectionKind::Open ? "open" : "closed";
}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= n_) {
    throw InvalidVertexError("vertex " + std::to_string(v) + " out of range [0, " +
                             std::to_string(n_) + ")");
  }
}

void Graph::add_edge(int u, int v) {
  open_[u].add(v);
  open_[v].add(u);
}

void Graph::finish() {
  closed_.clear();
  closed_.reserve(n_);
  for (int v = 0; v < n_; ++v) {
    VertexSet c = open_[v];
    c.add(v);
    closed_.push_back(std::move(c));
  }
}

Graph Graph::from_edge_list(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 0) throw FormatError("negative vertex count");
  Graph g;
  g.n_ = n;
  g.open_.assign(n, VertexSet(n));
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw FormatError("edge endpoint out of range: (" + std::to_string(u) + ", " +
                        std::to_string(v) + ")");
    }
    if (u == v) throw FormatError("self-loop at vertex " + std::to_string(u));
    g.add_edge(u, v);
  }
  g.finish();
  return g;
}

Graph Graph::king_torus(int rows, int cols) {
  if (rows < 3 || cols < 3) {
    throw DimensionError("king torus needs rows, cols >= 3, got " + std::to_string(rows) +
                         "x" + std::to_string(cols));
  }
  Graph g;
  g.n_ = rows * cols;
  g.open_.assign(g.n_, VertexSet(g.n_));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      int v = r * cols + c;
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          if (dr == 0 && dc == 0) continue;
          int nr = (r + dr + rows) % rows;
          int nc = (c + dc + cols) % cols;
          int u = nr * cols + nc;
          if (u == v) continue;  // collapsed wrap target
          g.open_[v].add(u);
        }
      }
    }
  }
  g.finish();
  g.torus_ = KingTorusShape{rows, cols, rows >= 5 && cols >= 5};
  return g;
}

long long Graph::edge_count() const {
  long long twice = 0;
  for (int v = 0; v < n_; ++v) twice += open_[v].count();
  return twice / 2;
}

int Graph::degree(int v) const {
  check_vertex(v);
  return open_[v].count();
}

bool Graph::adjacent(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  return open_[u].contains(v);
}

const VertexSet& Graph::open_neighborhood(int v) const {
  check_vertex(v);
  return open_[v];
}

const VertexSet& Graph::closed_neighborhood(int v) const {
  check_vertex(v);
  return closed_[v];
}

const VertexSet& Graph::detection_region(int v, DetectionKind kind) const {
  check_vertex(v);
  return kind == DetectionKind::Open ? open_[v] : closed_[v];
}

int Graph::cell_index(int r, int c) const {
  if (!torus_) throw Error("cell_index on a non-grid graph");
  int rows = torus_->rows;
  int cols = torus_->cols;
  int rr = ((r % rows) + rows) % rows;
  int cc = ((c % cols) + cols) % cols;
  return rr * cols + cc;
}

std::pair<int, int> Graph::cell_coords(int v) const {
  if (!torus_) throw Error("cell_coords on a non-grid graph");
  check_vertex(v);
  return {v / torus_->cols, v % torus_->cols};
}

}  // namespace locdom
