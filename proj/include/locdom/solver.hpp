#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "locdom/detection.hpp"
#include "locdom/graph.hpp"
#include "locdom/rational.hpp"

namespace locdom {

enum class SolveMode { ExactMin, FindAllMin, Decision };

struct SolveRequest {
  const Graph* graph = nullptr;
  DetectionKind kind = DetectionKind::Open;
  int redundancy = 0;  // 0, 1 or 2
  SolveMode mode = SolveMode::ExactMin;
  int decision_size = -1;  // Decision mode only

  // Optional certified per-detector share bound; when the graph is a
  // faithful king torus it yields the size floor ceil(n / bound).
  std::optional<Rational> share_bound;

  int vertex_budget = 40;  // branch-and-bound refuses larger graphs
};

struct SolveResult {
  enum class Status { Optimal, Feasible, Infeasible };
  Status status = Status::Infeasible;
  int size = -1;          // minimum size (ExactMin/FindAllMin) or witness size
  VertexSet witness;      // one valid set, when status != Infeasible
  std::vector<VertexSet> all_min;  // FindAllMin only
  std::string reason;     // Infeasible only
  int twin_u = -1;        // twin-vertex pair when that is the cause
  int twin_v = -1;

  bool feasible() const { return status != Status::Infeasible; }
};

// Exact minimum by increasing-size subset enumeration. Hard budget of 20
// vertices. Deterministic: the witness is the lexicographically first
// minimum set.
SolveResult brute_force_min(const SolveRequest& req);

// Exact minimum by depth-first search over in/out vertex decisions with
// domination-deficit, unresolvable-pair and counting prunes. Agrees with
// brute_force_min everywhere both run.
SolveResult branch_and_bound_min(const SolveRequest& req);

// DIMACS CNF encoding of the instance: domination and distinguishing
// cardinality constraints, plus an at-most-k counter when the request is a
// decision. Satisfiable iff the corresponding decision answer is yes.
void export_dimacs_cnf(const SolveRequest& req, std::ostream& out);

}  // namespace locdom
