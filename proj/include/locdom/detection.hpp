#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "locdom/graph.hpp"
#include "locdom/rational.hpp"
#include "locdom/vertex_set.hpp"

namespace locdom {

// A detector placement on a graph. Pure data; the graph must outlive it.
struct DetectorSet {
  const Graph* graph;
  DetectionKind kind;
  VertexSet members;

  DetectorSet(const Graph& g, DetectionKind k)
      : graph(&g), kind(k), members(g.vertex_count()) {}
  DetectorSet(const Graph& g, DetectionKind k, const std::vector<int>& vertices);

  int size() const { return members.count(); }
};

// Locating code of v: the detectors whose region covers v. Because both
// region kinds here are uniform and symmetric this is region(v) ∩ S.
VertexSet locating_code(const DetectorSet& ds, int v);

// |locating_code(ds, v)| without materializing the set.
int dom_count(const DetectorSet& ds, int v);

struct PairWitness {
  int u = -1;
  int v = -1;
  VertexSet code_u;
  VertexSet code_v;
  int diff_size = 0;
};

struct DistinguishResult {
  bool ok = false;
  std::optional<PairWitness> witness;  // first violating pair in lex order
};

// Every distinct pair u,v must have |code(u) △ code(v)| >= k.
DistinguishResult is_k_distinguishing(const DetectorSet& ds, int k);

struct Verdict {
  enum class Status { Valid, UnderDominated, Indistinguishable };
  Status status = Status::Valid;
  int required = 0;
  // UnderDominated
  int vertex = -1;
  int dom = 0;
  // Indistinguishable
  int pair_u = -1;
  int pair_v = -1;
  int diff = 0;

  bool valid() const { return status == Status::Valid; }
  std::string describe() const;
};

// S is a k-redundant detection system iff every vertex is at least
// (k+1)-dominated and every pair is (k+1)-distinguished. Returns the
// lexicographically least witness on failure (all vertices scanned before
// any pair).
Verdict verify(const DetectorSet& ds, int redundancy);

// Literal definition of k-redundancy: delete every subset D of S with
// |D| <= redundancy and re-verify at redundancy 0. Exists as an oracle for
// verify(); throws BudgetError when the subset count exceeds the budget.
Verdict verify_by_deletion(const DetectorSet& ds, int redundancy,
                           std::uint64_t budget = 1'000'000);

// Total share of detector x: sum of 1/dom(u) over u in region(x).
// Throws UndefinedShareError if some covered vertex has dom 0, and
// InvalidVertexError-style errors for x outside S.
Rational share(const DetectorSet& ds, int x);

// Share restricted to a subset A of region(x).
Rational partial_share(const DetectorSet& ds, int x, const VertexSet& a);

// Mean share over all detectors; reciprocal of detector density when the
// set dominates every vertex.
Rational average_share(const DetectorSet& ds);

}  // namespace locdom
