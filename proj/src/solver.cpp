#include "locdom/solver.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "locdom/errors.hpp"

namespace locdom {

namespace {

void validate_request(const SolveRequest& req) {
  if (!req.graph) throw Error("solve request without a graph");
  if (req.redundancy < 0 || req.redundancy > 2) {
    throw Error("solver supports redundancy 0, 1 or 2");
  }
  if (req.mode == SolveMode::Decision && req.decision_size < 0) {
    throw Error("decision mode needs a target size");
  }
}

// Two vertices with identical detection regions can never be distinguished
// by any detector set.
std::optional<std::pair<int, int>> find_twins(const Graph& g, DetectionKind kind) {
  int n = g.vertex_count();
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (g.detection_region(u, kind) == g.detection_region(v, kind)) return {{u, v}};
    }
  }
  return std::nullopt;
}

SolveResult infeasible_result(const Graph& g, DetectionKind kind) {
  SolveResult res;
  res.status = SolveResult::Status::Infeasible;
  if (auto twins = find_twins(g, kind)) {
    res.twin_u = twins->first;
    res.twin_v = twins->second;
    res.reason = "vertices " + std::to_string(twins->first) + " and " +
                 std::to_string(twins->second) + " have identical detection regions";
  } else {
    res.reason = "even the full vertex set fails verification";
  }
  return res;
}

// Size floor: counting (every vertex needs redundancy+1 coverers, each
// detector covers at most max-region-size vertices) plus the optional
// certified share bound on faithful king tori.
int lower_bound_size(const SolveRequest& req) {
  const Graph& g = *req.graph;
  int n = g.vertex_count();
  if (n == 0) return 0;
  int need = req.redundancy + 1;
  int max_region = 0;
  for (int v = 0; v < n; ++v) {
    max_region = std::max(max_region,
                          g.detection_region(v, req.kind).count());
  }
  if (max_region == 0) return n + 1;  // nothing can ever be dominated
  long long total = static_cast<long long>(n) * need;
  int bound = static_cast<int>((total + max_region - 1) / max_region);
  if (req.share_bound && req.redundancy == 1 && g.torus() && g.torus()->faithful) {
    // average share <= B forces |S| >= n / B
    Rational b = *req.share_bound;
    long long floor_size = (n * b.den() + b.num() - 1) / b.num();
    bound = std::max(bound, static_cast<int>(floor_size));
  }
  return bound;
}

}  // namespace

SolveResult brute_force_min(const SolveRequest& req) {
  validate_request(req);
  const Graph& g = *req.graph;
  const int n = g.vertex_count();
  if (n > 20) {
    throw BudgetError("brute force is limited to 20 vertices, got " + std::to_string(n));
  }

  // Superset monotonicity: if the full vertex set fails, everything fails.
  {
    DetectorSet full(g, req.kind);
    for (int v = 0; v < n; ++v) full.members.add(v);
    if (!verify(full, req.redundancy).valid()) return infeasible_result(g, req.kind);
  }

  auto try_size = [&](int size, bool collect_all, std::vector<VertexSet>* all)
      -> std::optional<VertexSet> {
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    std::optional<VertexSet> first;
    if (size > n) return first;
    while (true) {
      DetectorSet ds(g, req.kind);
      for (int i : idx) ds.members.add(i);
      if (verify(ds, req.redundancy).valid()) {
        if (!first) first = ds.members;
        if (!collect_all) return first;
        all->push_back(ds.members);
      }
      int i = size - 1;
      while (i >= 0 && idx[i] == n - size + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
    return first;
  };

  SolveResult res;
  if (req.mode == SolveMode::Decision) {
    int size = std::min(req.decision_size, n);
    auto witness = try_size(size, false, nullptr);
    if (!witness) {
      res.status = SolveResult::Status::Infeasible;
      res.reason = "no valid set of size " + std::to_string(req.decision_size);
      return res;
    }
    res.status = SolveResult::Status::Feasible;
    res.size = witness->count();
    res.witness = *witness;
    return res;
  }

  for (int size = 0; size <= n; ++size) {
    bool collect = req.mode == SolveMode::FindAllMin;
    std::vector<VertexSet> all;
    auto witness = try_size(size, collect, &all);
    if (witness) {
      res.status = SolveResult::Status::Optimal;
      res.size = size;
      res.witness = *witness;
      res.all_min = std::move(all);
      return res;
    }
  }
  return infeasible_result(g, req.kind);  // unreachable: full set was valid
}

// ---------------------------------------------------------------------------
// Branch and bound.

namespace {

struct BnB {
  const Graph& g;
  DetectionKind kind;
  int need;
  int n;
  int target = 0;
  // Pairs whose regions overlap; for disjoint regions the code difference is
  // dom(u) + dom(v) >= 2*need, implied by the domination checks, so only
  // these pairs ever constrain anything.
  struct Pair {
    VertexSet diff;  // region(u) △ region(v)
  };
  std::vector<Pair> pairs;
  VertexSet in;
  VertexSet out;
  VertexSet undecided;
  int in_count = 0;
  int max_region = 1;

  BnB(const Graph& graph, DetectionKind k, int redundancy)
      : g(graph), kind(k), need(redundancy + 1), n(graph.vertex_count()),
        in(graph.vertex_count()), out(graph.vertex_count()),
        undecided(graph.vertex_count()) {
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        const VertexSet& ru = g.detection_region(u, kind);
        const VertexSet& rv = g.detection_region(v, kind);
        if (VertexSet::intersection_count(ru, rv) == 0) continue;
        pairs.push_back({ru ^ rv});
      }
    }
    for (int v = 0; v < n; ++v) {
      undecided.add(v);
      max_region = std::max(max_region, g.detection_region(v, kind).count());
    }
  }

  bool current_valid() const {
    for (int v = 0; v < n; ++v) {
      if (VertexSet::intersection_count(g.detection_region(v, kind), in) < need) return false;
    }
    for (const Pair& p : pairs) {
      if (VertexSet::intersection_count(p.diff, in) < need) return false;
    }
    return true;
  }

  // Potentials treat every undecided vertex as a possible detector; any
  // deficit that cannot be repaired even then kills the branch, as does a
  // total deficit larger than the remaining budget can cover.
  bool prunable() const {
    long long total_deficit = 0;
    for (int v = 0; v < n; ++v) {
      const VertexSet& region = g.detection_region(v, kind);
      int assured = VertexSet::intersection_count(region, in);
      if (assured < need) {
        if (assured + VertexSet::intersection_count(region, undecided) < need) return true;
        total_deficit += need - assured;
      }
    }
    if (total_deficit > static_cast<long long>(target - in_count) * max_region) return true;
    for (const Pair& p : pairs) {
      int assured = VertexSet::intersection_count(p.diff, in);
      if (assured < need &&
          assured + VertexSet::intersection_count(p.diff, undecided) < need) {
        return true;
      }
    }
    return false;
  }

  // Most-constraining undecided vertex: helps the most deficient vertices
  // and pairs; ties broken by index.
  int pick_branch_vertex() const {
    std::vector<int> score(n, 0);
    for (int v = 0; v < n; ++v) {
      const VertexSet& region = g.detection_region(v, kind);
      if (VertexSet::intersection_count(region, in) < need) {
        (region & undecided).for_each([&](int w) { ++score[w]; });
      }
    }
    for (const Pair& p : pairs) {
      if (VertexSet::intersection_count(p.diff, in) < need) {
        (p.diff & undecided).for_each([&](int w) { ++score[w]; });
      }
    }
    int best = -1;
    int best_score = 0;
    for (int w = 0; w < n; ++w) {
      if (undecided.contains(w) && score[w] > best_score) {
        best = w;
        best_score = score[w];
      }
    }
    return best;
  }

  bool decide(std::optional<VertexSet>& witness) {
    if (current_valid()) {
      witness = in;
      return true;
    }
    if (in_count >= target) return false;
    if (prunable()) return false;
    int v = pick_branch_vertex();
    if (v < 0) return false;  // deficiencies remain but nothing can help

    undecided.remove(v);
    in.add(v);
    ++in_count;
    if (decide(witness)) {
      --in_count;
      in.remove(v);
      undecided.add(v);
      return true;
    }
    --in_count;
    in.remove(v);

    out.add(v);
    bool found = decide(witness);
    out.remove(v);
    undecided.add(v);
    return found;
  }

  // King tori are vertex-transitive: any nonempty valid set has a translate
  // through vertex 0, so decision searches may fix vertex 0 as a detector.
  bool decide_pinned(std::optional<VertexSet>& witness) {
    undecided.remove(0);
    in.add(0);
    ++in_count;
    bool found = decide(witness);
    --in_count;
    in.remove(0);
    undecided.add(0);
    return found;
  }

  // Every valid set of size exactly `target`, enumerated in index order.
  void enumerate_all(int next, std::vector<VertexSet>& out_sets) {
    if (in_count == target) {
      if (current_valid()) out_sets.push_back(in);
      return;
    }
    if (next >= n) return;
    if (n - next < target - in_count) return;
    if (prunable()) return;
    undecided.remove(next);
    in.add(next);
    ++in_count;
    enumerate_all(next + 1, out_sets);
    --in_count;
    in.remove(next);
    out.add(next);
    enumerate_all(next + 1, out_sets);
    out.remove(next);
    undecided.add(next);
  }
};

}  // namespace

SolveResult branch_and_bound_min(const SolveRequest& req) {
  validate_request(req);
  const Graph& g = *req.graph;
  const int n = g.vertex_count();
  if (n > req.vertex_budget) {
    throw BudgetError("branch and bound budget is " + std::to_string(req.vertex_budget) +
                      " vertices, got " + std::to_string(n));
  }

  if (find_twins(g, req.kind) && n >= 2) return infeasible_result(g, req.kind);
  {
    DetectorSet full(g, req.kind);
    for (int v = 0; v < n; ++v) full.members.add(v);
    if (!verify(full, req.redundancy).valid()) return infeasible_result(g, req.kind);
  }

  SolveResult res;
  BnB bnb(g, req.kind, req.redundancy);
  const bool transitive = g.torus().has_value();
  auto run_decision = [&](int target, std::optional<VertexSet>& witness) {
    bnb.target = target;
    if (transitive && target >= 1 && n >= 1) return bnb.decide_pinned(witness);
    return bnb.decide(witness);
  };

  if (req.mode == SolveMode::Decision) {
    std::optional<VertexSet> witness;
    if (run_decision(std::min(req.decision_size, n), witness)) {
      res.status = SolveResult::Status::Feasible;
      res.size = witness->count();
      res.witness = *witness;
    } else {
      res.status = SolveResult::Status::Infeasible;
      res.reason = "no valid set of size " + std::to_string(req.decision_size);
    }
    return res;
  }

  int lo = lower_bound_size(req);
  for (int size = lo; size <= n; ++size) {
    std::optional<VertexSet> witness;
    if (run_decision(size, witness)) {
      res.status = SolveResult::Status::Optimal;
      res.size = witness->count();
      res.witness = *witness;
      if (req.mode == SolveMode::FindAllMin) {
        bnb.target = res.size;
        bnb.enumerate_all(0, res.all_min);
      }
      return res;
    }
  }
  return infeasible_result(g, req.kind);  // unreachable: full set was valid
}

// ---------------------------------------------------------------------------
// DIMACS export.

namespace {

// at-least-k over a set of variables: every (m-k+1)-subset must contain a
// true literal.
void emit_at_least(const std::vector<int>& vars, int k, std::vector<std::vector<int>>& clauses) {
  int m = static_cast<int>(vars.size());
  if (k <= 0) return;
  if (m < k) {
    clauses.push_back({});  // unsatisfiable
    return;
  }
  int pick = m - k + 1;
  std::vector<int> idx(pick);
  for (int i = 0; i < pick; ++i) idx[i] = i;
  while (true) {
    std::vector<int> clause;
    clause.reserve(pick);
    for (int i : idx) clause.push_back(vars[i]);
    clauses.push_back(std::move(clause));
    int i = pick - 1;
    while (i >= 0 && idx[i] == m - pick + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < pick; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

void export_dimacs_cnf(const SolveRequest& req, std::ostream& os) {
  validate_request(req);
  const Graph& g = *req.graph;
  const int n = g.vertex_count();
  const int need = req.redundancy + 1;

  std::vector<std::vector<int>> clauses;
  for (int v = 0; v < n; ++v) {
    std::vector<int> vars;
    g.detection_region(v, req.kind).for_each([&](int u) { vars.push_back(u + 1); });
    emit_at_least(vars, need, clauses);
  }
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      VertexSet diff = g.detection_region(u, req.kind) ^ g.detection_region(v, req.kind);
      std::vector<int> vars;
      diff.for_each([&](int w) { vars.push_back(w + 1); });
      emit_at_least(vars, need, clauses);
    }
  }

  int total_vars = n;
  if (req.mode == SolveMode::Decision) {
    // Sequential counter for sum(x) <= decision_size.
    int k = req.decision_size;
    if (k < n) {
      if (k == 0) {
        for (int v = 1; v <= n; ++v) clauses.push_back({-v});
      } else {
        auto reg = [&](int i, int j) { return n + (i - 1) * k + j; };  // i in 1..n-1, j in 1..k
        total_vars = n + (n - 1) * k;
        clauses.push_back({-1, reg(1, 1)});
        for (int j = 2; j <= k; ++j) clauses.push_back({-reg(1, j)});
        for (int i = 2; i < n; ++i) {
          clauses.push_back({-i, reg(i, 1)});
          clauses.push_back({-reg(i - 1, 1), reg(i, 1)});
          for (int j = 2; j <= k; ++j) {
            clauses.push_back({-i, -reg(i - 1, j - 1), reg(i, j)});
            clauses.push_back({-reg(i - 1, j), reg(i, j)});
          }
          clauses.push_back({-i, -reg(i - 1, k)});
        }
        if (n >= 2) clauses.push_back({-n, -reg(n - 1, k)});
      }
    }
  }

  os << "c detection-system instance: kind=" << to_string(req.kind)
     << " redundancy=" << req.redundancy;
  if (req.mode == SolveMode::Decision) os << " size<=" << req.decision_size;
  os << "\n";
  os << "c vars 1.." << n << " = vertex in detector set\n";
  os << "p cnf " << total_vars << " " << clauses.size() << "\n";
  for (const auto& clause : clauses) {
    for (int lit : clause) os << lit << " ";
    os << "0\n";
  }
}

}  // namespace locdom
