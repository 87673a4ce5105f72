#include "locdom/detection.hpp"

#include <string>

#include "locdom/errors.hpp"

namespace locdom {

DetectorSet::DetectorSet(const Graph& g, DetectionKind k, const std::vector<int>& vertices)
    : graph(&g), kind(k), members(g.vertex_count()) {
  for (int v : vertices) {
    g.check_vertex(v);
    members.add(v);
  }
}

VertexSet locating_code(const DetectorSet& ds, int v) {
  ds.graph->check_vertex(v);
  VertexSet code = ds.graph->detection_region(v, ds.kind);
  code &= ds.members;
  return code;
}

int dom_count(const DetectorSet& ds, int v) {
  ds.graph->check_vertex(v);
  return VertexSet::intersection_count(ds.graph->detection_region(v, ds.kind), ds.members);
}

DistinguishResult is_k_distinguishing(const DetectorSet& ds, int k) {
  const Graph& g = *ds.graph;
  const int n = g.vertex_count();
  for (int u = 0; u < n; ++u) {
    const VertexSet& ru = g.detection_region(u, ds.kind);
    for (int v = u + 1; v < n; ++v) {
      int diff = VertexSet::sym_diff_intersection_count(
          ru, g.detection_region(v, ds.kind), ds.members);
      if (diff < k) {
        PairWitness w;
        w.u = u;
        w.v = v;
        w.code_u = locating_code(ds, u);
        w.code_v = locating_code(ds, v);
        w.diff_size = diff;
        return {false, std::move(w)};
      }
    }
  }
  return {true, std::nullopt};
}

std::string Verdict::describe() const {
  switch (status) {
    case Status::Valid:
      return "valid";
    case Status::UnderDominated:
      return "invalid: vertex " + std::to_string(vertex) + " is " + std::to_string(dom) +
             "-dominated, needs " + std::to_string(required);
    case Status::Indistinguishable:
      return "invalid: pair (" + std::to_string(pair_u) + ", " + std::to_string(pair_v) +
             ") has code difference " + std::to_string(diff) + ", needs " +
             std::to_string(required);
  }
  return "?";
}

Verdict verify(const DetectorSet& ds, int redundancy) {
  const Graph& g = *ds.graph;
  const int n = g.vertex_count();
  const int need = redundancy + 1;
  Verdict out;
  out.required = need;
  for (int v = 0; v < n; ++v) {
    int dom = VertexSet::intersection_count(g.detection_region(v, ds.kind), ds.members);
    if (dom < need) {
      out.status = Verdict::Status::UnderDominated;
      out.vertex = v;
      out.dom = dom;
      return out;
    }
  }
  for (int u = 0; u < n; ++u) {
    const VertexSet& ru = g.detection_region(u, ds.kind);
    for (int v = u + 1; v < n; ++v) {
      int diff = VertexSet::sym_diff_intersection_count(
          ru, g.detection_region(v, ds.kind), ds.members);
      if (diff < need) {
        out.status = Verdict::Status::Indistinguishable;
        out.pair_u = u;
        out.pair_v = v;
        out.diff = diff;
        return out;
      }
    }
  }
  out.status = Verdict::Status::Valid;
  return out;
}

Verdict verify_by_deletion(const DetectorSet& ds, int redundancy, std::uint64_t budget) {
  if (redundancy < 0) throw Error("negative redundancy");

  std::vector<int> detectors = ds.members.to_vector();
  const int s = static_cast<int>(detectors.size());

  // Count the subset-verifications up front.
  std::uint64_t total = 0;
  for (int size = 0; size <= redundancy && size <= s; ++size) {
    std::uint64_t binom = 1;
    for (int i = 0; i < size; ++i) {
      binom = binom * static_cast<std::uint64_t>(s - i) / (i + 1);
      if (binom > budget) break;
    }
    total += binom;
    if (total > budget) {
      throw BudgetError("verify_by_deletion would need " + std::to_string(total) +
                        "+ subset verifications, budget " + std::to_string(budget));
    }
  }

  // Deletion subsets in lexicographic order by increasing size; |D| = 0
  // first, which re-checks S itself as a plain detection system.
  for (int size = 0; size <= redundancy && size <= s; ++size) {
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      DetectorSet reduced = ds;
      for (int i : idx) reduced.members.remove(detectors[i]);
      Verdict v = verify(reduced, 0);
      if (!v.valid()) return v;
      // next combination
      int i = size - 1;
      while (i >= 0 && idx[i] == s - size + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  Verdict ok;
  ok.status = Verdict::Status::Valid;
  ok.required = 1;
  return ok;
}

namespace {

Rational share_over(const DetectorSet& ds, int x, const VertexSet& cells) {
  Rational total(0);
  bool bad = false;
  int bad_vertex = -1;
  cells.for_each([&](int u) {
    if (bad) return;
    int dom = dom_count(ds, u);
    if (dom == 0) {
      bad = true;
      bad_vertex = u;
      return;
    }
    total += Rational(1, dom);
  });
  if (bad) {
    throw UndefinedShareError("share of " + std::to_string(x) + " undefined: vertex " +
                              std::to_string(bad_vertex) + " is 0-dominated");
  }
  return total;
}

}  // namespace

Rational share(const DetectorSet& ds, int x) {
  ds.graph->check_vertex(x);
  if (!ds.members.contains(x)) {
    throw Error("share is only defined for detectors; " + std::to_string(x) +
                " is not in the set");
  }
  return share_over(ds, x, ds.graph->detection_region(x, ds.kind));
}

Rational partial_share(const DetectorSet& ds, int x, const VertexSet& a) {
  ds.graph->check_vertex(x);
  if (!ds.members.contains(x)) {
    throw Error("share is only defined for detectors; " + std::to_string(x) +
                " is not in the set");
  }
  if (!a.is_subset_of(ds.graph->detection_region(x, ds.kind))) {
    throw Error("partial share region is not a subset of the detection region of " +
                std::to_string(x));
  }
  return share_over(ds, x, a);
}

Rational average_share(const DetectorSet& ds) {
  int s = ds.members.count();
  if (s == 0) throw Error("average share of an empty detector set");
  Rational total(0);
  ds.members.for_each([&](int x) { total += share(ds, x); });
  return total / Rational(s);
}

}  // namespace locdom
