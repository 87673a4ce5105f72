#include "locdom/json_io.hpp"

#include <fstream>

#include "locdom/errors.hpp"

namespace locdom {

using nlohmann::json;

DetectionKind kind_from_string(const std::string& text) {
  if (text == "open") return DetectionKind::Open;
  if (text == "closed") return DetectionKind::Closed;
  throw FormatError("detection kind must be \"open\" or \"closed\", got \"" + text + "\"");
}

Graph graph_from_json(const json& j) {
  try {
    if (j.contains("king_torus")) {
      const auto& dims = j.at("king_torus");
      if (!dims.is_array() || dims.size() != 2) {
        throw FormatError("\"king_torus\" must be [rows, cols]");
      }
      return Graph::king_torus(dims[0].get<int>(), dims[1].get<int>());
    }
    int n = j.at("n").get<int>();
    std::vector<std::pair<int, int>> edges;
    if (j.contains("edges")) {
      for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw FormatError("edges must be [u, v] pairs");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
      }
    }
    return Graph::from_edge_list(n, edges);
  } catch (const json::exception& ex) {
    throw FormatError(std::string("bad graph JSON: ") + ex.what());
  }
}

json graph_to_json(const Graph& g) {
  if (g.torus()) {
    return json{{"king_torus", {g.torus()->rows, g.torus()->cols}}};
  }
  json edges = json::array();
  for (int u = 0; u < g.vertex_count(); ++u) {
    g.open_neighborhood(u).for_each([&](int v) {
      if (u < v) edges.push_back({u, v});
    });
  }
  return json{{"n", g.vertex_count()}, {"edges", edges}};
}

DetectorSet detector_set_from_json(const json& j, const Graph& g) {
  try {
    DetectionKind kind = kind_from_string(j.at("kind").get<std::string>());
    std::vector<int> detectors;
    for (const auto& v : j.at("detectors")) detectors.push_back(v.get<int>());
    return DetectorSet(g, kind, detectors);
  } catch (const json::exception& ex) {
    throw FormatError(std::string("bad detector set JSON: ") + ex.what());
  } catch (const InvalidVertexError& ex) {
    throw FormatError(std::string("bad detector set: ") + ex.what());
  }
}

json detector_set_to_json(const DetectorSet& ds) {
  return json{{"kind", to_string(ds.kind)}, {"detectors", ds.members.to_vector()}};
}

json verdict_to_json(const Verdict& v) {
  json out;
  out["status"] = v.valid() ? "valid" : "invalid";
  if (v.status == Verdict::Status::UnderDominated) {
    out["reason"] = "under-dominated";
    out["witness"] = {{"vertex", v.vertex}, {"dom", v.dom}, {"required", v.required}};
  } else if (v.status == Verdict::Status::Indistinguishable) {
    out["reason"] = "indistinguishable-pair";
    out["witness"] = {{"pair", {v.pair_u, v.pair_v}},
                      {"difference", v.diff},
                      {"required", v.required}};
  }
  return out;
}

json verdict_to_json(const InfiniteVerdict& v) {
  json out;
  out["status"] = v.valid() ? "valid" : "invalid";
  if (v.status == InfiniteVerdict::Status::UnderDominated) {
    out["reason"] = "under-dominated";
    out["witness"] = {{"cell", {v.vertex.first, v.vertex.second}},
                      {"dom", v.dom},
                      {"required", v.required}};
  } else if (v.status == InfiniteVerdict::Status::Indistinguishable) {
    out["reason"] = "indistinguishable-pair";
    out["witness"] = {{"cells",
                       {{v.pair_a.first, v.pair_a.second}, {v.pair_b.first, v.pair_b.second}}},
                      {"difference", v.diff},
                      {"required", v.required}};
  }
  return out;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& ex) {
    throw FormatError("cannot parse " + path + ": " + ex.what());
  }
}

}  // namespace locdom
