#pragma once

#include <string>

#include <json.hpp>

#include "locdom/detection.hpp"
#include "locdom/graph.hpp"
#include "locdom/periodic.hpp"

namespace locdom {

// {"n": <int>, "edges": [[u, v], ...]} or {"king_torus": [rows, cols]}
Graph graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const Graph& g);

// {"kind": "open"|"closed", "detectors": [v, ...]}
DetectorSet detector_set_from_json(const nlohmann::json& j, const Graph& g);
nlohmann::json detector_set_to_json(const DetectorSet& ds);

nlohmann::json verdict_to_json(const Verdict& v);
nlohmann::json verdict_to_json(const InfiniteVerdict& v);

DetectionKind kind_from_string(const std::string& text);

// Reads and parses a JSON file, mapping I/O and parse failures to
// FormatError.
nlohmann::json load_json_file(const std::string& path);

}  // namespace locdom
