#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lpflat/cayley.hpp"
#include "lpflat/cone.hpp"
#include "lpflat/flatten.hpp"
#include "lpflat/graph.hpp"
#include "lpflat/metrics.hpp"
#include "lpflat/minor.hpp"
#include "lpflat/realize.hpp"
#include "lpflat/rigidity.hpp"

namespace lpflat::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// A graph whose edges may carry lengths.
struct ParsedGraph {
  Graph graph;
  /// Aligned with graph.edges().
  std::vector<std::optional<double>> lengths;

  /// Throws ParseError when some edge has no length.
  Linkage linkage() const;
};

/// Text format: `v <n>`, then `e <u> <w> [<length>]` per edge; `#` starts a
/// comment. Errors are ParseError with the offending line number.
ParsedGraph parse_graph_text(const std::string& text);

/// JSON format: {"n": 5, "edges": [[0, 1, 1.0], [0, 2], ...]}.
ParsedGraph parse_graph_json(const std::string& text);

enum class InputFormat { Text, Json };

std::string read_file(const std::string& path);
ParsedGraph load_graph(const std::string& path, InputFormat format);

std::string graph_to_text(const Graph& g, const std::vector<double>* lengths = nullptr);

Json to_json(const Edge& e);
Json to_json(const Configuration& pts);
Json to_json(const RationalConfiguration& pts);
Json to_json(const MinorWitness& w);
Json to_json(const RealizeResult& r);
Json to_json(const IntervalUnion& u);
Json to_json(const CayleyScanReport& r);
Json to_json(const CayleyMultiReport& r);
Json to_json(const RankReport& r);
Json to_json(const ConeMembershipReport& r);
Json to_json(const FlattenVerdict& v);
Json to_json(const ResidualReport& r);

/// One line per probe: `value,status` (grid first, then refinements).
std::string scan_to_csv(const CayleyScanReport& r);

/// Witness points from a realize report ({"framework": {"points": ...}}),
/// a bare {"points": ...} object, or text lines `p <v> <x1> ... <xd>`.
/// Exact coordinates ("exact_points", strings like "3/2") win when present.
RationalConfiguration parse_witness(const std::string& text, int n);

/// Adds {"schema": 1, "command": ...} in front of the body.
Json envelope(const std::string& command, const Json& body);

}  // namespace lpflat::io
