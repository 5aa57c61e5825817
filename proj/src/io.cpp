#include "lpflat/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace lpflat::io {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what);
}

std::string rational_string(const Rational& r) { return r.str(); }

/// Exact value of a decimal ("-1.25e-3"), integer or fraction ("3/2") token.
std::optional<Rational> parse_exact_number(const std::string& tok) {
  if (tok.empty()) return std::nullopt;
  if (const auto slash = tok.find('/'); slash != std::string::npos) {
    auto num = parse_exact_number(tok.substr(0, slash));
    auto den = parse_exact_number(tok.substr(slash + 1));
    if (!num || !den || den->is_zero()) return std::nullopt;
    return *num / *den;
  }
  std::size_t i = 0;
  bool negative = false;
  if (tok[i] == '+' || tok[i] == '-') negative = tok[i++] == '-';
  std::string digits;
  int scale = 0;
  bool seen_digit = false, seen_dot = false;
  for (; i < tok.size() && tok[i] != 'e' && tok[i] != 'E'; ++i) {
    if (tok[i] == '.') {
      if (seen_dot) return std::nullopt;
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(tok[i]))) {
      digits.push_back(tok[i]);
      seen_digit = true;
      if (seen_dot) --scale;
    } else {
      return std::nullopt;
    }
  }
  if (!seen_digit) return std::nullopt;
  if (i < tok.size()) {
    const std::string exp = tok.substr(i + 1);
    if (exp.empty()) return std::nullopt;
    std::size_t used = 0;
    int e = 0;
    try {
      e = std::stoi(exp, &used);
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (used != exp.size()) return std::nullopt;
    scale += e;
  }
  // GMP reads a leading 0 as an octal prefix.
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  Rational value{boost::multiprecision::mpz_int(digits)};
  const Rational shift{boost::multiprecision::pow(boost::multiprecision::mpz_int(10), std::abs(scale))};
  if (scale > 0) value *= shift;
  if (scale < 0) value /= shift;
  return negative ? Rational(-value) : value;
}

double parse_double(const std::string& tok, int line, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    parse_fail(line, std::string("expected ") + what + ", got '" + tok + "'");
  }
  if (used != tok.size()) parse_fail(line, std::string("expected ") + what + ", got '" + tok + "'");
  return v;
}

int parse_int(const std::string& tok, int line, const char* what) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(tok, &used);
  } catch (const std::exception&) {
    parse_fail(line, std::string("expected ") + what + ", got '" + tok + "'");
  }
  if (used != tok.size()) parse_fail(line, std::string("expected ") + what + ", got '" + tok + "'");
  return static_cast<int>(v);
}

std::vector<std::string> tokens_of(const std::string& raw) {
  std::string line = raw.substr(0, raw.find('#'));
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

ParsedGraph assemble(int n, std::vector<std::pair<Edge, std::optional<double>>> items, const std::vector<int>& lines) {
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < items.size(); ++k) {
    const Edge& e = items[k].first;
    if (e.u == e.v) parse_fail(lines[k], "self-loop at vertex " + std::to_string(e.u));
    if (e.u < 0 || e.v >= n)
      parse_fail(lines[k], "edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ") outside 0.." +
                               std::to_string(n - 1));
    for (std::size_t j = 0; j < k; ++j)
      if (items[j].first == e)
        parse_fail(lines[k], "duplicate edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ")");
    if (items[k].second && !(*items[k].second >= 0.0 && std::isfinite(*items[k].second)))
      parse_fail(lines[k], "edge length must be finite and nonnegative");
    edges.push_back(e);
  }
  ParsedGraph out;
  out.graph = Graph(n, edges);
  out.lengths.resize(items.size());
  for (const auto& [e, len] : items) out.lengths[out.graph.edge_index(e.u, e.v)] = len;
  return out;
}

}  // namespace

Linkage ParsedGraph::linkage() const {
  std::vector<double> l;
  for (std::size_t k = 0; k < lengths.size(); ++k) {
    if (!lengths[k]) {
      const Edge& e = graph.edges()[k];
      throw Error(ErrorKind::ParseError,
                  "edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ") has no length; a linkage needs one");
    }
    l.push_back(*lengths[k]);
  }
  return Linkage(graph, std::move(l));
}

ParsedGraph parse_graph_text(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  int n = -1;
  std::vector<std::pair<Edge, std::optional<double>>> items;
  std::vector<int> lines;
  while (std::getline(in, raw)) {
    ++line;
    const auto tok = tokens_of(raw);
    if (tok.empty()) continue;
    if (tok[0] == "v") {
      if (n >= 0) parse_fail(line, "vertex count given twice");
      if (tok.size() != 2) parse_fail(line, "expected 'v <n>'");
      n = parse_int(tok[1], line, "a vertex count");
      if (n < 0) parse_fail(line, "vertex count must be nonnegative");
    } else if (tok[0] == "e") {
      if (n < 0) parse_fail(line, "edge before the 'v <n>' line");
      if (tok.size() != 3 && tok.size() != 4) parse_fail(line, "expected 'e <u> <w> [<length>]'");
      const int u = parse_int(tok[1], line, "a vertex id");
      const int w = parse_int(tok[2], line, "a vertex id");
      std::optional<double> len;
      if (tok.size() == 4) len = parse_double(tok[3], line, "an edge length");
      if (u == w) parse_fail(line, "self-loop at vertex " + std::to_string(u));
      items.emplace_back(Edge(u, w), len);
      lines.push_back(line);
    } else {
      parse_fail(line, "unknown record '" + tok[0] + "'");
    }
  }
  if (n < 0) parse_fail(line + 1, "missing 'v <n>' line");
  return assemble(n, std::move(items), lines);
}

ParsedGraph parse_graph_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
    throw Error(ErrorKind::ParseError, "JSON graph needs an integer field \"n\"");
  const int n = j["n"].get<int>();
  if (n < 0) throw Error(ErrorKind::ParseError, "vertex count must be nonnegative");
  std::vector<std::pair<Edge, std::optional<double>>> items;
  std::vector<int> lines;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw Error(ErrorKind::ParseError, "\"edges\" must be an array");
    int idx = 0;
    for (const auto& e : j["edges"]) {
      ++idx;
      if (!e.is_array() || (e.size() != 2 && e.size() != 3) || !e[0].is_number_integer() || !e[1].is_number_integer())
        throw Error(ErrorKind::ParseError, "edge " + std::to_string(idx) + ": expected [u, w] or [u, w, length]");
      std::optional<double> len;
      if (e.size() == 3) {
        if (!e[2].is_number())
          throw Error(ErrorKind::ParseError, "edge " + std::to_string(idx) + ": length must be a number");
        len = e[2].get<double>();
      }
      const int u = e[0].get<int>(), w = e[1].get<int>();
      if (u == w) throw Error(ErrorKind::ParseError, "edge " + std::to_string(idx) + ": self-loop");
      items.emplace_back(Edge(u, w), len);
      lines.push_back(idx);
    }
  }
  return assemble(n, std::move(items), lines);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ParsedGraph load_graph(const std::string& path, InputFormat format) {
  const std::string text = read_file(path);
  return format == InputFormat::Json ? parse_graph_json(text) : parse_graph_text(text);
}

std::string graph_to_text(const Graph& g, const std::vector<double>* lengths) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "v " << g.n() << "\n";
  for (std::size_t k = 0; k < g.edges().size(); ++k) {
    out << "e " << g.edges()[k].u << " " << g.edges()[k].v;
    if (lengths) out << " " << (*lengths)[k];
    out << "\n";
  }
  return out.str();
}

Json to_json(const Edge& e) { return Json::array({e.u, e.v}); }

Json to_json(const Configuration& pts) {
  Json out = Json::array();
  for (const auto& q : pts) out.push_back(q);
  return out;
}

Json to_json(const RationalConfiguration& pts) {
  Json out = Json::array();
  for (const auto& q : pts) {
    Json row = Json::array();
    for (const auto& c : q) row.push_back(rational_string(c));
    out.push_back(row);
  }
  return out;
}

Json to_json(const MinorWitness& w) {
  Json out;
  out["branch_sets"] = w.branch_sets;
  Json edges = Json::array();
  for (const Edge& e : w.edge_map) edges.push_back(to_json(e));
  out["edge_map"] = edges;
  return out;
}

Json to_json(const RealizeResult& r) {
  Json out;
  out["status"] = std::string(to_string(r.status));
  out["exact_mode"] = r.exact_mode;
  out["residual"] = r.residual;
  out["cases_explored"] = r.cases_explored;
  out["restarts_used"] = r.restarts_used;
  if (r.framework) {
    Json f;
    f["dim"] = r.framework->dim;
    f["norm"] = r.framework->norm.to_string();
    f["points"] = to_json(r.framework->points);
    out["framework"] = f;
  } else {
    out["framework"] = nullptr;
  }
  if (r.exact_points) out["exact_points"] = to_json(*r.exact_points);
  return out;
}

Json to_json(const IntervalUnion& u) {
  Json out = Json::array();
  for (const auto& iv : u.intervals()) out.push_back(Json::array({iv.lo, iv.hi}));
  return out;
}

Json to_json(const CayleyScanReport& r) {
  Json out;
  out["nonedge"] = to_json(r.nonedge);
  out["dim"] = r.dim;
  out["norm"] = r.norm.to_string();
  out["upper_bound"] = r.upper_bound;
  out["intervals"] = to_json(r.space);
  out["convex"] = r.convex;
  out["verdict"] = std::string(to_string(r.verdict));
  out["nonconvexity_certified"] = r.nonconvexity_certified;
  out["mode"] = std::string(to_string(r.mode));
  auto probes = [](const std::vector<CayleyProbe>& ps) {
    Json arr = Json::array();
    for (const auto& p : ps) arr.push_back(Json::array({p.value, std::string(to_string(p.status))}));
    return arr;
  };
  out["grid"] = probes(r.grid);
  out["refinements"] = probes(r.refinements);
  return out;
}

Json to_json(const CayleyMultiReport& r) {
  Json out;
  Json f = Json::array();
  for (const Edge& e : r.nonedges) f.push_back(to_json(e));
  out["nonedges"] = f;
  out["verdict"] = std::string(to_string(r.verdict));
  out["cloud"] = r.cloud;
  out["pairs_tested"] = r.pairs_tested;
  if (r.witness_pair) {
    out["witness_pair"] = Json::array({r.witness_pair->first, r.witness_pair->second});
    out["witness_midpoint"] = r.witness_midpoint;
  }
  return out;
}

Json to_json(const RankReport& r) {
  Json out;
  out["rank"] = r.rank;
  out["max_possible"] = r.max_possible;
  out["classification"] = std::string(to_string(r.classification));
  out["samples_used"] = r.samples_used;
  out["stability"] = r.stability;
  return out;
}

Json to_json(const ConeMembershipReport& r) {
  Json out;
  out["member"] = std::string(to_string(r.member));
  if (r.embedding_dim) out["embedding_dim"] = *r.embedding_dim;
  if (!r.reason.empty()) out["reason"] = r.reason;
  if (r.witness) out["witness"] = to_json(*r.witness);
  if (r.exact_witness) out["exact_witness"] = to_json(*r.exact_witness);
  if (!r.cuts.empty()) {
    Json cuts = Json::array();
    for (const auto& c : r.cuts) {
      std::vector<int> side;
      for (int v = 0; v < 32; ++v)
        if (c.mask >> v & 1u) side.push_back(v);
      Json item;
      item["set"] = side;
      item["weight"] = rational_string(c.weight);
      cuts.push_back(item);
    }
    out["cuts"] = cuts;
  }
  return out;
}

Json to_json(const FlattenVerdict& v) {
  Json out;
  out["status"] = std::string(to_string(v.status));
  out["norm"] = v.norm.to_string();
  out["dim"] = v.dim;
  Json cert;
  cert["kind"] = std::string(certificate_name(v.certificate));
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, NoForbiddenMinor> || std::is_same_v<T, ConjectureFrontier>) {
          cert["name"] = c.name;
        } else if constexpr (std::is_same_v<T, ForbiddenMinor>) {
          cert["name"] = c.name;
          cert["witness"] = to_json(c.witness);
        } else if constexpr (std::is_same_v<T, KnownFlattenable>) {
          cert["name"] = c.name;
          cert["witness"] = to_json(c.witness);
        } else if constexpr (std::is_same_v<T, TwoSumDecomposition>) {
          cert["separator"] = c.separator;
          cert["virtual_edge"] = c.virtual_edge;
          Json pieces = Json::array();
          for (const auto& p : c.pieces) {
            Json item;
            item["vertices"] = p.vertices;
            item["has_k4_minor"] = p.has_k4_minor;
            item["verdict"] = to_json(*p.verdict);
            pieces.push_back(item);
          }
          cert["pieces"] = pieces;
        } else if constexpr (std::is_same_v<T, CayleyNonConvexity>) {
          Json edges = Json::array();
          for (const Edge& e : c.subgraph.edges()) edges.push_back(to_json(e));
          cert["subgraph"] = {{"n", c.subgraph.n()}, {"edges", edges}};
          cert["scan"] = to_json(c.report);
        }
      },
      v.certificate);
  out["certificate"] = cert;
  return out;
}

Json to_json(const ResidualReport& r) {
  Json out;
  out["max_error"] = r.max_error;
  out["mean_error"] = r.mean_error;
  out["edges"] = r.edges;
  return out;
}

std::string scan_to_csv(const CayleyScanReport& r) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "value,status\n";
  for (const auto& p : r.grid) out << p.value << "," << to_string(p.status) << "\n";
  for (const auto& p : r.refinements) out << p.value << "," << to_string(p.status) << "\n";
  return out.str();
}

RationalConfiguration parse_witness(const std::string& text, int n) {
  auto check_count = [&](const RationalConfiguration& pts) {
    if (static_cast<int>(pts.size()) != n)
      throw Error(ErrorKind::SizeMismatch,
                  "witness has " + std::to_string(pts.size()) + " points, graph has " + std::to_string(n) + " vertices");
    return pts;
  };
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw Error(ErrorKind::ParseError, std::string("invalid JSON witness: ") + e.what());
    }
    if (j.contains("exact_points") && j["exact_points"].is_array()) {
      RationalConfiguration pts;
      for (const auto& row : j["exact_points"]) {
        BasicPoint<Rational> q;
        for (const auto& c : row) {
          auto v = parse_exact_number(c.is_string() ? c.get<std::string>() : c.dump());
          if (!v) throw Error(ErrorKind::ParseError, "bad exact coordinate " + c.dump());
          q.push_back(*v);
        }
        pts.push_back(std::move(q));
      }
      return check_count(pts);
    }
    const Json* points = nullptr;
    if (j.contains("framework") && j["framework"].is_object() && j["framework"].contains("points"))
      points = &j["framework"]["points"];
    else if (j.contains("points"))
      points = &j["points"];
    if (!points || !points->is_array()) throw Error(ErrorKind::ParseError, "witness JSON has no points");
    Configuration pts;
    for (const auto& row : *points) pts.push_back(row.get<std::vector<double>>());
    return check_count(to_rational(pts));
  }
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  std::vector<std::optional<BasicPoint<Rational>>> slots(n);
  while (std::getline(in, raw)) {
    ++line;
    const auto tok = tokens_of(raw);
    if (tok.empty()) continue;
    if (tok[0] != "p" || tok.size() < 3) parse_fail(line, "expected 'p <v> <x1> ... <xd>'");
    const int v = parse_int(tok[1], line, "a vertex id");
    if (v < 0 || v >= n) parse_fail(line, "vertex " + std::to_string(v) + " out of range");
    if (slots[v]) parse_fail(line, "vertex " + std::to_string(v) + " placed twice");
    BasicPoint<Rational> q;
    for (std::size_t i = 2; i < tok.size(); ++i) {
      auto c = parse_exact_number(tok[i]);
      if (!c) parse_fail(line, "bad coordinate '" + tok[i] + "'");
      q.push_back(*c);
    }
    slots[v] = std::move(q);
  }
  RationalConfiguration pts;
  for (int v = 0; v < n; ++v) {
    if (!slots[v]) throw Error(ErrorKind::ParseError, "witness does not place vertex " + std::to_string(v));
    pts.push_back(*slots[v]);
  }
  return pts;
}

Json envelope(const std::string& command, const Json& body) {
  Json out;
  out["schema"] = kSchemaVersion;
  out["command"] = command;
  for (auto it = body.begin(); it != body.end(); ++it) out[it.key()] = it.value();
  return out;
}

}  // namespace lpflat::io
