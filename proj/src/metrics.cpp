#include "lpflat/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace lpflat {

NormParam NormParam::parse(std::string_view text) {
  std::string lower;
  for (char c : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "inf" || lower == "infinity" || lower == "linf") return infinity();
  int p = 0;
  auto [ptr, ec] = std::from_chars(lower.data(), lower.data() + lower.size(), p);
  if (ec != std::errc() || ptr != lower.data() + lower.size())
    throw Error(ErrorKind::ConfigError, "cannot parse norm '" + std::string(text) + "' (expected an integer >= 1 or inf)");
  return finite(p);
}

double lp_distance(std::span<const double> x, std::span<const double> y, NormParam p) {
  const double v = lp_p_distance<double>(x, y, p);
  return from_power_units(v, p);
}

double to_power_units(double length, NormParam p) {
  if (p.is_infinite() || p.p() == 1) return length;
  if (p.p() == 2) return length * length;
  return std::pow(length, p.p());
}

double from_power_units(double value, NormParam p) {
  if (p.is_infinite() || p.p() == 1) return value;
  if (p.p() == 2) return std::sqrt(value);
  return std::pow(value, 1.0 / p.p());
}

Linkage::Linkage(Graph g, std::vector<double> l) : graph(std::move(g)), lengths(std::move(l)) {
  if (lengths.size() != graph.edges().size())
    throw Error(ErrorKind::InvalidLinkage, "linkage needs one length per edge: " + std::to_string(graph.num_edges()) +
                                               " edges, " + std::to_string(lengths.size()) + " lengths");
  for (std::size_t k = 0; k < lengths.size(); ++k) {
    if (!(lengths[k] >= 0.0) || !std::isfinite(lengths[k]))
      throw Error(ErrorKind::InvalidLinkage, "edge (" + std::to_string(graph.edges()[k].u) + ", " +
                                                 std::to_string(graph.edges()[k].v) + ") has invalid length");
  }
}

double Linkage::length(int u, int v) const {
  const int k = graph.edge_index(u, v);
  if (k < 0)
    throw Error(ErrorKind::MissingEdge, "linkage has no edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
  return lengths[k];
}

Linkage Linkage::with_edge(int u, int v, double len) const {
  Graph g = graph.with_edge(u, v);
  std::vector<double> l(g.num_edges());
  for (std::size_t k = 0; k < graph.edges().size(); ++k) l[g.edge_index(graph.edges()[k].u, graph.edges()[k].v)] = lengths[k];
  l[g.edge_index(u, v)] = len;
  return Linkage(std::move(g), std::move(l));
}

Linkage Linkage::scaled(double factor) const {
  auto l = lengths;
  for (double& x : l) x *= factor;
  return Linkage(graph, std::move(l));
}

Framework::Framework(Graph g, Configuration pts, NormParam p) : graph(std::move(g)), points(std::move(pts)), norm(p) {
  if (static_cast<int>(points.size()) != graph.n())
    throw Error(ErrorKind::SizeMismatch, "framework has " + std::to_string(points.size()) + " points for " +
                                             std::to_string(graph.n()) + " vertices");
  dim = points.empty() ? 0 : static_cast<int>(points.front().size());
  for (const auto& q : points) detail::check_same_dim(q.size(), static_cast<std::size_t>(dim));
}

Configuration to_double(const RationalConfiguration& points) {
  Configuration out;
  out.reserve(points.size());
  for (const auto& q : points) {
    Point p;
    for (const auto& c : q) p.push_back(to_double(c));
    out.push_back(std::move(p));
  }
  return out;
}

RationalConfiguration to_rational(const Configuration& points) {
  RationalConfiguration out;
  out.reserve(points.size());
  for (const auto& q : points) {
    BasicPoint<Rational> p;
    for (double c : q) p.emplace_back(c);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace lpflat
