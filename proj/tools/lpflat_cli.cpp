// lpflat command-line front end. Exit codes:
//   realize  0 FEASIBLE, 1 INFEASIBLE_EXACT, 2 UNKNOWN_NUMERIC
//   flatten  0 YES, 1 NO, 3 UNKNOWN
//   minor    0 found, 1 absent
//   verify   0 within tolerance, 1 not
//   64 usage or parse error, 65 any other library error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lpflat/cayley.hpp"
#include "lpflat/cone.hpp"
#include "lpflat/flatten.hpp"
#include "lpflat/io.hpp"
#include "lpflat/minor.hpp"
#include "lpflat/realize.hpp"
#include "lpflat/rigidity.hpp"

namespace {

using namespace lpflat;
using io::Json;

constexpr int kUsage = 64;
constexpr int kLibrary = 65;

struct RunConfig {
  std::string input;
  std::string norm = "2";
  int dim = 2;
  std::uint64_t seed = 0;
  int grid = 201;
  int restarts = 200;
  double tol = 1e-9;
  std::string out;
  std::string format = "json";
  std::vector<int> nonedge;
  std::string minor = "K4";
  std::string witness;
  std::string csv;
  int samples = 8;
  bool cayley_certificate = false;
  bool dim_given = false;

  void validate() const {
    if (dim < 1) throw Error(ErrorKind::InvalidDimension, "--dim must be >= 1");
    if (grid < 2) throw Error(ErrorKind::ConfigError, "--grid must be >= 2");
    if (restarts < 1) throw Error(ErrorKind::ConfigError, "--restarts must be >= 1");
    if (!(tol > 0)) throw Error(ErrorKind::ConfigError, "--tol must be positive");
    if (samples < 1) throw Error(ErrorKind::ConfigError, "--samples must be >= 1");
  }

  NormParam norm_param() const { return NormParam::parse(norm); }

  RealizeConfig realize_config() const {
    RealizeConfig cfg;
    cfg.seed = seed;
    cfg.restarts = restarts;
    cfg.residual_tol = tol;
    return cfg;
  }
};

io::ParsedGraph load_input(const std::string& path) {
  const std::string text = io::read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return io::parse_graph_json(text);
  return io::parse_graph_text(text);
}

void emit(const RunConfig& rc, const std::string& body) {
  if (rc.out.empty()) {
    std::cout << body;
    if (!body.empty() && body.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(rc.out, std::ios::binary);
  if (!f) throw Error(ErrorKind::ConfigError, "cannot write '" + rc.out + "'");
  f << body;
  if (!body.empty() && body.back() != '\n') f << '\n';
}

void emit_json(const RunConfig& rc, const std::string& command, const Json& body) {
  emit(rc, io::envelope(command, body).dump(2));
}

std::string format_number(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

// ---- subcommands ------------------------------------------------------------

int cmd_realize(const RunConfig& rc) {
  const Linkage l = load_input(rc.input).linkage();
  const NormParam p = rc.norm_param();
  const RealizeResult r = realize(l, rc.dim, p, rc.realize_config());
  if (rc.format == "text") {
    std::ostringstream s;
    s << to_string(r.status) << "\n";
    if (r.framework)
      for (std::size_t v = 0; v < r.framework->points.size(); ++v) {
        s << "p " << v;
        for (double c : r.framework->points[v]) s << " " << format_number(c);
        s << "\n";
      }
    emit(rc, s.str());
  } else {
    emit_json(rc, "realize", io::to_json(r));
  }
  switch (r.status) {
    case RealizeStatus::Feasible: return 0;
    case RealizeStatus::InfeasibleExact: return 1;
    case RealizeStatus::UnknownNumeric: return 2;
  }
  return 2;
}

int cmd_cayley(const RunConfig& rc) {
  const Linkage l = load_input(rc.input).linkage();
  if (rc.nonedge.size() != 2) throw Error(ErrorKind::ConfigError, "--nonedge takes two vertex ids");
  const CayleyScanReport r =
      cayley_scan_1(l, Edge(rc.nonedge[0], rc.nonedge[1]), rc.dim, rc.norm_param(), rc.grid, rc.realize_config());
  if (!rc.csv.empty()) {
    std::ofstream f(rc.csv, std::ios::binary);
    if (!f) throw Error(ErrorKind::ConfigError, "cannot write '" + rc.csv + "'");
    f << io::scan_to_csv(r);
  }
  if (rc.format == "csv") {
    emit(rc, io::scan_to_csv(r));
  } else if (rc.format == "text") {
    std::ostringstream s;
    for (const auto& iv : r.space.intervals()) s << "[" << format_number(iv.lo) << ", " << format_number(iv.hi) << "]\n";
    s << to_string(r.verdict) << " " << to_string(r.mode) << "\n";
    emit(rc, s.str());
  } else {
    emit_json(rc, "cayley", io::to_json(r));
  }
  return 0;
}

int cmd_rank(const RunConfig& rc) {
  const Graph g = load_input(rc.input).graph;
  const NormParam p = rc.norm_param();
  RankConfig cfg;
  cfg.seed = rc.seed;
  cfg.samples = rc.samples;
  const RankReport r = generic_rank(g, rc.dim, p, cfg);
  const int proj = projection_dimension(g, rc.dim, p, cfg);
  if (rc.format == "text") {
    emit(rc, "rank " + std::to_string(r.rank) + "\nprojection_dimension " + std::to_string(proj) + "\n" +
                 std::string(to_string(r.classification)) + "\n");
  } else {
    Json body = io::to_json(r);
    body["projection_dimension"] = proj;
    body["edges"] = g.num_edges();
    emit_json(rc, "rank", body);
  }
  return 0;
}

int cmd_cone(const RunConfig& rc) {
  const io::ParsedGraph parsed = load_input(rc.input);
  const Graph& g = parsed.graph;
  const int n = g.n();
  if (g.num_edges() != n * (n - 1) / 2)
    throw Error(ErrorKind::SizeMismatch, "cone input must list every pair of the " + std::to_string(n) + " points");
  const Linkage l = parsed.linkage();
  std::vector<double> entries(l.lengths.size());
  for (std::size_t k = 0; k < l.lengths.size(); ++k) {
    const Edge& e = g.edges()[k];
    entries[pair_index(n, e.u, e.v)] = l.lengths[k];
  }
  const DistanceVector dv(n, entries);
  const NormParam p = rc.norm_param();
  ConeMembershipReport r;
  if (rc.dim_given)
    r = stratum_membership(dv, rc.dim, p, rc.realize_config());
  else if (!p.is_infinite() && p.p() == 2)
    r = edm_membership(dv);
  else
    r = cone_membership(dv, p, n * (n - 1) / 2, rc.realize_config());
  if (rc.format == "text")
    emit(rc, std::string(to_string(r.member)) + (r.reason.empty() ? "" : " (" + r.reason + ")") + "\n");
  else
    emit_json(rc, "cone", io::to_json(r));
  return r.member == Membership::Member ? 0 : (r.member == Membership::NonMember ? 1 : 2);
}

int cmd_flatten(const RunConfig& rc) {
  const Graph g = load_input(rc.input).graph;
  const NormParam p = rc.norm_param();
  FlattenVerdict v;
  if (p == NormParam::finite(2)) {
    v = flatten_l2(g, rc.dim);
  } else if (p == NormParam::finite(1) && rc.dim == 2) {
    v = flatten_l1_d2(g);
    if (rc.cayley_certificate) {
      AuditConfig cfg;
      cfg.seed = rc.seed;
      cfg.realize = rc.realize_config();
      v = attach_cayley_certificate(v, g, cfg);
    }
  } else {
    throw Error(ErrorKind::UnsupportedNorm, "flatten supports --norm 2 (d <= 3) and --norm 1 --dim 2");
  }
  if (rc.format == "text")
    emit(rc, std::string(to_string(v.status)) + " " + std::string(certificate_name(v.certificate)) + "\n");
  else
    emit_json(rc, "flatten", io::to_json(v));
  switch (v.status) {
    case FlattenStatus::Yes: return 0;
    case FlattenStatus::No: return 1;
    case FlattenStatus::Unknown: return 3;
  }
  return 3;
}

int cmd_minor(const RunConfig& rc) {
  const Graph g = load_input(rc.input).graph;
  const auto h = presets::by_name(rc.minor);
  if (!h) throw Error(ErrorKind::ConfigError, "unknown minor '" + rc.minor + "'");
  const auto w = has_minor(g, *h);
  if (rc.format == "text") {
    emit(rc, w ? "found\n" : "absent\n");
  } else {
    Json body;
    body["minor"] = rc.minor;
    body["found"] = w.has_value();
    body["witness"] = w ? io::to_json(*w) : Json(nullptr);
    emit_json(rc, "minor", body);
  }
  return w ? 0 : 1;
}

int cmd_verify(const RunConfig& rc) {
  const Linkage l = load_input(rc.input).linkage();
  if (rc.witness.empty()) throw Error(ErrorKind::ConfigError, "--witness is required");
  const RationalConfiguration exact = io::parse_witness(io::read_file(rc.witness), l.graph.n());
  const NormParam p = rc.norm_param();
  const Configuration pts = to_double(exact);
  const ResidualReport rep = verify_framework(Framework(l.graph, pts, p), l);
  const Rational exact_error = max_power_error_exact(exact, l, p);
  const double relative = relative_residual(pts, l, p);
  const bool pass = exact_error.is_zero() || relative <= rc.tol;
  if (rc.format == "text") {
    emit(rc, std::string(pass ? "PASS" : "FAIL") + " max_error " + format_number(rep.max_error) + "\n");
  } else {
    Json body = io::to_json(rep);
    body["relative_residual"] = relative;
    body["exact_power_error"] = exact_error.str();
    body["tolerance"] = rc.tol;
    body["pass"] = pass;
    emit_json(rc, "verify", body);
  }
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lpflat: realizations, Cayley spaces, rigidity and flattenability in l_p spaces"};
  app.require_subcommand(1);
  RunConfig rc;

  auto common = [&](CLI::App* sub) {
    sub->add_option("input", rc.input, "Graph or linkage file (text, or JSON starting with '{')")->required();
    sub->add_option("--norm", rc.norm, "l_p exponent: 1, 2, ... or inf")->capture_default_str();
    sub->add_option("--seed", rc.seed, "Random seed")->capture_default_str();
    sub->add_option("--out", rc.out, "Write the report here instead of stdout");
    sub->add_option("--format", rc.format, "Report format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
  };
  auto with_dim = [&](CLI::App* sub) {
    sub->add_option_function<int>(
           "--dim",
           [&](const int& d) {
             rc.dim = d;
             rc.dim_given = true;
           },
           "Dimension d")
        ->default_str("2");
  };
  auto with_realize = [&](CLI::App* sub) {
    sub->add_option("--restarts", rc.restarts, "Numeric restarts")->capture_default_str();
    sub->add_option("--tol", rc.tol, "Relative residual tolerance")->capture_default_str();
  };

  auto* realize_cmd = app.add_subcommand("realize", "Realize a linkage in R^d under l_p");
  common(realize_cmd);
  with_dim(realize_cmd);
  with_realize(realize_cmd);

  auto* cayley_cmd = app.add_subcommand("cayley", "Cayley configuration space over one non-edge");
  common(cayley_cmd);
  with_dim(cayley_cmd);
  with_realize(cayley_cmd);
  cayley_cmd->add_option("--nonedge", rc.nonedge, "The two endpoints of the non-edge")->expected(2)->required();
  cayley_cmd->add_option("--grid", rc.grid, "Number of probes")->capture_default_str();
  cayley_cmd->add_option("--csv", rc.csv, "Also write the probe dump as CSV here");

  auto* rank_cmd = app.add_subcommand("rank", "Generic rigidity rank and projection dimension");
  common(rank_cmd);
  with_dim(rank_cmd);
  rank_cmd->add_option("--samples", rc.samples, "Random frameworks sampled")->capture_default_str();

  auto* cone_cmd = app.add_subcommand(
      "cone", "Membership of a distance vector (edge values in l_p^p units on K_n) in the cone or its d-stratum");
  common(cone_cmd);
  with_dim(cone_cmd);
  with_realize(cone_cmd);

  auto* flatten_cmd = app.add_subcommand("flatten", "Flattenability verdict");
  common(flatten_cmd);
  with_dim(flatten_cmd);
  with_realize(flatten_cmd);
  flatten_cmd->add_flag("--cayley", rc.cayley_certificate, "Attach a Cayley non-convexity certificate to NO");

  auto* minor_cmd = app.add_subcommand("minor", "Minor containment with witness");
  common(minor_cmd);
  minor_cmd->add_option("--minor", rc.minor, "K4, K5, banana, W4, K33, K222, ...")->capture_default_str();

  auto* verify_cmd = app.add_subcommand("verify", "Check a witness framework against a linkage");
  common(verify_cmd);
  verify_cmd->add_option("--witness", rc.witness, "Realize JSON report or 'p <v> <coords>' lines")->required();
  verify_cmd->add_option("--tol", rc.tol, "Relative residual tolerance")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    rc.validate();
    (void)rc.norm_param();
  } catch (const Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*realize_cmd) return cmd_realize(rc);
    if (*cayley_cmd) return cmd_cayley(rc);
    if (*rank_cmd) return cmd_rank(rc);
    if (*cone_cmd) return cmd_cone(rc);
    if (*flatten_cmd) return cmd_flatten(rc);
    if (*minor_cmd) return cmd_minor(rc);
    if (*verify_cmd) return cmd_verify(rc);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::ParseError ? kUsage : kLibrary;
  }
  return kUsage;
}
