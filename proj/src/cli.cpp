#include "symfam/cli.hpp"

#include "symfam/errors.hpp"
#include "symfam/families.hpp"
#include "symfam/io.hpp"
#include "symfam/sampler.hpp"
#include "symfam/sepbasis.hpp"
#include "symfam/witness.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace symfam {

namespace {

using io::json;

struct Report {
  bool as_json = false;
  json doc = json::object();
  std::vector<std::string> lines;

  template <class T>
  void field(const std::string& key, const T& value, const std::string& text) {
    doc[key] = value;
    lines.push_back(key + ": " + text);
  }
  void line(std::string s) { lines.push_back(std::move(s)); }

  void emit(std::ostream& out) const {
    if (as_json) {
      out << doc.dump(2) << '\n';
      return;
    }
    for (const auto& l : lines) out << l << '\n';
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::string point_text(const ConstellationPoint& p) {
  return "theta=" + fmt(p.point.theta) + " phi=" + fmt(p.point.phi) + " multiplicity=" +
         std::to_string(p.multiplicity);
}

void add_constellation(Report& r, const std::string& key, const Constellation& c) {
  r.doc[key] = io::constellation_to_json(c)["points"];
  r.line(key + ":");
  for (const auto& p : c.points()) r.line("  " + point_text(p));
}

int cmd_families(int n, bool dot, Report& r, std::ostream& out) {
  if (n < 1 || n > 20) throw DomainError("N must lie in [1, 20]");
  const FamilyGraph g = hasse_graph(n);
  if (dot && !r.as_json) {
    out << to_dot(g);
    return exit_code::kSuccess;
  }
  r.field("n_qubits", n, std::to_string(n));
  r.field("count", g.nodes.size(), std::to_string(g.nodes.size()));
  json fams = json::array();
  for (const auto& d : g.nodes) {
    fams.push_back({{"family", d.to_string()}, {"diversity", d.diversity()}});
    r.line("family: " + d.label() + " d=" + std::to_string(d.diversity()));
  }
  r.doc["families"] = fams;
  json edges = json::array();
  for (const auto& [a, b] : g.edges) {
    edges.push_back({g.nodes[a].to_string(), g.nodes[b].to_string()});
    r.line("edge: " + g.nodes[a].label() + " -> " + g.nodes[b].label());
  }
  r.doc["edges"] = edges;
  if (dot) r.doc["dot"] = to_dot(g);
  r.emit(out);
  return exit_code::kSuccess;
}

int cmd_classify(const std::string& file, double tol, Report& r, std::ostream& out) {
  const SymmetricState s = io::read_state(file);
  const Constellation c = to_constellation(s, tol);
  const DegeneracyConfiguration d(c.multiplicities());
  r.field("n_qubits", s.n_qubits(), std::to_string(s.n_qubits()));
  r.field("family", d.to_string(), d.label());
  r.field("diversity", d.diversity(), std::to_string(d.diversity()));
  add_constellation(r, "constellation", c);
  r.emit(out);
  return exit_code::kSuccess;
}

struct WitnessArgs {
  std::string ref;
  std::string family;
  std::string eval;
  std::uint64_t seed = 0;
  int starts = 64;
  std::string method = "simplex";
};

int cmd_witness(const WitnessArgs& a, Report& r, std::ostream& out, std::ostream& err) {
  const SymmetricState psi = io::read_state(a.ref);
  const auto family = DegeneracyConfiguration::parse(a.family);
  if (family.n() != psi.n_qubits())
    throw DomainError("family " + family.to_string() + " is not a partition of N = " +
                      std::to_string(psi.n_qubits()));
  std::optional<SymmetricDensityMatrix> rho;
  if (!a.eval.empty()) {
    rho = io::read_density(a.eval);
    if (rho->n_qubits() != psi.n_qubits()) throw DomainError("density matrix N differs from the reference state");
  }

  OptimizerConfig cfg;
  cfg.seed = a.seed;
  cfg.n_starts = a.starts;
  cfg.max_starts = std::max(cfg.max_starts, a.starts);
  cfg.method = a.method == "gradient" ? AscentMethod::gradient : AscentMethod::simplex;
  const Witness w = build_witness(psi, family, cfg);
  if (w.vacuous)
    err << "warning: the reference state lies in the closure of " << family.label()
        << "; the witness detects nothing\n";

  r.field("family", family.to_string(), family.label());
  r.field("alpha", w.alpha, fmt(w.alpha));
  r.field("confidence", w.confidence, std::to_string(w.confidence));
  r.field("vacuous", w.vacuous, w.vacuous ? "true" : "false");
  if (!rho) {
    add_constellation(r, "argmax", w.argmax_constellation);
    r.emit(out);
    return exit_code::kSuccess;
  }
  const double value = evaluate(w, *rho);
  r.field("value", value, fmt(value));
  r.field("detected", value < 0.0, value < 0.0 ? "true" : "false");
  r.emit(out);
  return value < 0.0 ? exit_code::kDetected : exit_code::kSuccess;
}

struct SampleArgs {
  std::string family;
  int n_qubits = 0;
  int terms = 1;
  bool descendants = false;
  int samples = 0;
  std::vector<double> cap;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_sample(const SampleArgs& a, Report& r, std::ostream& out) {
  const auto family = DegeneracyConfiguration::parse(a.family);
  if (family.n() != a.n_qubits)
    throw DomainError("family " + family.to_string() + " is not a partition of N = " +
                      std::to_string(a.n_qubits));
  OrientationDistribution dist = UniformSphere{};
  if (!a.cap.empty()) {
    if (a.cap.size() != 3) throw DomainError("--cap expects theta,phi,radius");
    dist = SphericalCap{BlochPoint::make(a.cap[0], a.cap[1]), a.cap[2]};
  }

  r.field("family", family.to_string(), family.label());
  r.field("n_qubits", a.n_qubits, std::to_string(a.n_qubits));
  std::optional<SymmetricDensityMatrix> rho;
  if (a.samples > 0) {
    PolarizerEstimate est = polarizer_mixture(family, dist, a.samples, a.seed);
    r.field("samples", a.samples, std::to_string(a.samples));
    if (est.half_split_distance)
      r.field("half_split_trace_distance", *est.half_split_distance, fmt(*est.half_split_distance));
    rho = std::move(est.rho);
  } else {
    SamplingSpec spec{family, a.terms, a.descendants, dist, a.seed};
    rho = sample_mixed_in_family(spec, a.n_qubits);
    r.field("terms", a.terms, std::to_string(a.terms));
    r.field("descendants", a.descendants, a.descendants ? "true" : "false");
  }
  const double to_mixed =
      trace_distance(rho->entries(), SymmetricDensityMatrix::maximally_mixed(a.n_qubits).entries());
  r.field("trace_distance_to_maximally_mixed", to_mixed, fmt(to_mixed));
  if (!a.out.empty()) {
    io::write_json_file(a.out, io::density_to_json(*rho));
    r.field("out", a.out, a.out);
  } else {
    r.doc["density"] = io::density_to_json(*rho);
  }
  r.emit(out);
  return exit_code::kSuccess;
}

struct BasisArgs {
  int n_qubits = 0;
  std::uint64_t seed = 0;
  std::string decompose;
  std::string out;
  bool spread = false;
  double cond_threshold = kDefaultConditionThreshold;
  int max_attempts = 50;
};

int cmd_basis(const BasisArgs& a, Report& r, std::ostream& out) {
  if (a.n_qubits < 1) throw DomainError("--n-qubits must be >= 1");
  std::optional<SymmetricDensityMatrix> rho;
  if (!a.decompose.empty()) rho = io::read_density(a.decompose);
  if (rho && rho->n_qubits() != a.n_qubits) throw DomainError("density matrix N differs from --n-qubits");

  std::vector<BlochPoint> pts = choose_points(a.n_qubits, a.seed, a.cond_threshold, a.max_attempts);
  if (a.spread) pts = spread_points(a.n_qubits, std::move(pts));
  const SeparableBasis b = SeparableBasis::build(a.n_qubits, std::move(pts));

  r.field("n_qubits", a.n_qubits, std::to_string(a.n_qubits));
  r.field("directions", b.directions().size(), std::to_string(b.directions().size()));
  r.field("condition_number", b.condition_number(), fmt(b.condition_number()));
  if (!a.out.empty()) {
    io::write_json_file(a.out, io::basis_to_json(b));
    r.field("out", a.out, a.out);
  }
  if (rho) {
    const Eigen::VectorXd x = b.decompose(*rho);
    r.doc["coefficients"] = std::vector<double>(x.data(), x.data() + x.size());
    r.line("coefficients:");
    for (Eigen::Index i = 0; i < x.size(); ++i) r.line("  " + fmt(x[i]));
    r.field("sum", x.sum(), fmt(x.sum()));
    r.field("min", x.minCoeff(), fmt(x.minCoeff()));
  }
  r.emit(out);
  return exit_code::kSuccess;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement families of symmetric multiqubit states", "symfam"};
  app.require_subcommand(1);
  Report report;
  app.add_flag("--json", report.as_json, "Machine-readable JSON report");

  int fam_n = 0;
  bool fam_dot = false;
  auto* families = app.add_subcommand("families", "List the families of N qubits and their descent graph");
  families->add_option("N", fam_n, "Number of qubits (1..20)")->required();
  families->add_flag("--dot", fam_dot, "Emit the Hasse graph in DOT format");

  std::string cls_file;
  double cls_tol = kDefaultCoincidenceTol;
  auto* classify = app.add_subcommand("classify", "Majorana constellation and family of a pure state");
  classify->add_option("state_file", cls_file, "State file")->required();
  classify->add_option("--tol", cls_tol, "Chordal coincidence tolerance");

  WitnessArgs wa;
  auto* witness = app.add_subcommand("witness", "Build (and optionally evaluate) a family witness");
  witness->add_option("ref_state_file", wa.ref, "Reference state file")->required();
  witness->add_option("--family", wa.family, "Partition, e.g. 2,1,1")->required();
  witness->add_option("--eval", wa.eval, "Density-matrix file to evaluate");
  witness->add_option("--seed", wa.seed, "Optimizer seed");
  witness->add_option("--starts", wa.starts, "Initial number of optimizer starts")->check(CLI::PositiveNumber);
  witness->add_option("--method", wa.method, "Local ascent method")->check(CLI::IsMember({"simplex", "gradient"}));

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "Sample a mixed state inside a family");
  sample->add_option("--family", sa.family, "Partition, e.g. 3,1")->required();
  sample->add_option("--n-qubits", sa.n_qubits, "Number of qubits")->required();
  sample->add_option("--terms", sa.terms, "Pure projectors in the convex sum")->check(CLI::PositiveNumber);
  sample->add_flag("--descendants", sa.descendants, "Also draw terms from descendant families");
  sample->add_option("--samples", sa.samples, "Monte Carlo polarizer average over this many samples")
      ->check(CLI::PositiveNumber);
  sample->add_option("--cap", sa.cap, "Restrict orientations to a cap: theta,phi,radius")->delimiter(',');
  sample->add_option("--seed", sa.seed, "Sampling seed");
  sample->add_option("--out", sa.out, "Output density-matrix file");

  BasisArgs ba;
  auto* basis = app.add_subcommand("basis", "Build a separable basis and decompose states over it");
  basis->add_option("--n-qubits", ba.n_qubits, "Number of qubits")->required();
  basis->add_option("--seed", ba.seed, "Point-sampling seed");
  basis->add_option("--decompose", ba.decompose, "Density-matrix file to decompose");
  basis->add_option("--out", ba.out, "Output basis file");
  basis->add_flag("--spread", ba.spread, "Spread the points to improve conditioning");
  basis->add_option("--cond-threshold", ba.cond_threshold, "Accept a point set below this condition number");
  basis->add_option("--max-attempts", ba.max_attempts, "Candidate point sets to try")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::kSuccess : exit_code::kUsage;
  }

  try {
    if (*families) return cmd_families(fam_n, fam_dot, report, out);
    if (*classify) return cmd_classify(cls_file, cls_tol, report, out);
    if (*witness) return cmd_witness(wa, report, out, err);
    if (*sample) return cmd_sample(sa, report, out);
    if (*basis) return cmd_basis(ba, report, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kUsage;
  } catch (const ConditioningError& e) {
    err << "error: " << e.what() << " (best condition number " << e.best_condition() << ")\n";
    return exit_code::kNumerical;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kNumerical;
  }
  return exit_code::kUsage;
}

}  // namespace symfam
