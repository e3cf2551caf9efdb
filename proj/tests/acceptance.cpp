// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "oracles.hpp"
#include "symfam/families.hpp"
#include "symfam/sampler.hpp"
#include "symfam/sepbasis.hpp"
#include "symfam/witness.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <string>

using namespace symfam;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

DegeneracyConfiguration D(const char* s) { return DegeneracyConfiguration::parse(s); }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Outcome alpha_table() {
  struct Row {
    const char* state;
    const char* family;
    double want;
  };
  const Row rows[] = {{"GHZ4", "4", 0.5},      {"GHZ4", "3,1", 0.5},        {"GHZ4", "2,2", 0.75},
                      {"GHZ4", "2,1,1", 0.875}, {"T4", "4", 1.0 / 3.0},      {"T4", "3,1", 2.0 / 3.0},
                      {"T4", "2,2", 0.5},       {"T4", "2,1,1", 0.75}};
  double worst = 0.0;
  std::string values;
  for (const auto& r : rows) {
    const auto psi = std::string(r.state) == "GHZ4" ? ghz(4) : tetrahedron_state();
    const double a = max_overlap(psi, D(r.family)).alpha;
    worst = std::max(worst, std::abs(a - r.want));
    values += std::string(" ") + r.state + "/" + r.family + "=" + num(a);
  }
  return {worst <= 1e-4, "max |delta| " + num(worst) + ";" + values};
}

Outcome family_counts() {
  const long want[] = {1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
  bool ok = true;
  for (int n = 1; n <= 10; ++n) {
    const long got = long(hasse_graph(n).nodes.size());
    ok = ok && got == want[n - 1] && got == oracle::partitions(n, n);
  }
  return {ok, "p(1..10) = 1,2,3,5,7,11,15,22,30,42"};
}

Outcome hasse_exact() {
  using Edges = std::set<std::pair<std::string, std::string>>;
  auto labels = [](const FamilyGraph& g) {
    Edges e;
    for (const auto& [a, b] : g.edges) e.emplace(g.nodes[a].to_string(), g.nodes[b].to_string());
    return e;
  };
  bool ok = labels(hasse_graph(4)) == Edges{{"1,1,1,1", "2,1,1"}, {"2,1,1", "2,2"}, {"2,1,1", "3,1"}, {"2,2", "4"}, {"3,1", "4"}};
  ok = ok && labels(hasse_graph(3)) == Edges{{"1,1,1", "2,1"}, {"2,1", "3"}};
  ok = ok && labels(hasse_graph(2)) == Edges{{"1,1", "2"}};
  int mismatched = 0;
  for (int n = 1; n <= 8; ++n) {
    const auto g = hasse_graph(n);
    auto desc = [&](std::size_t a, std::size_t b) {
      return g.nodes[a] != g.nodes[b] && oracle::coarsens(g.nodes[a].parts(), g.nodes[b].parts());
    };
    std::set<std::pair<std::size_t, std::size_t>> reduction;
    for (std::size_t a = 0; a < g.nodes.size(); ++a)
      for (std::size_t b = 0; b < g.nodes.size(); ++b) {
        if (!desc(a, b)) continue;
        bool cover = true;
        for (std::size_t c = 0; c < g.nodes.size(); ++c) cover = cover && !(desc(a, c) && desc(c, b));
        if (cover) reduction.emplace(a, b);
      }
    if (reduction != std::set<std::pair<std::size_t, std::size_t>>(g.edges.begin(), g.edges.end())) ++mismatched;
  }
  return {ok && mismatched == 0, "N=2,3,4 edge sets exact; N<=8 reductions mismatched: " + std::to_string(mismatched)};
}

Outcome majorana_round_trip() {
  double worst = 0.0;
  int pattern_failures = 0, total = 0;
  for (int n = 2; n <= 10; ++n) {
    const auto fams = enumerate_partitions(n);
    for (int t = 0; t < 200; ++t, ++total) {
      KeyedRng rng(404, std::uint64_t(n), std::uint64_t(t));
      // Half of the draws are all-distinct, the rest take a random family.
      const auto& fam = t % 2 == 0 ? fams.back() : fams[rng.below(fams.size())];
      const auto pts = oracle::separated_points(rng, fam.diversity(), 0.1);
      std::vector<ConstellationPoint> cps;
      for (std::size_t i = 0; i < pts.size(); ++i) cps.push_back({pts[i], fam.parts()[i]});
      const Constellation want(n, cps);
      const Constellation got = to_constellation(from_constellation(want));
      if (got.multiplicities() != want.multiplicities()) {
        ++pattern_failures;
        continue;
      }
      worst = std::max(worst, oracle::match_error(got, want));
    }
  }
  return {pattern_failures == 0 && worst <= 1e-8,
          std::to_string(total) + " constellations, pattern failures " + std::to_string(pattern_failures) +
              ", worst point error " + num(worst)};
}

Outcome named_states() {
  int bad = 0;
  for (int n = 1; n <= 10; ++n)
    for (int k = 0; k <= n / 2; ++k) {
      std::vector<int> parts{n - k};
      if (k) parts.push_back(k);
      if (classify_pure(dicke(n, k)) != DegeneracyConfiguration(parts)) ++bad;
    }
  for (int n = 2; n <= 8; ++n)
    if (classify_pure(ghz(n)) != DegeneracyConfiguration::all_distinct(n)) ++bad;
  const auto t = to_constellation(tetrahedron_state());
  double worst = t.size() == 4 ? 0.0 : 1.0;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      worst = std::max(worst, std::abs(bloch_angle(t.points()[i].point, t.points()[j].point) - std::acos(-1.0 / 3.0)));
  return {bad == 0 && worst <= 1e-6,
          "misclassified " + std::to_string(bad) + ", tetrahedron angle error " + num(worst)};
}

Outcome separable_basis() {
  double worst_err = 0.0, worst_sum = 0.0;
  bool chosen = true;
  for (int n = 1; n <= 6; ++n) {
    std::vector<BlochPoint> pts;
    try {
      pts = choose_points(n, 0, 1e8, 50);
    } catch (const std::exception&) {
      chosen = false;
      continue;
    }
    const auto b = SeparableBasis::build(n, pts);
    for (int t = 0; t < 100; ++t) {
      KeyedRng rng(606, std::uint64_t(n), std::uint64_t(t));
      const auto rho = SymmetricDensityMatrix::from_entries(n, oracle::random_density(rng, n));
      const Eigen::VectorXd x = b.decompose(rho);
      worst_sum = std::max(worst_sum, std::abs(x.sum() - 1.0));
      worst_err = std::max(worst_err, (b.reconstruct(x) - rho.entries()).cwiseAbs().maxCoeff());
    }
  }
  const auto b4 = SeparableBasis::build(4, choose_points(4, 0));
  const double ghz_min = b4.decompose(projector(ghz(4))).minCoeff();
  return {chosen && worst_err < 1e-9 && worst_sum <= 1e-10 && ghz_min < 0.0,
          "round-trip " + num(worst_err) + ", sum deviation " + num(worst_sum) + ", GHZ4 min coefficient " + num(ghz_min)};
}

std::vector<SymmetricState> reference_states() {
  std::vector<SymmetricState> refs{ghz(4), tetrahedron_state()};
  for (std::uint64_t s = 0; int(refs.size()) < 7; ++s) {
    auto psi = random_symmetric_pure(4, 7000 + s);
    if (classify_pure(psi) == DegeneracyConfiguration::all_distinct(4)) refs.push_back(std::move(psi));
  }
  return refs;
}

Outcome witness_sweep() {
  const auto refs = reference_states();
  double worst = std::numeric_limits<double>::infinity();
  long evaluated = 0;
  for (const char* fam : {"4", "3,1", "2,2", "2,1,1"}) {
    std::vector<Witness> ws;
    for (const auto& r : refs) ws.push_back(build_witness(r, D(fam)));
    for (int t = 0; t < 1000; ++t) {
      SamplingSpec spec{D(fam), 1 + t % 8, true, UniformSphere{}, 9000 + std::uint64_t(t)};
      const auto rho = sample_mixed_in_family(spec, 4);
      for (const auto& w : ws) {
        worst = std::min(worst, evaluate(w, rho));
        ++evaluated;
      }
    }
  }
  return {worst >= -1e-7, std::to_string(evaluated) + " evaluations, minimum " + num(worst)};
}

Outcome monotonicity() {
  const auto fams = enumerate_partitions(4);
  double worst = -std::numeric_limits<double>::infinity();
  int pairs = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto psi = random_symmetric_pure(4, 8000 + s);
    std::vector<double> a;
    for (const auto& d : fams) a.push_back(max_overlap(psi, d).alpha);
    for (std::size_t i = 0; i < fams.size(); ++i)
      for (std::size_t j = 0; j < fams.size(); ++j)
        if (descends(fams[i], fams[j])) {
          worst = std::max(worst, a[j] - a[i]);
          ++pairs;
        }
  }
  return {worst <= 1e-6, std::to_string(pairs) + " ordered pairs, max violation " + num(worst)};
}

Outcome monte_carlo_limit() {
  const auto est = polarizer_mixture(D("4"), UniformSphere{}, 100000, 0);
  const double dist = trace_distance(est.rho.entries(), SymmetricDensityMatrix::maximally_mixed(4).entries());
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& r : reference_states()) worst = std::min(worst, evaluate(build_witness(r, D("4")), est.rho));
  return {dist <= 0.02 && worst >= -1e-7,
          "trace distance to I/5 " + num(dist) + ", half-split " + num(*est.half_split_distance) +
              ", minimum witness value " + num(worst)};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"published alpha values", alpha_table},
      {"family counts", family_counts},
      {"hasse graph exactness", hasse_exact},
      {"majorana round trip", majorana_round_trip},
      {"named-state classification", named_states},
      {"separable basis round trip", separable_basis},
      {"witness positivity sweep", witness_sweep},
      {"overlap monotonicity", monotonicity},
      {"monte carlo limit", monte_carlo_limit},
  };
  int failures = 0, index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d %s: %s (%s) [%.1fs]\n", index, name, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    if (!o.pass) ++failures;
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
