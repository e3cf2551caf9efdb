#include "symfam/io.hpp"

#include "symfam/errors.hpp"

#include <fstream>

namespace symfam::io {

namespace {

json pair(double a, double b) { return json::array({a, b}); }

int read_n(const json& j) {
  if (!j.is_object() || !j.contains("n_qubits") || !j["n_qubits"].is_number_integer())
    throw DomainError("missing or non-integer n_qubits");
  const int n = j["n_qubits"].get<int>();
  if (n < 1) throw DomainError("n_qubits must be >= 1");
  return n;
}

std::vector<std::pair<double, double>> read_pairs(const json& j, const char* key, std::size_t count) {
  if (!j.contains(key) || !j[key].is_array()) throw DomainError(std::string("missing array '") + key + "'");
  const json& arr = j[key];
  if (arr.size() != count)
    throw DomainError(std::string("'") + key + "' has " + std::to_string(arr.size()) +
                      " entries, expected " + std::to_string(count));
  std::vector<std::pair<double, double>> out;
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw DomainError(std::string("entries of '") + key + "' must be [number, number] pairs");
    out.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return out;
}

}  // namespace

json state_to_json(const SymmetricState& s) {
  json amps = json::array();
  for (const auto& c : s.amplitudes()) amps.push_back(pair(c.real(), c.imag()));
  return {{"n_qubits", s.n_qubits()}, {"amplitudes", amps}};
}

SymmetricState state_from_json(const json& j) {
  const int n = read_n(j);
  const auto p = read_pairs(j, "amplitudes", std::size_t(n) + 1);
  CVector a(n + 1);
  for (int k = 0; k <= n; ++k) a[k] = {p[std::size_t(k)].first, p[std::size_t(k)].second};
  return SymmetricState::from_amplitudes(n, std::move(a));
}

json density_to_json(const SymmetricDensityMatrix& rho) {
  json entries = json::array();
  const CMatrix& m = rho.entries();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) entries.push_back(pair(m(r, c).real(), m(r, c).imag()));
  return {{"n_qubits", rho.n_qubits()}, {"entries", entries}};
}

SymmetricDensityMatrix density_from_json(const json& j) {
  const int n = read_n(j);
  const auto p = read_pairs(j, "entries", std::size_t((n + 1) * (n + 1)));
  CMatrix m(n + 1, n + 1);
  std::size_t at = 0;
  for (int r = 0; r <= n; ++r)
    for (int c = 0; c <= n; ++c, ++at) m(r, c) = {p[at].first, p[at].second};
  return SymmetricDensityMatrix::from_entries(n, std::move(m));
}

json basis_to_json(const SeparableBasis& b) {
  json dirs = json::array();
  for (const auto& p : b.directions()) dirs.push_back(pair(p.theta, p.phi));
  return {{"n_qubits", b.n_qubits()}, {"directions", dirs}, {"condition_number", b.condition_number()}};
}

SeparableBasis basis_from_json(const json& j) {
  const int n = read_n(j);
  const auto p = read_pairs(j, "directions", std::size_t((n + 1) * (n + 1)));
  std::vector<BlochPoint> dirs;
  for (const auto& [t, f] : p) dirs.push_back(BlochPoint::make(t, f));
  return SeparableBasis::build(n, std::move(dirs));
}

json constellation_to_json(const Constellation& c) {
  json pts = json::array();
  for (const auto& p : c.points())
    pts.push_back({{"theta", p.point.theta}, {"phi", p.point.phi}, {"multiplicity", p.multiplicity}});
  return {{"n_qubits", c.n_qubits()}, {"points", pts}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw DomainError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
  if (!out) throw DomainError("failed writing '" + path + "'");
}

SymmetricState read_state(const std::string& path) { return state_from_json(read_json_file(path)); }

SymmetricDensityMatrix read_density(const std::string& path) {
  return density_from_json(read_json_file(path));
}

SeparableBasis read_basis(const std::string& path) { return basis_from_json(read_json_file(path)); }

}  // namespace symfam::io
