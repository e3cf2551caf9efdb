#pragma once

// JSON file formats.
//
//   state:   {"n_qubits": N, "amplitudes": [[re, im], ...]}       (N+1 pairs)
//   density: {"n_qubits": N, "entries": [[re, im], ...]}          ((N+1)^2 pairs, row-major)
//   basis:   {"n_qubits": N, "directions": [[theta, phi], ...], "condition_number": c}
//
// Doubles are written with round-trip precision, so write-then-read is exact.
// Readers validate the content and throw DomainError on malformed input.

#include "symfam/core.hpp"
#include "symfam/sepbasis.hpp"

#include <json.hpp>

#include <string>

namespace symfam::io {

using nlohmann::json;

json state_to_json(const SymmetricState& s);
SymmetricState state_from_json(const json& j);

json density_to_json(const SymmetricDensityMatrix& rho);
SymmetricDensityMatrix density_from_json(const json& j);

/// F is recomputed and its condition number revalidated on load.
json basis_to_json(const SeparableBasis& b);
SeparableBasis basis_from_json(const json& j);

json constellation_to_json(const Constellation& c);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

SymmetricState read_state(const std::string& path);
SymmetricDensityMatrix read_density(const std::string& path);
SeparableBasis read_basis(const std::string& path);

}  // namespace symfam::io
