#pragma once

// Maximal overlap of a reference state with an entanglement family, and the
// projector witnesses W = alpha * 1 - |psi><psi| built from it.

#include "symfam/core.hpp"
#include "symfam/families.hpp"

#include <cstdint>
#include <vector>

namespace symfam {

enum class AscentMethod { simplex, gradient };

struct OptimizerConfig {
  int n_starts = 64;
  int max_iterations = 500;        // per local ascent
  double convergence_tol = 1e-10;  // on the objective change
  std::uint64_t seed = 0;
  AscentMethod method = AscentMethod::simplex;
  // The start count is doubled until the best value is reached by at least
  // `min_agreeing` starts within `agreement_tol`, or `max_starts` is hit.
  int min_agreeing = 3;
  double agreement_tol = 1e-8;
  int max_starts = 1024;

  void validate() const;
};

struct OverlapResult {
  double alpha = 0.0;
  Constellation argmax{1, {{BlochPoint{}, 1}}};
  int confidence = 0;   // starts whose value is within agreement_tol of alpha
  int starts_used = 0;
};

/// Objective |<phi(x)|psi>|^2 with x the d points of D (multiplicities = parts).
/// Points may coincide, so the maximum is over the closure of the family.
class FamilyOverlap {
 public:
  FamilyOverlap(const SymmetricState& psi, const DegeneracyConfiguration& family);

  int dimension() const { return 2 * int(parts_.size()); }
  /// x = (theta_0, phi_0, theta_1, phi_1, ...); any real values are accepted.
  double value(const Eigen::VectorXd& x) const;
  double value_and_gradient(const Eigen::VectorXd& x, Eigen::VectorXd& grad) const;
  Constellation constellation(const Eigen::VectorXd& x) const;

 private:
  int n_;
  std::vector<int> parts_;
  CVector psi_;
};

struct LocalResult {
  double value;
  Eigen::VectorXd x;
};

/// One local ascent from x0 with the configured method.
LocalResult local_ascent(const FamilyOverlap& f, Eigen::VectorXd x0, const OptimizerConfig& cfg);

/// Multi-start maximization; starts run in parallel, reduction is by value
/// with ties going to the lowest start index, so the result does not depend
/// on the thread count.
OverlapResult max_overlap(const SymmetricState& psi, const DegeneracyConfiguration& family,
                          const OptimizerConfig& cfg = {});
/// Single-threaded reference; bit-identical to max_overlap.
OverlapResult max_overlap_serial(const SymmetricState& psi, const DegeneracyConfiguration& family,
                                 const OptimizerConfig& cfg = {});

struct Witness {
  SymmetricState reference_state;
  DegeneracyConfiguration family;
  double alpha;
  Constellation argmax_constellation;
  int confidence;
  /// The reference state itself lies in the closure of the family, so the
  /// witness cannot detect anything (alpha = 1).
  bool vacuous;
};

Witness build_witness(const SymmetricState& psi, const DegeneracyConfiguration& family,
                      const OptimizerConfig& cfg = {});

/// Tr(W rho) = alpha - <psi|rho|psi>; negative means rho is detected.
double evaluate(const Witness& w, const SymmetricDensityMatrix& rho);

/// One witness per family other than (1,...,1), highest diversity first.
std::vector<Witness> witness_battery(const SymmetricState& psi, const OptimizerConfig& cfg = {});

}  // namespace symfam
