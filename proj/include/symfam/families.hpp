#pragma once

// Entanglement families of symmetric states, labelled by integer partitions of
// N (degeneracy configurations), and the descent order between them.

#include "symfam/core.hpp"

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace symfam {

/// Partition of N in non-increasing order. Equality is multiset equality.
class DegeneracyConfiguration {
 public:
  /// Parts may be given in any order; they are sorted. All parts must be >= 1.
  explicit DegeneracyConfiguration(std::vector<int> parts);

  /// Parses "2,1,1" (any order, whitespace tolerated).
  static DegeneracyConfiguration parse(std::string_view text);
  /// (1, ..., 1) and (N).
  static DegeneracyConfiguration all_distinct(int n);
  static DegeneracyConfiguration all_equal(int n);

  const std::vector<int>& parts() const { return parts_; }
  int n() const;
  int diversity() const { return int(parts_.size()); }

  /// "2,1,1"
  std::string to_string() const;
  /// "D_{2,1,1}"
  std::string label() const;

  friend bool operator==(const DegeneracyConfiguration&, const DegeneracyConfiguration&) = default;
  friend auto operator<=>(const DegeneracyConfiguration&, const DegeneracyConfiguration&) = default;

 private:
  std::vector<int> parts_;
};

/// All partitions of n, reverse-lexicographic: (n), (n-1,1), ..., (1,...,1).
std::vector<DegeneracyConfiguration> enumerate_partitions(int n);

inline int diversity(const DegeneracyConfiguration& d) { return d.diversity(); }

/// True iff `to` is a strict coarsening of `from`: the parts of `from` can be
/// grouped into blocks whose sums are the parts of `to`.
bool descends(const DegeneracyConfiguration& from, const DegeneracyConfiguration& to);

/// member == family or member descends from family.
bool in_closure(const DegeneracyConfiguration& family, const DegeneracyConfiguration& member);

/// family followed by all its descendants, in enumeration order.
std::vector<DegeneracyConfiguration> descendant_closure(const DegeneracyConfiguration& family);

struct FamilyGraph {
  int n_qubits = 0;
  std::vector<DegeneracyConfiguration> nodes;
  /// Cover pairs (from, to) as indices into nodes, sorted.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// Hasse diagram of the descent order: edges merge exactly two parts.
FamilyGraph hasse_graph(int n);

/// Multiplicity pattern of the state's Majorana constellation.
DegeneracyConfiguration classify_pure(const SymmetricState& s,
                                      double coincidence_tol = kDefaultCoincidenceTol);

/// Graphviz digraph, one rank per diversity degree, highest degree on top.
std::string to_dot(const FamilyGraph& g);

}  // namespace symfam
