#include "symfam/families.hpp"

#include "symfam/errors.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace symfam {

DegeneracyConfiguration::DegeneracyConfiguration(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw DomainError("a degeneracy configuration needs at least one part");
  for (int p : parts_)
    if (p < 1) throw DomainError("partition parts must be positive");
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

DegeneracyConfiguration DegeneracyConfiguration::parse(std::string_view text) {
  std::vector<int> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view tok = text.substr(pos, comma - pos);
    while (!tok.empty() && (tok.front() == ' ' || tok.front() == '\t')) tok.remove_prefix(1);
    while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t')) tok.remove_suffix(1);
    int value = 0;
    const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || ec != std::errc() || end != tok.data() + tok.size())
      throw DomainError("malformed partition '" + std::string(text) + "'");
    parts.push_back(value);
    pos = comma + 1;
  }
  return DegeneracyConfiguration(std::move(parts));
}

DegeneracyConfiguration DegeneracyConfiguration::all_distinct(int n) {
  if (n < 1) throw DomainError("N must be >= 1");
  return DegeneracyConfiguration(std::vector<int>(std::size_t(n), 1));
}

DegeneracyConfiguration DegeneracyConfiguration::all_equal(int n) {
  if (n < 1) throw DomainError("N must be >= 1");
  return DegeneracyConfiguration({n});
}

int DegeneracyConfiguration::n() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

std::string DegeneracyConfiguration::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(parts_[i]);
  }
  return s;
}

std::string DegeneracyConfiguration::label() const { return "D_{" + to_string() + "}"; }

std::vector<DegeneracyConfiguration> enumerate_partitions(int n) {
  if (n < 1) throw DomainError("enumerate_partitions: N must be >= 1");
  std::vector<DegeneracyConfiguration> out;
  std::vector<int> cur;
  // Largest-first recursion yields reverse-lexicographic order directly.
  std::function<void(int, int)> rec = [&](int left, int max_part) {
    if (left == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(left, max_part); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

namespace {

// Can the parts of `fine` (sorted desc) be packed exactly into bins sized by
// `coarse`? Exact backtracking; bins of equal remaining capacity are tried once.
bool packs(const std::vector<int>& fine, std::vector<int>& room, std::size_t next) {
  if (next == fine.size()) return std::all_of(room.begin(), room.end(), [](int r) { return r == 0; });
  std::set<int> tried;
  for (auto& r : room) {
    if (r < fine[next] || !tried.insert(r).second) continue;
    r -= fine[next];
    const bool ok = packs(fine, room, next + 1);
    r += fine[next];
    if (ok) return true;
  }
  return false;
}

}  // namespace

bool descends(const DegeneracyConfiguration& from, const DegeneracyConfiguration& to) {
  if (from.n() != to.n()) throw DomainError("descends: partitions of different N");
  if (from == to || to.diversity() >= from.diversity()) return false;
  std::vector<int> room = to.parts();
  return packs(from.parts(), room, 0);
}

bool in_closure(const DegeneracyConfiguration& family, const DegeneracyConfiguration& member) {
  return member == family || descends(family, member);
}

std::vector<DegeneracyConfiguration> descendant_closure(const DegeneracyConfiguration& family) {
  std::vector<DegeneracyConfiguration> out{family};
  for (auto& d : enumerate_partitions(family.n()))
    if (descends(family, d)) out.push_back(d);
  return out;
}

FamilyGraph hasse_graph(int n) {
  FamilyGraph g;
  g.n_qubits = n;
  g.nodes = enumerate_partitions(n);
  std::map<DegeneracyConfiguration, std::size_t> index;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) index.emplace(g.nodes[i], i);

  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& parts = g.nodes[i].parts();
    for (std::size_t a = 0; a < parts.size(); ++a)
      for (std::size_t b = a + 1; b < parts.size(); ++b) {
        std::vector<int> merged;
        for (std::size_t c = 0; c < parts.size(); ++c)
          if (c != a && c != b) merged.push_back(parts[c]);
        merged.push_back(parts[a] + parts[b]);
        edges.emplace(i, index.at(DegeneracyConfiguration(std::move(merged))));
      }
  }
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

DegeneracyConfiguration classify_pure(const SymmetricState& s, double coincidence_tol) {
  return DegeneracyConfiguration(to_constellation(s, coincidence_tol).multiplicities());
}

std::string to_dot(const FamilyGraph& g) {
  std::ostringstream os;
  os << "digraph families_N" << g.n_qubits << " {\n";
  os << "  rankdir=TB;\n";
  os << "  node [shape=box];\n";
  std::map<int, std::vector<std::size_t>, std::greater<>> layers;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) layers[g.nodes[i].diversity()].push_back(i);
  for (const auto& [d, members] : layers) {
    os << "  { rank=same; // d=" << d << "\n";
    for (auto i : members) os << "    n" << i << " [label=\"" << g.nodes[i].label() << "\"];\n";
    os << "  }\n";
  }
  for (const auto& [a, b] : g.edges) os << "  n" << a << " -> n" << b << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace symfam
