#include "oracles.hpp"
#include "symfam/errors.hpp"
#include "symfam/families.hpp"

#include <doctest.h>

#include <map>
#include <set>

using namespace symfam;

namespace {

DegeneracyConfiguration D(std::vector<int> p) { return DegeneracyConfiguration(std::move(p)); }

std::set<std::pair<std::string, std::string>> edge_labels(const FamilyGraph& g) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& [a, b] : g.edges) out.emplace(g.nodes[a].to_string(), g.nodes[b].to_string());
  return out;
}

}  // namespace

TEST_CASE("configuration parsing and labels") {
  const auto d = DegeneracyConfiguration::parse("1, 2,1");
  CHECK(d.parts() == std::vector<int>{2, 1, 1});
  CHECK(d.to_string() == "2,1,1");
  CHECK(d.label() == "D_{2,1,1}");
  CHECK(d.n() == 4);
  CHECK(diversity(d) == 3);
  CHECK(diversity(DegeneracyConfiguration::all_equal(6)) == 1);
  CHECK(diversity(DegeneracyConfiguration::all_distinct(4)) == 4);
  CHECK_THROWS_AS(DegeneracyConfiguration::parse(""), DomainError);
  CHECK_THROWS_AS(DegeneracyConfiguration::parse("2,,1"), DomainError);
  CHECK_THROWS_AS(DegeneracyConfiguration::parse("2,x"), DomainError);
  CHECK_THROWS_AS(DegeneracyConfiguration::parse("2,0"), DomainError);
  CHECK_THROWS_AS(DegeneracyConfiguration::parse("-1,3"), DomainError);
}

TEST_CASE("partition enumeration") {
  const auto four = enumerate_partitions(4);
  REQUIRE(four.size() == 5);
  CHECK(four[0] == D({4}));
  CHECK(four[1] == D({3, 1}));
  CHECK(four[2] == D({2, 2}));
  CHECK(four[3] == D({2, 1, 1}));
  CHECK(four[4] == D({1, 1, 1, 1}));
  CHECK(enumerate_partitions(3).size() == 3);
  CHECK_THROWS_AS(enumerate_partitions(0), DomainError);
  for (int n = 1; n <= 20; ++n) {
    const auto all = enumerate_partitions(n);
    CHECK(long(all.size()) == oracle::partitions(n, n));
    std::set<DegeneracyConfiguration> unique(all.begin(), all.end());
    CHECK(unique.size() == all.size());
    // Strictly decreasing in lexicographic order.
    for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1] > all[i]);
  }
  CHECK(enumerate_partitions(8).size() == 22);
}

TEST_CASE("descent examples") {
  CHECK(descends(D({2, 1, 1}), D({2, 2})));
  CHECK(descends(D({2, 1, 1}), D({3, 1})));
  CHECK(descends(D({2, 1, 1}), D({4})));
  CHECK_FALSE(descends(D({3, 1}), D({2, 2})));
  CHECK_FALSE(descends(D({2, 2}), D({3, 1})));
  CHECK(descends(D({1, 1, 1, 1}), D({4})));
  CHECK_FALSE(descends(D({2, 2}), D({2, 2})));
  CHECK_FALSE(descends(D({4}), D({2, 2})));
  CHECK_FALSE(descends(D({3, 3}), D({4, 1, 1})));
  CHECK_THROWS_AS(descends(D({2, 1}), D({4})), DomainError);
}

TEST_CASE("descends agrees with subset dynamic programming") {
  for (int n = 1; n <= 10; ++n) {
    const auto all = enumerate_partitions(n);
    for (const auto& a : all)
      for (const auto& b : all)
        CHECK(descends(a, b) == (a != b && oracle::coarsens(a.parts(), b.parts())));
  }
}

TEST_CASE("descends is a strict partial order") {
  for (int n = 1; n <= 8; ++n) {
    const auto all = enumerate_partitions(n);
    for (const auto& a : all) {
      CHECK_FALSE(descends(a, a));
      for (const auto& b : all) {
        if (descends(a, b)) {
          CHECK_FALSE(descends(b, a));
          CHECK(b.diversity() < a.diversity());
        }
        for (const auto& c : all)
          if (descends(a, b) && descends(b, c)) CHECK(descends(a, c));
      }
    }
  }
}

TEST_CASE("hasse graph examples") {
  const auto g4 = hasse_graph(4);
  CHECK(g4.nodes.size() == 5);
  CHECK(edge_labels(g4) == std::set<std::pair<std::string, std::string>>{{"1,1,1,1", "2,1,1"},
                                                                        {"2,1,1", "2,2"},
                                                                        {"2,1,1", "3,1"},
                                                                        {"2,2", "4"},
                                                                        {"3,1", "4"}});
  CHECK(edge_labels(hasse_graph(3)) ==
        std::set<std::pair<std::string, std::string>>{{"1,1,1", "2,1"}, {"2,1", "3"}});
  CHECK(edge_labels(hasse_graph(2)) == std::set<std::pair<std::string, std::string>>{{"1,1", "2"}});
  CHECK(hasse_graph(1).edges.empty());
}

TEST_CASE("hasse graph equals the transitive reduction of descends") {
  for (int n = 1; n <= 8; ++n) {
    const auto g = hasse_graph(n);
    std::set<std::pair<std::size_t, std::size_t>> reduction;
    for (std::size_t a = 0; a < g.nodes.size(); ++a)
      for (std::size_t b = 0; b < g.nodes.size(); ++b) {
        if (!descends(g.nodes[a], g.nodes[b])) continue;
        bool covered = true;
        for (std::size_t c = 0; c < g.nodes.size(); ++c)
          if (descends(g.nodes[a], g.nodes[c]) && descends(g.nodes[c], g.nodes[b])) covered = false;
        if (covered) reduction.emplace(a, b);
      }
    CHECK(std::set<std::pair<std::size_t, std::size_t>>(g.edges.begin(), g.edges.end()) == reduction);
  }
}

TEST_CASE("hasse graph structure") {
  const long p[] = {1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
  for (int n = 1; n <= 10; ++n) {
    const auto g = hasse_graph(n);
    CHECK(long(g.nodes.size()) == p[n - 1]);
    std::vector<int> in(g.nodes.size()), out(g.nodes.size());
    std::map<int, int> per_layer;
    for (const auto& d : g.nodes) ++per_layer[d.diversity()];
    for (const auto& [a, b] : g.edges) {
      ++out[a];
      ++in[b];
      CHECK(g.nodes[a].diversity() == g.nodes[b].diversity() + 1);
    }
    int sources = 0, sinks = 0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      if (in[i] == 0) {
        ++sources;
        CHECK(g.nodes[i] == DegeneracyConfiguration::all_distinct(n));
      }
      if (out[i] == 0) {
        ++sinks;
        CHECK(g.nodes[i] == DegeneracyConfiguration::all_equal(n));
      }
      // Every family below the top is covered from the layer above.
      if (g.nodes[i].diversity() < n) CHECK(in[i] >= 1);
    }
    CHECK(sources == 1);
    CHECK(sinks == 1);
    CHECK(per_layer[n] == 1);
    CHECK(per_layer[1] == 1);
    if (n >= 2) CHECK(per_layer[n - 1] == 1);
  }
}

TEST_CASE("closure helpers") {
  CHECK(in_closure(D({2, 1, 1}), D({2, 1, 1})));
  CHECK(in_closure(D({2, 1, 1}), D({4})));
  CHECK_FALSE(in_closure(D({3, 1}), D({2, 2})));
  const auto cl = descendant_closure(D({2, 1, 1}));
  CHECK(cl == std::vector<DegeneracyConfiguration>{D({2, 1, 1}), D({4}), D({3, 1}), D({2, 2})});
  CHECK(descendant_closure(D({4})).size() == 1);
}

TEST_CASE("pure state classification") {
  CHECK(classify_pure(ghz(4)) == D({1, 1, 1, 1}));
  CHECK(classify_pure(dicke(5, 2)) == D({3, 2}));
  CHECK(classify_pure(dicke(4, 1)) == D({3, 1}));
  CHECK(classify_pure(dicke(4, 2)) == D({2, 2}));
  CHECK(classify_pure(tetrahedron_state()) == D({1, 1, 1, 1}));
  const Constellation sep(6, {{BlochPoint::make(1.2, 0.4), 6}});
  CHECK(classify_pure(from_constellation(sep)) == D({6}));
}

TEST_CASE("dot output") {
  const std::string two = to_dot(hasse_graph(2));
  CHECK(two.find("D_{1,1}") != std::string::npos);
  CHECK(two.find("D_{2}") != std::string::npos);
  CHECK(two.find("n1 -> n0") != std::string::npos);

  const std::string four = to_dot(hasse_graph(4));
  auto count = [&](const std::string& s, const std::string& what) {
    std::size_t c = 0;
    for (auto p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++c;
    return c;
  };
  CHECK(count(four, "->") == 5);
  CHECK(count(four, "rank=same") == 4);
  CHECK(count(four, "[label=") == 5);
  // Highest diversity first.
  CHECK(four.find("D_{1,1,1,1}") < four.find("D_{4}"));
  CHECK(four == to_dot(hasse_graph(4)));

  const std::string one = to_dot(hasse_graph(1));
  CHECK(count(one, "->") == 0);
  CHECK(count(one, "[label=") == 1);
}
