#include <doctest.h>

#include <algorithm>
#include <set>
#include <tuple>

#include "oracles.hpp"
#include "rpt/diagram.hpp"

using rpt::canonical_key;
using rpt::enumerate_connected_multigraphs;
using rpt::gauge_invariant_vertex_check;

using rpt::Diagram;
using rpt::Edge;
using rpt::ExternalLeg;
using rpt::LegSignature;
using rpt::ModelSpec;
using rpt::Rational;
using rpt::Variance;
using rpt::Vertex;
using rpt::VertexKind;

namespace {

const ModelSpec kOneType{1, 0, Rational(0)};
const ModelSpec kTwoTypes{1, 1, Rational(1)};

Diagram single_vertex() { return Diagram::make(kOneType, {{0, VertexKind::generic}}, {}, {}); }

Diagram double_edge() {
  return Diagram::make(kOneType, {{0, VertexKind::generic}, {1, VertexKind::generic}},
                       {{0, 1, 0, Variance::upper, Variance::lower},
                        {0, 1, 0, Variance::lower, Variance::upper}},
                       {});
}

Diagram dumbbell() {
  return Diagram::make(kOneType, {{0, VertexKind::generic}, {1, VertexKind::generic}},
                       {{0, 0, 0, Variance::upper, Variance::lower},
                        {0, 1, 0, Variance::upper, Variance::lower},
                        {1, 1, 0, Variance::upper, Variance::lower}},
                       {});
}

}  // namespace

TEST_CASE("construction validates references and normalizes edges") {
  CHECK_THROWS_AS(
      Diagram::make(kOneType, {{0, VertexKind::generic}},
                    {{0, 1, 0, Variance::upper, Variance::lower}}, {}),
      std::invalid_argument);
  CHECK_THROWS_AS(Diagram::make(kOneType, {{0, VertexKind::generic}}, {},
                                {{1, 0, Variance::upper}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Diagram::make(kOneType, {{0, VertexKind::generic}},
                                {{0, 0, 3, Variance::upper, Variance::lower}}, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      Diagram::make(kOneType, {{0, VertexKind::generic}, {0, VertexKind::bare}}, {}, {}),
      std::invalid_argument);

  // Endpoint order is normalized, so the two spellings are equal.
  const Diagram a = Diagram::make(kOneType, {{0, VertexKind::generic}, {1, VertexKind::generic}},
                                  {{1, 0, 0, Variance::upper, Variance::lower}}, {});
  const Diagram b = Diagram::make(kOneType, {{0, VertexKind::generic}, {1, VertexKind::generic}},
                                  {{0, 1, 0, Variance::lower, Variance::upper}}, {});
  CHECK(a == b);
}

TEST_CASE("connectivity") {
  CHECK(is_connected(single_vertex()));
  CHECK(is_connected(Diagram::make(kOneType, {}, {}, {})));
  const Diagram two_isolated =
      Diagram::make(kOneType, {{0, VertexKind::generic}, {1, VertexKind::generic}}, {}, {});
  CHECK_FALSE(is_connected(two_isolated));
  const Diagram joined = Diagram::make(kOneType, {{0, VertexKind::generic}, {1, VertexKind::generic}},
                                       {{0, 1, 0, Variance::upper, Variance::lower}}, {});
  CHECK(is_connected(joined));
}

TEST_CASE("one-particle irreducibility fixtures") {
  CHECK(is_one_particle_irreducible(double_edge()));
  CHECK_FALSE(is_one_particle_irreducible(dumbbell()));
  CHECK(is_one_particle_irreducible(single_vertex()));
  const Diagram two_isolated =
      Diagram::make(kOneType, {{0, VertexKind::generic}, {1, VertexKind::generic}}, {}, {});
  CHECK_THROWS_AS(is_one_particle_irreducible(two_isolated), std::domain_error);
}

TEST_CASE("bridge classification matches edge removal on enumerated multigraphs") {
  int checked = 0;
  rpt::for_each_connected_multigraph(6, 5, false, [&](const Diagram& d) {
    CHECK(is_one_particle_irreducible(d) == oracles::one_particle_irreducible_by_removal(d));
    ++checked;
  });
  CHECK(checked > 100);
}

TEST_CASE("gauge-invariant vertex check") {
  CHECK(gauge_invariant_vertex_check({{0, Variance::upper}, {0, Variance::lower}}));
  CHECK_FALSE(gauge_invariant_vertex_check({{0, Variance::upper}, {0, Variance::upper}}));
  CHECK_FALSE(gauge_invariant_vertex_check(
      {{0, Variance::upper}, {0, Variance::lower}, {1, Variance::upper}}));
  CHECK(gauge_invariant_vertex_check({}));
}

TEST_CASE("identity insertion reproduces the host") {
  // Chain 0 - 1 - 2 with legs on 0 and 2; replace the middle vertex by an
  // identical copy.
  const Diagram host = Diagram::make(
      kOneType,
      {{0, VertexKind::generic}, {1, VertexKind::bare}, {2, VertexKind::generic}},
      {{0, 1, 0, Variance::upper, Variance::lower}, {1, 2, 0, Variance::upper, Variance::lower}},
      {{0, 0, Variance::lower}, {2, 0, Variance::upper}});
  // Boundary order: cut edges sorted by (outside id, type, inside
  // variance): edge to 0 presents the inside variance "lower", edge to 2
  // presents "upper".
  const Diagram replacement = Diagram::make(
      kOneType, {{1, VertexKind::bare}}, {},
      {{1, 0, Variance::lower}, {1, 0, Variance::upper}});
  CHECK(insert_vertex(host, {1}, replacement) == host);
}

TEST_CASE("insertion grafts a chain and keeps the boundary") {
  const Diagram host = Diagram::make(
      kOneType,
      {{0, VertexKind::generic}, {1, VertexKind::bare}, {2, VertexKind::generic}},
      {{0, 1, 0, Variance::upper, Variance::lower}, {1, 2, 0, Variance::upper, Variance::lower}},
      {{0, 0, Variance::lower}, {2, 0, Variance::upper}});
  const Diagram chain = Diagram::make(
      kOneType, {{0, VertexKind::bare}, {1, VertexKind::bare}},
      {{0, 1, 0, Variance::upper, Variance::lower}},
      {{0, 0, Variance::lower}, {1, 0, Variance::upper}});
  const Diagram grafted = insert_vertex(host, {1}, chain);
  CHECK(grafted.vertices().size() == host.vertices().size() + 1);
  CHECK(grafted.el() == host.el());
  CHECK(grafted.external_signature() == host.external_signature());
  CHECK(is_connected(grafted));
}

TEST_CASE("insertion signature mismatches are rejected") {
  const Diagram host = Diagram::make(
      kOneType,
      {{0, VertexKind::generic}, {1, VertexKind::bare}, {2, VertexKind::generic}},
      {{0, 1, 0, Variance::upper, Variance::lower}, {1, 2, 0, Variance::upper, Variance::lower}},
      {});
  // Variance order flipped relative to the boundary.
  const Diagram flipped = Diagram::make(
      kOneType, {{1, VertexKind::bare}}, {},
      {{1, 0, Variance::upper}, {1, 0, Variance::lower}});
  CHECK_THROWS_AS(insert_vertex(host, {1}, flipped), std::invalid_argument);
  CHECK_THROWS_AS(insert_vertex(host, {}, flipped), std::invalid_argument);
  CHECK_THROWS_AS(insert_vertex(host, {9}, flipped), std::invalid_argument);

  // Host legs may not sit inside the replaced region.
  const Diagram legged = Diagram::make(
      kOneType,
      {{0, VertexKind::generic}, {1, VertexKind::bare}, {2, VertexKind::generic}},
      {{0, 1, 0, Variance::upper, Variance::lower}, {1, 2, 0, Variance::upper, Variance::lower}},
      {{1, 0, Variance::upper}});
  const Diagram copy = Diagram::make(
      kOneType, {{1, VertexKind::bare}}, {},
      {{1, 0, Variance::lower}, {1, 0, Variance::upper}});
  CHECK_THROWS_AS(insert_vertex(legged, {1}, copy), std::invalid_argument);
}

TEST_CASE("random insertions never change the external signature") {
  for (unsigned seed = 0; seed < 8; ++seed) {
    oracles::RationalSource source(3000 + seed);
    // Host: triangle with a pendant leg vertex.
    const Diagram host = Diagram::make(
        kOneType,
        {{0, VertexKind::generic}, {1, VertexKind::generic}, {2, VertexKind::generic}},
        {{0, 1, 0, Variance::upper, Variance::lower},
         {1, 2, 0, Variance::upper, Variance::lower},
         {0, 2, 0, Variance::upper, Variance::lower}},
        {{0, 0, Variance::upper}, {0, 0, Variance::lower}});
    const int picked = source.uniform(1, 2);
    // Identity-style replacement built from the picked vertex's boundary.
    std::vector<rpt::ExternalLeg> legs;
    struct Boundary {
      int outside;
      int type;
      Variance inside;
    };
    std::vector<Boundary> boundary;
    for (const Edge& e : host.edges()) {
      if (e.u == picked && e.v != picked) boundary.push_back({e.v, e.type, e.var_u});
      if (e.v == picked && e.u != picked) boundary.push_back({e.u, e.type, e.var_v});
    }
    std::stable_sort(boundary.begin(), boundary.end(), [](const Boundary& a, const Boundary& b) {
      return std::tie(a.outside, a.type, a.inside) < std::tie(b.outside, b.type, b.inside);
    });
    legs.reserve(boundary.size());
    for (const Boundary& b : boundary) legs.push_back({picked, b.type, b.inside});
    const Diagram replacement =
        Diagram::make(kOneType, {{picked, VertexKind::generic}}, {}, legs);
    const Diagram result = insert_vertex(host, {picked}, replacement);
    CHECK(result == host);
    CHECK(result.external_signature() == host.external_signature());
  }
}

TEST_CASE("break_line inserts a gauge-invariant bare vertex") {
  // Two-vertex vacuum diagram of mixed types.
  const Diagram vacuum = Diagram::make(
      kTwoTypes, {{0, VertexKind::bare}, {1, VertexKind::bare}},
      {{0, 1, 0, Variance::upper, Variance::lower},
       {0, 1, 0, Variance::lower, Variance::upper}},
      {});
  const auto terms = break_line(vacuum, 0, 1);
  CHECK(terms.with_loop.vertices().size() == 3);
  CHECK(terms.with_loop.el() == 0);
  CHECK(terms.with_loop.edges().size() == 4);
  CHECK(terms.counterterm.subtracted);
  CHECK(terms.counterterm.diagram == terms.with_loop);

  // The inserted vertex has the fresh maximal id and must pass the
  // gauge-invariance check; here every vertex does.
  CHECK(gauge_invariant_vertex_check(vertex_signature(terms.with_loop, 2)));
  for (const Vertex& v : terms.with_loop.vertices()) {
    CHECK(gauge_invariant_vertex_check(vertex_signature(terms.with_loop, v.id)));
  }

  CHECK_THROWS_AS(break_line(vacuum, 5, 0), std::out_of_range);
  CHECK_THROWS_AS(break_line(vacuum, -1, 0), std::out_of_range);
  CHECK_THROWS_AS(break_line(vacuum, 0, 7), std::invalid_argument);
}

TEST_CASE("the broken-line vertex is gauge invariant on every enumerated line") {
  rpt::for_each_connected_multigraph(4, 3, false, [&](const Diagram& d) {
    for (int e = 0; e < static_cast<int>(d.edges().size()); ++e) {
      const auto terms = break_line(d, e, 0);
      int fresh = 0;
      for (const Vertex& v : terms.with_loop.vertices()) fresh = std::max(fresh, v.id);
      CHECK(gauge_invariant_vertex_check(vertex_signature(terms.with_loop, fresh)));
      CHECK(terms.with_loop.el() == d.el());
    }
  });
}

TEST_CASE("prime classification") {
  const Diagram mass = Diagram::make(
      kTwoTypes, {{0, VertexKind::generic}, {1, VertexKind::generic}},
      {{0, 1, 0, Variance::upper, Variance::lower},
       {0, 1, 0, Variance::lower, Variance::upper}},
      {{0, 0, Variance::upper}, {1, 0, Variance::lower}});
  CHECK(is_prime(mass));

  const Diagram mixed_legs = Diagram::make(
      kTwoTypes, {{0, VertexKind::generic}, {1, VertexKind::generic}},
      {{0, 1, 0, Variance::upper, Variance::lower},
       {0, 1, 0, Variance::lower, Variance::upper}},
      {{0, 0, Variance::upper}, {1, 1, Variance::lower}});
  CHECK_FALSE(is_prime(mixed_legs));

  // Disjoint union of two vacuum pieces factorizes.
  const Diagram vacuum_union = Diagram::make(
      kOneType, {{0, VertexKind::generic}, {1, VertexKind::generic}},
      {{0, 0, 0, Variance::upper, Variance::lower}, {1, 1, 0, Variance::upper, Variance::lower}},
      {});
  CHECK_FALSE(is_prime(vacuum_union));
  CHECK(factorizes(vacuum_union));
  CHECK_FALSE(factorizes(mass));

  // Disconnected but with unbalanced legs on any split: no gauge-invariant
  // factorization, still not prime (clause one fails).
  const Diagram odd_split = Diagram::make(
      kOneType, {{0, VertexKind::generic}, {1, VertexKind::generic}}, {},
      {{0, 0, Variance::upper}, {1, 0, Variance::lower}});
  CHECK_FALSE(factorizes(odd_split));
  CHECK_FALSE(is_prime(odd_split));
}

TEST_CASE("vacuum diagrams with no legs are prime when connected") {
  CHECK(is_prime(double_edge()));
  CHECK(is_prime(single_vertex()));
}

TEST_CASE("vertex ids need not be contiguous") {
  const Diagram sparse_ids = Diagram::make(
      kOneType, {{5, VertexKind::generic}, {9, VertexKind::generic}},
      {{9, 5, 0, Variance::upper, Variance::lower}, {5, 9, 0, Variance::upper, Variance::lower}},
      {{9, 0, Variance::upper}});
  CHECK(is_connected(sparse_ids));
  CHECK(is_one_particle_irreducible(sparse_ids));
  CHECK(sparse_ids.el() == 1);

  const auto terms = break_line(sparse_ids, 0, 0);
  CHECK(terms.with_loop.has_vertex(10));
  CHECK(is_connected(terms.with_loop));
}

TEST_CASE("canonical keys are label independent and guarded") {
  const Diagram a = Diagram::make(kOneType, {{0, VertexKind::generic}, {1, VertexKind::generic}},
                                  {{0, 0, 0, Variance::upper, Variance::lower},
                                   {0, 1, 0, Variance::upper, Variance::lower}},
                                  {});
  const Diagram b = Diagram::make(kOneType, {{0, VertexKind::generic}, {1, VertexKind::generic}},
                                  {{1, 1, 0, Variance::upper, Variance::lower},
                                   {1, 0, 0, Variance::upper, Variance::lower}},
                                  {});
  CHECK(canonical_key(a) == canonical_key(b));
  CHECK(canonical_key(a) != canonical_key(double_edge()));

  std::vector<Vertex> many;
  for (int i = 0; i < 9; ++i) many.push_back({i, VertexKind::generic});
  const Diagram big = Diagram::make(kOneType, many, {}, {});
  CHECK_THROWS_AS(canonical_key(big), std::domain_error);
}

TEST_CASE("multigraph enumeration counts and determinism") {
  const auto two = enumerate_connected_multigraphs(1, 2);
  CHECK(two.size() == 2);
  CHECK(two[0].vertices().size() == 1);  // self-loop first
  CHECK(two[0].edges().size() == 1);
  CHECK(two[1].vertices().size() == 2);

  CHECK(enumerate_connected_multigraphs(2, 2).size() == 5);

  CHECK_THROWS_AS(enumerate_connected_multigraphs(8, 2), std::out_of_range);
  CHECK_THROWS_AS(enumerate_connected_multigraphs(2, 7), std::out_of_range);

  const auto again = enumerate_connected_multigraphs(2, 2);
  const auto first = enumerate_connected_multigraphs(2, 2);
  REQUIRE(again.size() == first.size());
  for (size_t i = 0; i < again.size(); ++i) CHECK(again[i] == first[i]);

  // Canonical representatives are pairwise non-isomorphic as skeletons
  // (variances made symmetric first, since the enumeration decorates
  // every line upper-lower and relabeling flips decorated endpoints),
  // and the labeled stream covers exactly the same classes.
  const auto skeleton_key = [](const Diagram& d) {
    std::vector<Edge> stripped;
    for (Edge e : d.edges()) {
      e.var_u = Variance::upper;
      e.var_v = Variance::upper;
      stripped.push_back(e);
    }
    return canonical_key(
        Diagram::make(d.model(), d.vertices(), stripped, d.external_legs()));
  };
  std::set<std::string> keys;
  for (const Diagram& d : enumerate_connected_multigraphs(3, 3)) {
    CHECK(keys.insert(skeleton_key(d)).second);
  }
  std::set<std::string> labeled_keys;
  for (const Diagram& d : enumerate_connected_multigraphs(3, 3, true)) {
    labeled_keys.insert(skeleton_key(d));
  }
  CHECK(labeled_keys == keys);
}

TEST_CASE("pairing counts") {
  CHECK(rpt::count_pairings(0) == 1);
  CHECK(rpt::count_pairings(4) == 3);
  CHECK(rpt::count_pairings(5) == 0);
  CHECK(rpt::count_pairings(8) == 105);
  for (int k = 0; k <= 8; ++k) {
    rpt::BigInt reference = rpt::factorial(2 * k);
    rpt::BigInt denom = rpt::factorial(k);
    mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
    CHECK(rpt::count_pairings(2 * k) * denom == reference);
  }
  for (int k = 0; k <= 5; ++k) {
    CHECK(rpt::count_pairings(2 * k) == oracles::matchings_by_enumeration(2 * k));
  }
}
