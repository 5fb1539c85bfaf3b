#include <doctest.h>

#include <cmath>

#include "hyptrails/error.hpp"
#include "hyptrails/hypothesis.hpp"

using namespace hyptrails;

TEST_CASE("uniform hypothesis fills every cell") {
  auto h2 = uniform_hypothesis(2);
  CHECK(h2.q.nnz() == 4);
  for (std::uint32_t i = 0; i < 2; ++i)
    for (std::uint32_t j = 0; j < 2; ++j) CHECK(h2.q.get(i, j) == 1.0);
  CHECK(uniform_hypothesis(5).q.nnz() == 25);
}

TEST_CASE("self-loop hypothesis is diagonal only") {
  auto h = self_loop_hypothesis(3);
  CHECK(h.q.nnz() == 3);
  for (std::uint32_t i = 0; i < 3; ++i) CHECK(h.q.get(i, i) == 1.0);
  CHECK(h.q.get(0, 1) == 0.0);
  CHECK(self_loop_hypothesis(5).q.nnz() == 5);
}

TEST_CASE("structural hypothesis from edges") {
  AdjacencyGraph g(2);
  g.add_edge(0, 1);
  auto h = structural_hypothesis(g, 0.0);
  CHECK(h.q.nnz() == 1);
  CHECK(h.q.get(0, 1) == 1.0);

  g.add_edge(0, 1);  // parallel edge
  auto h2 = structural_hypothesis(g, 0.0);
  CHECK(h2.q.get(0, 1) == 2.0);

  auto h3 = structural_hypothesis(g, 1.0);
  CHECK(h3.q.nnz() == 1 + 2);  // edge + both diagonal cells
  CHECK(h3.q.get(0, 0) == 1.0);
  CHECK(h3.q.get(1, 1) == 1.0);
}

TEST_CASE("popularity hypothesis weights by in-degree") {
  // star: spokes 1..4 all link to hub 0, hub links back to spoke 1
  AdjacencyGraph g(5);
  for (std::uint32_t s = 1; s <= 4; ++s) g.add_edge(s, 0);
  g.add_edge(0, 1);
  auto h = popularity_hypothesis(g);
  for (std::uint32_t s = 1; s <= 4; ++s) CHECK(h.q.get(s, 0) == 4.0);
  CHECK(h.q.get(0, 1) == 1.0);
}

TEST_CASE("popularity drops zero in-degree targets") {
  // in-degrees may come from a larger graph than the state space, so an edge
  // can point at a node whose tracked in-degree is zero
  AdjacencyGraph g(3);
  g.edges.set(0, 1, 1);
  g.edges.set(1, 2, 1);
  g.in_degrees = {0, 1, 0};
  auto h = popularity_hypothesis(g);
  CHECK(h.q.get(0, 1) == 1.0);
  CHECK(h.q.get(1, 2) == 0.0);
  CHECK(h.q.nnz() == 1);
}

TEST_CASE("cosine similarity with threshold") {
  RealFeatures f;
  f.rows = {{1.0, 0.0}, {2.0, 0.0}, {0.0, 3.0}, {1.0, 1.0}};
  auto h = cosine_similarity_hypothesis(f, 0.1, 0.0);
  CHECK(h.q.get(0, 1) == doctest::Approx(1.0));  // parallel vectors
  CHECK(h.q.get(0, 2) == 0.0);                   // orthogonal, below threshold
  CHECK(h.q.get(0, 3) == doctest::Approx(std::sqrt(0.5)));
  CHECK(h.q.get(0, 0) == 0.0);  // diagonal off by default

  auto hd = cosine_similarity_hypothesis(f, 0.1, 1.0);
  for (std::uint32_t i = 0; i < 4; ++i) CHECK(hd.q.get(i, i) == 1.0);
}

TEST_CASE("cosine threshold prunes sub-threshold pairs") {
  RealFeatures f;
  f.rows = {{1.0, 0.0}, {0.05, 1.0}};
  CHECK(cosine_similarity_hypothesis(f, 0.1, 0.0).q.nnz() == 0);
  CHECK(cosine_similarity_hypothesis(f, 0.01, 0.0).q.nnz() == 2);
}

TEST_CASE("cosine reports zero-norm vectors") {
  RealFeatures f;
  f.rows = {{1.0, 0.0}, {0.0, 0.0}};
  std::vector<std::uint32_t> zero_norm;
  auto h = cosine_similarity_hypothesis(f, 0.1, 0.0, &zero_norm);
  CHECK(zero_norm == std::vector<std::uint32_t>{1});
  CHECK(h.q.nnz() == 0);
}

TEST_CASE("jaccard similarity") {
  BinaryFeatures f;
  f.rows = {{"r", "b"}, {"r"}, {"g"}, {"r", "b"}, {}};
  auto h = jaccard_similarity_hypothesis(f);
  CHECK(h.q.get(0, 1) == doctest::Approx(0.5));
  CHECK(h.q.get(1, 0) == doctest::Approx(0.5));
  CHECK(h.q.get(0, 2) == 0.0);  // disjoint
  CHECK(h.q.get(0, 3) == doctest::Approx(1.0));
  CHECK(h.q.get(0, 0) == 0.0);  // diagonal stays zero
  CHECK(h.q.get(4, 4) == 0.0);  // empty-vs-empty pair skipped
  CHECK(h.q.get(0, 4) == 0.0);
}

TEST_CASE("haversine quarter meridian") {
  CHECK(haversine_km(0, 0, 0, 90) == doctest::Approx(10007.543).epsilon(1e-4));
  CHECK(haversine_km(0, 0, 90, 0) == doctest::Approx(10007.543).epsilon(1e-4));
  CHECK(haversine_km(48.2, 16.37, 48.2, 16.37) == 0.0);
}

TEST_CASE("geographic hypothesis normalization") {
  GeoTable geo;
  geo.lat = {0.0, 0.0, 0.0, 45.0};
  geo.lon = {0.0, 0.0, 90.0, 10.0};
  auto h = geographic_hypothesis(geo);
  CHECK(h.q.get(0, 1) == doctest::Approx(1.0));  // co-located pair
  CHECK(h.q.get(0, 2) == 0.0);                   // farthest pair is absent
  CHECK(h.q.get(2, 0) == 0.0);
  CHECK(h.q.get(0, 0) == 0.0);  // diagonal absent
  CHECK(h.q.get(0, 3) > 0.0);
}

TEST_CASE("geographic hypothesis degenerates when co-located") {
  GeoTable geo;
  geo.lat = {10.0, 10.0};
  geo.lon = {20.0, 20.0};
  CHECK_THROWS_AS(geographic_hypothesis(geo), DegenerateHypothesis);
}

TEST_CASE("scalar proximity hypothesis") {
  ScalarTable v;
  v.values = {1980.0, 1990.0, 2000.0};
  auto h = scalar_proximity_hypothesis(v);
  CHECK(h.q.get(0, 1) == doctest::Approx(0.5));
  CHECK(h.q.get(1, 2) == doctest::Approx(0.5));
  CHECK(h.q.get(0, 2) == 0.0);  // extreme pair absent
  CHECK(h.q.get(0, 0) == 0.0);

  ScalarTable same;
  same.values = {5.0, 5.0};
  CHECK_THROWS_AS(scalar_proximity_hypothesis(same), DegenerateHypothesis);
}

TEST_CASE("scalar hypothesis skips states without values") {
  ScalarTable v;
  v.values = {1980.0, std::nan(""), 2000.0};
  auto h = scalar_proximity_hypothesis(v);
  CHECK(h.q.get(0, 1) == 0.0);
  CHECK(h.q.get(1, 2) == 0.0);
  // pair with equal values would be 1, extreme pair absent; here only (0,2) exists and is extreme
  CHECK(h.q.nnz() == 0);
}

TEST_CASE("symmetric inputs give symmetric matrices") {
  GeoTable geo;
  geo.lat = {0.0, 10.0, -5.0, 47.0};
  geo.lon = {0.0, 10.0, 80.0, -122.0};
  auto h = geographic_hypothesis(geo);
  for (std::uint32_t i = 0; i < 4; ++i)
    for (std::uint32_t j = 0; j < 4; ++j)
      CHECK(h.q.get(i, j) == doctest::Approx(h.q.get(j, i)));
}
