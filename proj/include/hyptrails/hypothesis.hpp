#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "hyptrails/sparse.hpp"
#include "hyptrails/trails.hpp"

namespace hyptrails {

// Belief-strength matrix Q. Only relative magnitudes matter; stored entries
// are strictly positive and finite. Builders operate over the non-reset
// states; reset embedding happens at elicitation time.
struct HypothesisMatrix {
  std::uint32_t m = 0;
  SparseMat<double> q;
  double diagonal = 0.0;  // value the builder placed on the diagonal (0 = absent)

  HypothesisMatrix() = default;
  explicit HypothesisMatrix(std::uint32_t dim) : m(dim), q(dim) {}
};

// Per-state feature rows, aligned to state indices 0..m-1.
struct RealFeatures {
  std::vector<std::vector<double>> rows;
};
struct BinaryFeatures {
  std::vector<std::set<std::string>> rows;
};
struct GeoTable {
  std::vector<double> lat;  // degrees, -90..90
  std::vector<double> lon;  // degrees, -180..180
};
struct ScalarTable {
  std::vector<double> values;  // NaN marks a state without a value
};

// Directed multigraph over the non-reset states.
struct AdjacencyGraph {
  std::uint32_t n = 0;
  SparseMat<std::uint32_t> edges;  // multiplicity
  std::vector<std::uint64_t> in_degrees;

  AdjacencyGraph() = default;
  explicit AdjacencyGraph(std::uint32_t nodes)
      : n(nodes), edges(nodes), in_degrees(nodes, 0) {}
  void add_edge(std::uint32_t from, std::uint32_t to) {
    edges.add(from, to, 1);
    ++in_degrees[to];
  }
};

HypothesisMatrix uniform_hypothesis(std::uint32_t m);
HypothesisMatrix self_loop_hypothesis(std::uint32_t m);
HypothesisMatrix structural_hypothesis(const AdjacencyGraph& g, double diagonal);
HypothesisMatrix popularity_hypothesis(const AdjacencyGraph& g);

// Pairs at or above `threshold` keep their cosine similarity. States with a
// zero-norm feature vector are collected into `zero_norm` (their similarities
// count as 0).
HypothesisMatrix cosine_similarity_hypothesis(const RealFeatures& f, double threshold,
                                              double diagonal,
                                              std::vector<std::uint32_t>* zero_norm = nullptr);

HypothesisMatrix jaccard_similarity_hypothesis(const BinaryFeatures& f);

// q_{i,j} = 1 - d_{i,j} / max pairwise haversine distance; diagonal absent.
HypothesisMatrix geographic_hypothesis(const GeoTable& geo);

HypothesisMatrix scalar_proximity_hypothesis(const ScalarTable& values);

// Great-circle distance in km (mean Earth radius 6371.0088 km).
double haversine_km(double lat1, double lon1, double lat2, double lon2);

// --- file formats (tokens are resolved against the given state space) ---

// "state_i<TAB>state_j<TAB>weight" with header "m=<int>".
HypothesisMatrix read_hypothesis_tsv(const std::string& path, const StateSpace& space);
void write_hypothesis_tsv(const std::string& path, const HypothesisMatrix& h,
                          const StateSpace& space);

// "state<TAB>f1,f2,..." per line.
RealFeatures read_real_features(const std::string& path, const StateSpace& space);
// "state<TAB>tag1;tag2;..." per line.
BinaryFeatures read_binary_features(const std::string& path, const StateSpace& space);
// "state<TAB>lat<TAB>lon" per line.
GeoTable read_geo_table(const std::string& path, const StateSpace& space);
// "state<TAB>value" per line.
ScalarTable read_scalar_table(const std::string& path, const StateSpace& space);
// "src<TAB>dst" edge per line; repeated lines raise multiplicity. Tokens
// absent from the state space still contribute to in-degrees.
AdjacencyGraph read_graph_tsv(const std::string& path, const StateSpace& space);

}  // namespace hyptrails
