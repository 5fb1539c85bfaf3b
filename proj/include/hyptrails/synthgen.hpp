#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyptrails/trails.hpp"

namespace hyptrails {

struct DirectedGraph {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint64_t> in_degree;
  std::vector<std::string> tokens;  // empty -> default "n<i>" naming

  std::uint32_t node_count() const { return static_cast<std::uint32_t>(out.size()); }
  std::uint64_t edge_count() const;
  std::string token(std::uint32_t node) const;
};

struct GeneratorConfig {
  std::uint32_t n_nodes = 10000;
  std::uint32_t m_out = 10;
  std::uint32_t clique = 11;
  std::uint32_t n_trails = 1000;
  std::uint32_t trail_len = 5;
  double temperature = 10.0;  // softmax smoothing for the popularity walk
  std::uint64_t seed = 0;
  bool teleport_self = false;  // allow teleporting onto the current node

  void validate() const;  // throws InvalidArgument
};

// Preferential attachment: complete directed clique on `clique` nodes, then
// each new node draws m_out distinct targets with probability proportional
// to in-degree + 1.
DirectedGraph price_network(const GeneratorConfig& cfg);

// Walks return node-index sequences; token conversion is `node_token`.
using NodeTrail = std::vector<std::uint32_t>;

std::vector<NodeTrail> structural_walk(const DirectedGraph& g, const GeneratorConfig& cfg);

// Next node drawn among out-neighbors with weight exp(in_degree / T),
// max-shifted before exponentiation.
std::vector<NodeTrail> popularity_walk(const DirectedGraph& g, const GeneratorConfig& cfg);

// Topology-free: each step uniform over all nodes, excluding the current one
// unless cfg.teleport_self is set.
std::vector<NodeTrail> teleportation_walk(std::uint32_t n_nodes, const GeneratorConfig& cfg);

std::string node_token(std::uint32_t node);
std::vector<RawTrail> to_raw_trails(const std::vector<NodeTrail>& trails,
                                    const DirectedGraph* g = nullptr);

// TSV edge list "src<TAB>dst", one line per edge (parallel edges repeat).
void write_graph_tsv(const std::string& path, const DirectedGraph& g);
DirectedGraph read_graph_edge_list(const std::string& path);

}  // namespace hyptrails
