#include "hyptrails/hypothesis.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "hyptrails/error.hpp"

namespace hyptrails {

namespace {

constexpr double kEarthRadiusKm = 6371.0088;
constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

std::vector<std::string> split(const std::string& s, char delim) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, delim)) parts.push_back(part);
  return parts;
}

double parse_double(const std::string& s, const std::string& where) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(where + ": not a number: '" + s + "'");
  }
}

// Shared scaffolding for line-oriented "state<TAB>..." tables.
template <typename Fn>
void for_each_table_line(const std::string& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    fn(split(line, '\t'), line_no);
  }
}

}  // namespace

HypothesisMatrix uniform_hypothesis(std::uint32_t m) {
  HypothesisMatrix h(m);
  for (std::uint32_t i = 0; i < m; ++i)
    for (std::uint32_t j = 0; j < m; ++j) h.q.set(i, j, 1.0);
  h.diagonal = 1.0;
  return h;
}

HypothesisMatrix self_loop_hypothesis(std::uint32_t m) {
  HypothesisMatrix h(m);
  for (std::uint32_t i = 0; i < m; ++i) h.q.set(i, i, 1.0);
  h.diagonal = 1.0;
  return h;
}

HypothesisMatrix structural_hypothesis(const AdjacencyGraph& g, double diagonal) {
  HypothesisMatrix h(g.n);
  for (const auto& [key, mult] : g.edges.cells) {
    const auto i = SparseMat<std::uint32_t>::row_of(key, g.n);
    const auto j = SparseMat<std::uint32_t>::col_of(key, g.n);
    if (i != j) h.q.set(i, j, static_cast<double>(mult));
  }
  if (diagonal > 0.0) {
    for (std::uint32_t i = 0; i < g.n; ++i) h.q.set(i, i, diagonal);
    h.diagonal = diagonal;
  }
  return h;
}

HypothesisMatrix popularity_hypothesis(const AdjacencyGraph& g) {
  if (g.n == 0) throw InvalidArgument("popularity hypothesis needs a nonempty graph");
  HypothesisMatrix h(g.n);
  for (const auto& [key, mult] : g.edges.cells) {
    (void)mult;
    const auto i = SparseMat<std::uint32_t>::row_of(key, g.n);
    const auto j = SparseMat<std::uint32_t>::col_of(key, g.n);
    if (g.in_degrees[j] > 0) h.q.set(i, j, static_cast<double>(g.in_degrees[j]));
  }
  return h;
}

HypothesisMatrix cosine_similarity_hypothesis(const RealFeatures& f, double threshold,
                                              double diagonal,
                                              std::vector<std::uint32_t>* zero_norm) {
  const auto m = static_cast<std::uint32_t>(f.rows.size());
  std::vector<double> norms(m, 0.0);
  for (std::uint32_t i = 0; i < m; ++i) {
    if (i > 0 && f.rows[i].size() != f.rows[0].size())
      throw DimensionError("feature vectors have inconsistent dimensions");
    double s = 0.0;
    for (double v : f.rows[i]) s += v * v;
    norms[i] = std::sqrt(s);
    if (norms[i] == 0.0 && zero_norm) zero_norm->push_back(i);
  }
  HypothesisMatrix h(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    if (norms[i] == 0.0) continue;
    for (std::uint32_t j = 0; j < m; ++j) {
      if (i == j || norms[j] == 0.0) continue;
      double dot = 0.0;
      for (std::size_t d = 0; d < f.rows[i].size(); ++d) dot += f.rows[i][d] * f.rows[j][d];
      const double sim = dot / (norms[i] * norms[j]);
      if (sim >= threshold && sim > 0.0) h.q.set(i, j, sim);
    }
  }
  if (diagonal > 0.0) {
    for (std::uint32_t i = 0; i < m; ++i) h.q.set(i, i, diagonal);
    h.diagonal = diagonal;
  }
  return h;
}

HypothesisMatrix jaccard_similarity_hypothesis(const BinaryFeatures& f) {
  const auto m = static_cast<std::uint32_t>(f.rows.size());
  HypothesisMatrix h(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    for (std::uint32_t j = 0; j < m; ++j) {
      if (i == j) continue;  // diagonal stays zero
      const auto& a = f.rows[i];
      const auto& b = f.rows[j];
      if (a.empty() && b.empty()) continue;  // undefined pair, treated as 0
      std::size_t inter = 0;
      for (const auto& tag : a) inter += b.count(tag);
      const std::size_t uni = a.size() + b.size() - inter;
      if (inter > 0) h.q.set(i, j, static_cast<double>(inter) / static_cast<double>(uni));
    }
  }
  return h;
}

double haversine_km(double lat1, double lon1, double lat2, double lon2) {
  const double phi1 = lat1 * kDegToRad;
  const double phi2 = lat2 * kDegToRad;
  const double dphi = (lat2 - lat1) * kDegToRad;
  const double dlmb = (lon2 - lon1) * kDegToRad;
  const double a = std::sin(dphi / 2) * std::sin(dphi / 2) +
                   std::cos(phi1) * std::cos(phi2) * std::sin(dlmb / 2) * std::sin(dlmb / 2);
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(a)));
}

HypothesisMatrix geographic_hypothesis(const GeoTable& geo) {
  const auto m = static_cast<std::uint32_t>(geo.lat.size());
  if (m < 2) throw InvalidArgument("geographic hypothesis needs at least 2 states");
  for (std::uint32_t i = 0; i < m; ++i) {
    if (geo.lat[i] < -90.0 || geo.lat[i] > 90.0 || geo.lon[i] < -180.0 || geo.lon[i] > 180.0)
      throw InvalidArgument("coordinates out of range for state index " + std::to_string(i));
  }
  double max_d = 0.0;
  for (std::uint32_t i = 0; i < m; ++i)
    for (std::uint32_t j = i + 1; j < m; ++j)
      max_d = std::max(max_d, haversine_km(geo.lat[i], geo.lon[i], geo.lat[j], geo.lon[j]));
  if (max_d == 0.0)
    throw DegenerateHypothesis("all states are co-located; geographic hypothesis is degenerate");
  HypothesisMatrix h(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    for (std::uint32_t j = 0; j < m; ++j) {
      if (i == j) continue;
      const double d = haversine_km(geo.lat[i], geo.lon[i], geo.lat[j], geo.lon[j]);
      const double q = 1.0 - d / max_d;
      if (q > 0.0) h.q.set(i, j, q);  // the farthest pair maps to 0 and stays absent
    }
  }
  return h;
}

HypothesisMatrix scalar_proximity_hypothesis(const ScalarTable& values) {
  const auto m = static_cast<std::uint32_t>(values.values.size());
  double max_d = 0.0;
  std::uint32_t with_value = 0;
  for (std::uint32_t i = 0; i < m; ++i) {
    if (std::isnan(values.values[i])) continue;
    ++with_value;
    for (std::uint32_t j = i + 1; j < m; ++j) {
      if (std::isnan(values.values[j])) continue;
      max_d = std::max(max_d, std::abs(values.values[i] - values.values[j]));
    }
  }
  if (with_value < 2) throw InvalidArgument("scalar hypothesis needs at least 2 valued states");
  if (max_d == 0.0)
    throw DegenerateHypothesis("all state values are equal; scalar hypothesis is degenerate");
  HypothesisMatrix h(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    if (std::isnan(values.values[i])) continue;
    for (std::uint32_t j = 0; j < m; ++j) {
      if (i == j || std::isnan(values.values[j])) continue;
      const double q = 1.0 - std::abs(values.values[i] - values.values[j]) / max_d;
      if (q > 0.0) h.q.set(i, j, q);
    }
  }
  return h;
}

HypothesisMatrix read_hypothesis_tsv(const std::string& path, const StateSpace& space) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open hypothesis file: " + path);
  std::string header;
  if (!std::getline(in, header) || header.rfind("m=", 0) != 0)
    throw ParseError(path + ":1: expected header 'm=<int>'");
  const auto m = static_cast<std::uint32_t>(std::stoul(header.substr(2)));
  if (m != space.non_reset_size() && m != space.size())
    throw DimensionError(path + ": matrix size " + std::to_string(m) +
                         " does not match state space of size " +
                         std::to_string(space.size()));
  HypothesisMatrix h(m);
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto parts = split(line, '\t');
    const std::string where = path + ":" + std::to_string(line_no);
    if (parts.size() != 3) throw ParseError(where + ": expected 3 tab-separated fields");
    auto i = space.index_of(parts[0]);
    auto j = space.index_of(parts[1]);
    if (!i || !j) throw DimensionError(where + ": unknown state token");
    if (*i >= m || *j >= m) throw DimensionError(where + ": state outside matrix range");
    const double w = parse_double(parts[2], where);
    if (!(w > 0.0) || !std::isfinite(w))
      throw ParseError(where + ": weights must be positive and finite");
    h.q.set(*i, *j, w);
  }
  return h;
}

void write_hypothesis_tsv(const std::string& path, const HypothesisMatrix& h,
                          const StateSpace& space) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write hypothesis file: " + path);
  out << "m=" << h.m << '\n';
  for (const auto& [key, v] : h.q.cells) {
    const auto i = SparseMat<double>::row_of(key, h.m);
    const auto j = SparseMat<double>::col_of(key, h.m);
    out << space.states.at(i) << '\t' << space.states.at(j) << '\t' << v << '\n';
  }
}

RealFeatures read_real_features(const std::string& path, const StateSpace& space) {
  RealFeatures f;
  f.rows.assign(space.non_reset_size(), {});
  std::vector<bool> seen(space.non_reset_size(), false);
  for_each_table_line(path, [&](const std::vector<std::string>& parts, std::size_t line_no) {
    const std::string where = path + ":" + std::to_string(line_no);
    if (parts.size() != 2) throw ParseError(where + ": expected 'state<TAB>f1,f2,...'");
    auto idx = space.index_of(parts[0]);
    if (!idx || *idx >= space.non_reset_size()) return;  // states outside the corpus are ignored
    std::vector<double> vec;
    for (const auto& field : split(parts[1], ',')) vec.push_back(parse_double(field, where));
    f.rows[*idx] = std::move(vec);
    seen[*idx] = true;
  });
  for (std::uint32_t i = 0; i < seen.size(); ++i)
    if (!seen[i])
      throw DimensionError(path + ": no feature row for state '" + space.states[i] + "'");
  return f;
}

BinaryFeatures read_binary_features(const std::string& path, const StateSpace& space) {
  BinaryFeatures f;
  f.rows.assign(space.non_reset_size(), {});
  for_each_table_line(path, [&](const std::vector<std::string>& parts, std::size_t line_no) {
    if (parts.size() != 2)
      throw ParseError(path + ":" + std::to_string(line_no) +
                       ": expected 'state<TAB>tag1;tag2;...'");
    auto idx = space.index_of(parts[0]);
    if (!idx || *idx >= space.non_reset_size()) return;
    for (const auto& tag : split(parts[1], ';'))
      if (!tag.empty()) f.rows[*idx].insert(tag);
  });
  return f;
}

GeoTable read_geo_table(const std::string& path, const StateSpace& space) {
  GeoTable g;
  const auto m = space.non_reset_size();
  g.lat.assign(m, 0.0);
  g.lon.assign(m, 0.0);
  std::vector<bool> seen(m, false);
  for_each_table_line(path, [&](const std::vector<std::string>& parts, std::size_t line_no) {
    const std::string where = path + ":" + std::to_string(line_no);
    if (parts.size() != 3) throw ParseError(where + ": expected 'state<TAB>lat<TAB>lon'");
    auto idx = space.index_of(parts[0]);
    if (!idx || *idx >= m) return;
    g.lat[*idx] = parse_double(parts[1], where);
    g.lon[*idx] = parse_double(parts[2], where);
    seen[*idx] = true;
  });
  for (std::uint32_t i = 0; i < m; ++i)
    if (!seen[i])
      throw DimensionError(path + ": no coordinates for state '" + space.states[i] + "'");
  return g;
}

ScalarTable read_scalar_table(const std::string& path, const StateSpace& space) {
  ScalarTable s;
  s.values.assign(space.non_reset_size(), std::nan(""));
  for_each_table_line(path, [&](const std::vector<std::string>& parts, std::size_t line_no) {
    const std::string where = path + ":" + std::to_string(line_no);
    if (parts.size() != 2) throw ParseError(where + ": expected 'state<TAB>value'");
    auto idx = space.index_of(parts[0]);
    if (!idx || *idx >= space.non_reset_size()) return;
    s.values[*idx] = parse_double(parts[1], where);
  });
  return s;
}

AdjacencyGraph read_graph_tsv(const std::string& path, const StateSpace& space) {
  AdjacencyGraph g(space.non_reset_size());
  // in-degrees come from the full file so popularity reflects the whole
  // network, not just the observed states
  std::unordered_map<std::string, std::uint64_t> indeg;
  for_each_table_line(path, [&](const std::vector<std::string>& parts, std::size_t line_no) {
    if (parts.size() != 2)
      throw ParseError(path + ":" + std::to_string(line_no) + ": expected 'src<TAB>dst'");
    ++indeg[parts[1]];
    auto i = space.index_of(parts[0]);
    auto j = space.index_of(parts[1]);
    if (i && j && *i < g.n && *j < g.n) g.edges.add(*i, *j, 1);
  });
  for (std::uint32_t j = 0; j < g.n; ++j) {
    auto it = indeg.find(space.states[j]);
    g.in_degrees[j] = it == indeg.end() ? 0 : it->second;
  }
  return g;
}

}  // namespace hyptrails
