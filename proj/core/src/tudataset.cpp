#include "extopo/tudataset.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <string_view>
#include <unordered_set>

#include "extopo/error.hpp"

namespace extopo {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void parse_fail(const fs::path& file, std::size_t line_no, const std::string& what) {
  throw IngestError(IngestErrorKind::parse,
                    file.filename().string() + ":" + std::to_string(line_no) + ": " + what);
}

long long parse_int(std::string_view field, const fs::path& file, std::size_t line_no) {
  field = trim(field);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
    parse_fail(file, line_no, "expected an integer, got '" + std::string(field) + "'");
  }
  return value;
}

double parse_real(std::string_view field, const fs::path& file, std::size_t line_no) {
  field = trim(field);
  double value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
    parse_fail(file, line_no, "expected a real number, got '" + std::string(field) + "'");
  }
  return value;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

/// Non-blank lines of a file with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string>> read_lines(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw IngestError(IngestErrorKind::missing_file, "cannot open " + file.string());
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (trim(line).empty()) continue;
    lines.emplace_back(no, line);
  }
  return lines;
}

fs::path locate_dir(const fs::path& root, const std::string& name) {
  const std::string probe = name + "_A.txt";
  if (fs::exists(root / probe)) return root;
  if (fs::exists(root / name / probe)) return root / name;
  return root;
}

fs::path require(const fs::path& dir, const std::string& name, const char* suffix) {
  fs::path p = dir / (name + suffix);
  if (!fs::exists(p)) {
    throw IngestError(IngestErrorKind::missing_file, "missing mandatory file " + p.string());
  }
  return p;
}

}  // namespace

GraphDataset parse_tudataset(const fs::path& root, const std::string& name, IngestReport* report) {
  IngestReport local;
  IngestReport& rep = report ? *report : local;
  rep = IngestReport{};

  const fs::path dir = locate_dir(root, name);
  const fs::path a_file = require(dir, name, "_A.txt");
  const fs::path ind_file = require(dir, name, "_graph_indicator.txt");
  const fs::path lab_file = require(dir, name, "_graph_labels.txt");

  // Graph membership of each global node (1-based ids in the file).
  const auto ind_lines = read_lines(ind_file);
  const std::size_t num_nodes = ind_lines.size();
  std::vector<std::size_t> graph_of(num_nodes);
  std::size_t num_graphs = 0;
  for (std::size_t i = 0; i < num_nodes; ++i) {
    const long long gid = parse_int(ind_lines[i].second, ind_file, ind_lines[i].first);
    if (gid < 1) parse_fail(ind_file, ind_lines[i].first, "graph id must be >= 1");
    graph_of[i] = static_cast<std::size_t>(gid - 1);
    num_graphs = std::max(num_graphs, graph_of[i] + 1);
  }
  std::vector<std::size_t> local_id(num_nodes);
  std::vector<std::size_t> graph_size(num_graphs, 0);
  for (std::size_t i = 0; i < num_nodes; ++i) local_id[i] = graph_size[graph_of[i]]++;

  const auto lab_lines = read_lines(lab_file);
  if (lab_lines.size() != num_graphs) {
    throw IngestError(IngestErrorKind::parse, lab_file.filename().string() + ": expected " +
                                                  std::to_string(num_graphs) + " labels, found " +
                                                  std::to_string(lab_lines.size()));
  }
  std::vector<long long> raw_labels(num_graphs);
  for (std::size_t g = 0; g < num_graphs; ++g) {
    raw_labels[g] = parse_int(lab_lines[g].second, lab_file, lab_lines[g].first);
  }
  std::map<long long, int> label_index;
  for (long long l : raw_labels) label_index.emplace(l, 0);
  {
    int next = 0;
    for (auto& [value, idx] : label_index) idx = next++;
  }

  std::vector<std::vector<Edge>> edges(num_graphs);
  std::unordered_set<std::uint64_t> seen;
  for (const auto& [no, line] : read_lines(a_file)) {
    const auto fields = split_commas(line);
    if (fields.size() != 2) parse_fail(a_file, no, "expected 'i, j'");
    const long long i = parse_int(fields[0], a_file, no);
    const long long j = parse_int(fields[1], a_file, no);
    if (i < 1 || j < 1 || static_cast<std::size_t>(i) > num_nodes || static_cast<std::size_t>(j) > num_nodes) {
      parse_fail(a_file, no, "node id out of range");
    }
    const std::size_t gi = static_cast<std::size_t>(i - 1);
    const std::size_t gj = static_cast<std::size_t>(j - 1);
    if (graph_of[gi] != graph_of[gj]) {
      throw IngestError(IngestErrorKind::cross_graph_edge,
                        a_file.filename().string() + ":" + std::to_string(no) + ": edge (" +
                            std::to_string(i) + ", " + std::to_string(j) + ") crosses graphs");
    }
    if (gi == gj) {
      ++rep.self_loops;
      continue;
    }
    const std::uint64_t directed = (static_cast<std::uint64_t>(gi) << 32) | gj;
    if (!seen.insert(directed).second) {
      ++rep.duplicate_edges;
      continue;
    }
    const std::uint64_t reverse = (static_cast<std::uint64_t>(gj) << 32) | gi;
    if (seen.count(reverse)) continue;  // second direction of an undirected edge
    edges[graph_of[gi]].push_back(
        {static_cast<VertexId>(local_id[gi]), static_cast<VertexId>(local_id[gj])});
  }
  if (rep.duplicate_edges > 0) {
    rep.warnings.push_back(std::to_string(rep.duplicate_edges) + " duplicate edge lines ignored");
  }
  if (rep.self_loops > 0) {
    rep.warnings.push_back(std::to_string(rep.self_loops) + " self-loop lines ignored");
  }

  // Node features.
  std::vector<FeatureMatrix> features(num_graphs);
  const fs::path attr_file = dir / (name + "_node_attributes.txt");
  const fs::path nlab_file = dir / (name + "_node_labels.txt");
  if (fs::exists(attr_file)) {
    rep.feature_source = "node_attributes";
    const auto lines = read_lines(attr_file);
    if (lines.size() != num_nodes) {
      throw IngestError(IngestErrorKind::parse, attr_file.filename().string() + ": row count mismatch");
    }
    const std::size_t dim = split_commas(lines.front().second).size();
    for (std::size_t g = 0; g < num_graphs; ++g) {
      features[g] = FeatureMatrix::Zero(static_cast<Eigen::Index>(graph_size[g]), static_cast<Eigen::Index>(dim));
    }
    for (std::size_t i = 0; i < num_nodes; ++i) {
      const auto fields = split_commas(lines[i].second);
      if (fields.size() != dim) parse_fail(attr_file, lines[i].first, "inconsistent attribute count");
      for (std::size_t c = 0; c < dim; ++c) {
        features[graph_of[i]](static_cast<Eigen::Index>(local_id[i]), static_cast<Eigen::Index>(c)) =
            parse_real(fields[c], attr_file, lines[i].first);
      }
    }
  } else if (fs::exists(nlab_file)) {
    rep.feature_source = "node_labels";
    const auto lines = read_lines(nlab_file);
    if (lines.size() != num_nodes) {
      throw IngestError(IngestErrorKind::parse, nlab_file.filename().string() + ": row count mismatch");
    }
    std::vector<long long> node_label(num_nodes);
    std::map<long long, std::size_t> column;
    for (std::size_t i = 0; i < num_nodes; ++i) {
      // Some datasets carry several label columns; the first one is used.
      node_label[i] = parse_int(split_commas(lines[i].second).front(), nlab_file, lines[i].first);
      column.emplace(node_label[i], 0);
    }
    std::size_t next = 0;
    for (auto& [value, col] : column) col = next++;
    for (std::size_t g = 0; g < num_graphs; ++g) {
      features[g] = FeatureMatrix::Zero(static_cast<Eigen::Index>(graph_size[g]),
                                        static_cast<Eigen::Index>(column.size()));
    }
    for (std::size_t i = 0; i < num_nodes; ++i) {
      features[graph_of[i]](static_cast<Eigen::Index>(local_id[i]),
                            static_cast<Eigen::Index>(column.at(node_label[i]))) = 1.0;
    }
  } else {
    rep.feature_source = "constant";
    for (std::size_t g = 0; g < num_graphs; ++g) {
      features[g] = FeatureMatrix::Ones(static_cast<Eigen::Index>(graph_size[g]), 1);
    }
  }

  GraphDataset ds;
  ds.name = name;
  ds.num_classes = label_index.size();
  ds.graphs.reserve(num_graphs);
  for (std::size_t g = 0; g < num_graphs; ++g) {
    ds.graphs.emplace_back(graph_size[g], std::move(edges[g]), std::move(features[g]),
                           label_index.at(raw_labels[g]));
  }
  return ds;
}

void write_tudataset(const GraphDataset& ds, const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  auto open = [&](const char* suffix) {
    std::ofstream out(dir / (name + suffix), std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / (name + suffix)).string());
    return out;
  };
  std::ofstream a = open("_A.txt");
  std::ofstream ind = open("_graph_indicator.txt");
  std::ofstream lab = open("_graph_labels.txt");
  const bool any_features =
      std::any_of(ds.graphs.begin(), ds.graphs.end(), [](const Graph& g) { return g.has_features(); });
  std::optional<std::ofstream> attr;
  if (any_features) attr = open("_node_attributes.txt");

  std::size_t offset = 1;
  char buf[64];
  for (std::size_t gi = 0; gi < ds.graphs.size(); ++gi) {
    const Graph& g = ds.graphs[gi];
    for (std::size_t v = 0; v < g.num_vertices(); ++v) ind << (gi + 1) << '\n';
    for (const Edge& e : g.edges()) {
      a << (offset + e.u) << ", " << (offset + e.v) << '\n';
      a << (offset + e.v) << ", " << (offset + e.u) << '\n';
    }
    lab << g.graph_label().value_or(0) << '\n';
    if (attr) {
      if (!g.has_features()) throw std::invalid_argument("write_tudataset: mixed feature presence");
      const FeatureMatrix& x = *g.node_features();
      for (Eigen::Index r = 0; r < x.rows(); ++r) {
        for (Eigen::Index c = 0; c < x.cols(); ++c) {
          std::snprintf(buf, sizeof buf, "%.6f", x(r, c));
          *attr << (c ? ", " : "") << buf;
        }
        *attr << '\n';
      }
    }
    offset += g.num_vertices();
  }
}

}  // namespace extopo
