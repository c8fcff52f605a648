#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "extopo/graph.hpp"

namespace extopo {

/// Non-fatal findings while reading a TUDataset directory.
struct IngestReport {
  std::size_t duplicate_edges = 0;  ///< repeated (i, j) lines, beyond the reverse copy
  std::size_t self_loops = 0;       ///< dropped (i, i) lines
  std::string feature_source;       ///< "node_attributes", "node_labels" or "constant"
  std::vector<std::string> warnings;
};

/// Reads `<name>_A.txt`, `<name>_graph_indicator.txt`, `<name>_graph_labels.txt`
/// and, when present, `<name>_node_attributes.txt` / `<name>_node_labels.txt`
/// from `root` (or from `root/<name>/`).
///
/// Vertices are re-indexed from 0 inside each graph in file order. Node
/// attributes become the feature matrix; otherwise node labels are one-hot
/// encoded over the sorted set of label values; otherwise every vertex gets a
/// single 1.0 feature. Graph labels are remapped to 0..C-1 in sorted order.
///
/// Throws IngestError(missing_file | cross_graph_edge | parse).
GraphDataset parse_tudataset(const std::filesystem::path& root, const std::string& name,
                             IngestReport* report = nullptr);

/// Writes the dataset back in the same format: 1-based ids, both directions
/// of every edge in `_A.txt` as "i, j", integer labels verbatim, and node
/// features as `_node_attributes.txt` with %.6f columns.
void write_tudataset(const GraphDataset& ds, const std::filesystem::path& dir, const std::string& name);

}  // namespace extopo
