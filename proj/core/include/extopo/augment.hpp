#pragma once

#include <cstdint>

#include "extopo/graph.hpp"

namespace extopo {

enum class AugmentKind { node_drop, edge_drop };

struct AugmentationSpec {
  AugmentKind kind = AugmentKind::node_drop;
  double ratio = 0.1;  ///< in [0, 1)
  std::uint64_t seed = 0;
};

/// node_drop removes floor(ratio * N) uniformly chosen vertices together with
/// their edges and compacts the surviving ids in increasing order.
/// edge_drop removes floor(ratio * |E|) uniformly chosen edges.
/// Throws AugmentError(empty) for an empty graph, AugmentError(ratio) for a
/// ratio outside [0, 1).
Graph augment(const Graph& g, const AugmentationSpec& spec);

/// Adds i.i.d. N(mean, std^2) noise to every node feature of
/// floor(fraction * |ds|) graphs chosen uniformly with the given seed.
/// Labels and topology are untouched.
/// Throws NoiseError(no_features) if any graph lacks features.
GraphDataset inject_feature_noise(const GraphDataset& ds, double fraction, double mean, double stddev,
                                  std::uint64_t seed);

}  // namespace extopo
