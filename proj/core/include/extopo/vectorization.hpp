#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "extopo/filtration.hpp"
#include "extopo/persistence.hpp"

namespace extopo {

/// Generating function of one diagram point. For b < d: a hat of height
/// (d - b) / 2 over [b, d], slopes +-1. For d < b: the hat over [d, b],
/// negated. Zero-persistence points give 0 everywhere.
double tent(const EpdPoint& p, double t) noexcept;

/// `samples` evenly spaced points over `range`, or over
/// [min coordinate, max coordinate] of the diagram when no range is given.
struct UniformGrid {
  std::size_t samples = 50;
  std::optional<std::pair<double, double>> range;
};

/// Sorted distinct coordinates of the diagram plus the midpoint of every
/// consecutive pair (2 tau - 1 samples). Length depends on the diagram.
struct CriticalGrid {};

using GridSpec = std::variant<UniformGrid, CriticalGrid>;

/// Throws VectorizeError(grid) when the resulting grid would be empty.
std::vector<double> make_grid(const ExtendedPersistenceDiagram& d, const GridSpec& spec);

/// Sampled extended landscape. Row k of pos_levels is lambda_{k+1} over the
/// points with b < d (non-negative, non-increasing in k); row j of
/// neg_levels is lambda_{-(j+1)} over the points with d < b (non-positive,
/// most negative first).
struct LandscapeSet {
  std::size_t k_max = 0;
  std::vector<double> t_grid;
  Eigen::MatrixXd pos_levels;  ///< k_max x |t_grid|
  Eigen::MatrixXd neg_levels;  ///< k_max x |t_grid|
};

/// Throws VectorizeError(grid) for an empty grid and VectorizeError(params)
/// for k_max == 0.
LandscapeSet landscape(const ExtendedPersistenceDiagram& d, std::size_t k_max, const GridSpec& grid);
LandscapeSet landscape_on_grid(const ExtendedPersistenceDiagram& d, std::size_t k_max, std::vector<double> t_grid);

enum class ImageWeight { persistence, constant };

struct ImageBounds {
  double b_min = 0.0;
  double b_max = 1.0;
  double d_min = 0.0;
  double d_max = 1.0;
};

struct ImageParams {
  std::size_t rows = 50;
  std::size_t cols = 50;
  std::optional<double> sigma;        ///< default: 0.05 x max coordinate spread
  ImageWeight weight = ImageWeight::persistence;
  std::optional<ImageBounds> bounds;  ///< default: bounding box padded by pad_sigmas * sigma
  double pad_sigmas = 3.0;
  bool include_zero_persistence = false;
};

/// Pixel (r, c) covers birth in [x_c, x_{c+1}) and death in [y_r, y_{r+1});
/// columns follow birth, rows follow death, both increasing. Points stay in
/// the raw (birth, death) plane, so below-diagonal points land below it.
struct PersistenceImage {
  std::size_t rows = 0;
  std::size_t cols = 0;
  ImageBounds bounds;
  double sigma_x = 0.0;
  double sigma_y = 0.0;
  Eigen::MatrixXd pixels;
};

/// Sum over points of f(mu) times the Gaussian mass inside each pixel,
/// integrated exactly per axis with the normal CDF.
/// Throws VectorizeError(sigma | resolution).
PersistenceImage persistence_image(const ExtendedPersistenceDiagram& d, const ImageParams& params);

/// 0.05 x the larger side of the bounding box of all points; 0.05 when the
/// box is degenerate.
double default_sigma(std::span<const ExtendedPersistenceDiagram> diagrams);

enum class SummaryKind { EPL, EPI };
const char* to_string(SummaryKind kind) noexcept;
std::optional<SummaryKind> parse_summary_kind(std::string_view token) noexcept;

struct FeatureConfig {
  std::vector<std::string> filtrations{"degree"};
  SummaryKind summary = SummaryKind::EPL;
  std::size_t k_max = 2;
  std::size_t samples = 50;
  std::size_t image_rows = 50;
  std::size_t image_cols = 50;
  std::optional<double> sigma;
  ImageWeight weight = ImageWeight::persistence;
  BundleOptions bundle;
};

struct FeatureBlock {
  std::string function_name;
  SummaryKind summary = SummaryKind::EPL;
  std::vector<std::size_t> shape;  ///< EPL: {2, k_max, samples}; EPI: {rows, cols}
  std::size_t size() const noexcept;
};

struct FeatureVector {
  std::vector<double> values;
  std::vector<FeatureBlock> layout;
};

/// Grids and image bounds shared by every graph featurized with it.
struct FeatureSpace {
  FeatureConfig config;
  std::vector<std::pair<double, double>> landscape_ranges;  ///< per filtration
  std::vector<ImageBounds> image_bounds;                     ///< per filtration
  std::vector<double> sigmas;                                ///< per filtration

  std::size_t dimension() const noexcept;
  std::vector<FeatureBlock> layout() const;
  /// "{function}:{summary}:{index}" for every coordinate.
  std::vector<std::string> column_names() const;
};

/// Computes the diagrams of every graph once and fixes per-filtration
/// ranges: the landscape grid spans all coordinates seen, images get the
/// padded bounding box and a relative sigma. Pass the training split only.
FeatureSpace fit_feature_space(std::span<const Graph> graphs, const FeatureConfig& config);
/// Same, from precomputed diagrams (outer index graph, inner index filtration).
FeatureSpace fit_feature_space(const std::vector<std::vector<ExtendedPersistenceDiagram>>& diagrams,
                               const FeatureConfig& config);

FeatureVector featurize_diagrams(std::span<const ExtendedPersistenceDiagram> diagrams, const FeatureSpace& space);
FeatureVector featurize(const Graph& g, const FiltrationBundle& bundle, const FeatureSpace& space);
/// Builds the bundle from space.config and featurizes.
FeatureVector featurize(const Graph& g, const FeatureSpace& space);

/// Header row of column names followed by "label"; one row per graph,
/// reals as %.9g, label as an integer (-1 when absent).
void write_feature_csv(std::ostream& out, const FeatureSpace& space, std::span<const FeatureVector> rows,
                       std::span<const int> labels);

}  // namespace extopo
