#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "extopo/graph.hpp"
#include "extopo/vectorization.hpp"

namespace extopo {

struct ViewRef {
  std::size_t graph = 0;
  int view = 0;  ///< 0 or 1
  bool operator==(const ViewRef&) const = default;
};

/// Row r of the first Y rows is view 0 of graph r, row Y + r is view 1.
std::vector<ViewRef> paired_layout(std::size_t graphs);

/// 2Y rows of embeddings, two views per graph.
struct EmbeddingBatch {
  Eigen::MatrixXd rows;
  std::vector<ViewRef> view_of;

  /// Throws LossError(shape) for a bad layout and LossError(degenerate) for
  /// a zero row.
  void validate() const;
  /// Row index of the other view of each row's graph.
  std::vector<std::size_t> positives() const;
  std::size_t graphs() const noexcept { return view_of.size() / 2; }
};

/// Stacks view-0 rows over view-1 rows using paired_layout.
EmbeddingBatch make_batch(const Eigen::MatrixXd& first, const Eigen::MatrixXd& second);

/// Raw inputs of the topological branch, same layout rules as EmbeddingBatch
/// but zero rows are allowed.
struct FeatureBatch {
  Eigen::MatrixXd features;
  std::vector<ViewRef> view_of;
};

struct LossConfig {
  double zeta = 0.2;
  double alpha = 1.0;
  double beta = 1.0;
  bool mean = false;  ///< combined loss averages over anchors instead of summing
  /// Throws LossError(config).
  void validate() const;
};

struct NtXentResult {
  double loss = 0.0;             ///< mean over anchors
  Eigen::VectorXd per_anchor;    ///< one entry per row
};

/// Normalized-temperature cross entropy over cosine similarities. The
/// denominator of each anchor runs over all 2Y - 1 other rows, the positive
/// included.
NtXentResult ntxent_loss(const EmbeddingBatch& batch, double zeta);
/// Also writes the gradient of the mean loss with respect to batch.rows.
NtXentResult ntxent_loss(const EmbeddingBatch& batch, double zeta, Eigen::MatrixXd& grad_rows);

/// Smallest value any anchor loss can take with Y graphs: positive
/// similarity 1 and every negative at -1.
double ntxent_lower_bound(std::size_t graphs, double zeta);

/// alpha * sum l_G + beta * sum l_T (means when cfg.mean is set).
/// Throws LossError(alignment) when the view layouts differ.
double combined_loss(const EmbeddingBatch& graph_batch, const EmbeddingBatch& topo_batch, const LossConfig& cfg);

/// Affine layers with rectifiers in between; the last layer is linear.
/// Weights are stored output x input, inputs are rows.
class EtlMlp {
 public:
  EtlMlp() = default;
  /// He-uniform weights, zero biases. widths = {input, hidden..., output}.
  EtlMlp(std::vector<std::size_t> widths, std::uint64_t seed);

  static EtlMlp identity(std::size_t dim);
  static EtlMlp zeros(std::vector<std::size_t> widths);
  /// {input, 128, 128, 64, 64, 32}: five affine layers.
  static std::vector<std::size_t> default_widths(std::size_t input_dim);

  const std::vector<std::size_t>& widths() const noexcept { return widths_; }
  std::size_t num_layers() const noexcept { return weights_.size(); }
  std::size_t input_dim() const noexcept { return widths_.empty() ? 0 : widths_.front(); }
  std::size_t output_dim() const noexcept { return widths_.empty() ? 0 : widths_.back(); }
  const Eigen::MatrixXd& weight(std::size_t layer) const { return weights_.at(layer); }
  const Eigen::VectorXd& bias(std::size_t layer) const { return biases_.at(layer); }

  /// Flat parameters: per layer, weights row-major then biases.
  std::size_t parameter_count() const noexcept;
  Eigen::VectorXd parameters() const;
  void set_parameters(const Eigen::VectorXd& theta);

  /// Throws LossError(shape) when x.cols() differs from the input width.
  Eigen::MatrixXd forward(const Eigen::MatrixXd& x) const;
  /// Gradient with respect to the flat parameters of a loss whose gradient
  /// with respect to forward(x) is grad_out.
  Eigen::VectorXd backward(const Eigen::MatrixXd& x, const Eigen::MatrixXd& grad_out) const;

  /// Plain text: widths line, then every parameter as %.17g.
  void save(std::ostream& out) const;
  static EtlMlp load(std::istream& in);

  bool operator==(const EtlMlp& other) const;

 private:
  std::vector<std::size_t> widths_;
  std::vector<Eigen::MatrixXd> weights_;
  std::vector<Eigen::VectorXd> biases_;
};

/// forward() plus batch validation. Throws LossError(shape | degenerate).
EmbeddingBatch etl_forward(const EtlMlp& mlp, const FeatureBatch& features);

struct GradCheckOptions {
  double h = 1e-5;
  std::size_t samples = 50;
  std::uint64_t seed = 0;
  double floor = 1e-8;
};

struct GradCheckReport {
  double max_rel_error = 0.0;
  double max_abs_error = 0.0;
  std::size_t checked = 0;
  std::size_t skipped_kinks = 0;
};

/// Compares the analytic gradient of the mean NT-Xent loss of
/// etl_forward(mlp, features) against central differences (evaluated in
/// extended precision) on randomly chosen parameters. Parameters whose
/// perturbation changes any rectifier pattern are redrawn. Relative error is
/// |a - n| / max(|a|, |n|, floor).
GradCheckReport grad_check(const EtlMlp& mlp, const FeatureBatch& features, const LossConfig& cfg,
                           const GradCheckOptions& options = {});

/// Central difference of the mean NT-Xent loss along one parameter.
long double finite_difference(const EtlMlp& mlp, const FeatureBatch& features, double zeta, std::size_t index,
                              long double h);

/// `rounds` of closed-neighborhood mean aggregation, a linear map, a
/// rectifier and a mean over vertices. `map` is feature_dim x width.
Eigen::RowVectorXd encode_graph_baseline(const Graph& g, std::size_t rounds, const Eigen::MatrixXd& map);
/// Map drawn from N(0, 1 / feature_dim) with the given seed.
Eigen::RowVectorXd encode_graph_baseline(const Graph& g, std::size_t rounds, std::size_t width, std::uint64_t seed);
Eigen::MatrixXd baseline_map(std::size_t feature_dim, std::size_t width, std::uint64_t seed);

enum class TrainMode { topo, joint, graph };

struct TrainConfig {
  LossConfig loss;
  double step = 1e-2;
  std::size_t epochs = 50;
  std::uint64_t seed = 0;
  double augment_ratio = 0.1;
  FeatureConfig features;
  std::vector<std::size_t> hidden{128, 128, 64, 64};
  std::size_t output_dim = 32;
  std::size_t batch_size = 16;  ///< graphs per step, 0 = whole dataset
  std::size_t encoder_rounds = 2;
  std::size_t encoder_width = 32;

  void validate() const;
};

/// key = value lines; '#' starts a comment. Keys: zeta, alpha, beta, mean,
/// step, epochs, seed, augment_ratio, filtrations (comma list), summary,
/// k_max, samples, image_rows, image_cols, sigma, hidden (comma list),
/// output_dim, batch_size, encoder_rounds, encoder_width.
/// Throws LossError(config) on unknown keys or bad values.
TrainConfig parse_train_config(std::istream& in);
TrainConfig read_train_config(const std::string& path);
void write_train_config(std::ostream& out, const TrainConfig& cfg);

struct TrainResult {
  EtlMlp model;
  EtlMlp initial_model;
  std::vector<double> loss_trace;  ///< one entry per epoch, before that epoch's updates
  FeatureSpace space;
  Eigen::RowVectorXd feature_mean;
  Eigen::RowVectorXd feature_scale;
};

/// Each epoch: shuffle the graphs, and for every batch draw two node-drop
/// views per graph, featurize, standardize with statistics of the original
/// graphs, run the MLP and take one gradient step on the mean NT-Xent loss
/// (topo). joint adds the fixed baseline encoder branch and steps on the
/// combined loss; graph only evaluates the encoder branch. Deterministic in
/// cfg.seed.
TrainResult train(const GraphDataset& ds, const TrainConfig& cfg, TrainMode mode = TrainMode::topo);
TrainResult train_topo(const GraphDataset& ds, const TrainConfig& cfg);

}  // namespace extopo
