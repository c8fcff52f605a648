#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace extopo::cli {

struct LabeledTable {
  std::vector<std::string> columns;  ///< feature names, label excluded
  Eigen::MatrixXd features;
  std::vector<int> labels;
};

/// Reads the feature CSV format: header row, last column "label".
/// Throws std::runtime_error on malformed input.
LabeledTable read_feature_csv(std::istream& in);
LabeledTable read_feature_csv_file(const std::string& path);

struct LogisticOptions {
  double step = 0.5;
  std::size_t iterations = 400;
  double l2 = 1e-2;
};

/// Multinomial logistic regression trained by full-batch gradient descent
/// on standardized inputs.
class LogisticModel {
 public:
  void fit(const Eigen::MatrixXd& x, const std::vector<int>& y, int num_classes, const LogisticOptions& options = {});
  std::vector<int> predict(const Eigen::MatrixXd& x) const;

 private:
  Eigen::RowVectorXd mean_, scale_;
  Eigen::MatrixXd weights_;  ///< features x classes
  Eigen::RowVectorXd bias_;
};

struct CrossValidation {
  std::vector<double> fold_accuracy;
  double mean = 0.0;
  double stddev = 0.0;
  double majority_rate = 0.0;
  std::size_t reshuffles = 0;
};

/// Stratified k-fold split drawn from `seed`. A split whose training part
/// holds a single class is redrawn with a derived seed (warning on stderr).
std::vector<std::vector<std::size_t>> stratified_folds(const std::vector<int>& labels, std::size_t folds,
                                                       std::uint64_t seed, std::size_t* reshuffles = nullptr);

CrossValidation cross_validate(const LabeledTable& table, std::size_t folds, std::uint64_t seed,
                               const LogisticOptions& options = {});

}  // namespace extopo::cli
