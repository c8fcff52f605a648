// Acceptance criteria that run on the MUTAG dataset. The directory comes from
// EXTOPO_MUTAG_DIR, else <source>/data/MUTAG. Without it every criterion here
// is reported as FAIL.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "extopo/contrastive.hpp"
#include "extopo/error.hpp"
#include "extopo/filtration.hpp"
#include "extopo/persistence.hpp"
#include "extopo/tudataset.hpp"
#include "extopo_cli/cli.hpp"
#include "report.hpp"
#include "temp_dir.hpp"

using namespace extopo;
using acceptance::fmt;
namespace fs = std::filesystem;

namespace {

fs::path dataset_dir() {
  if (const char* env = std::getenv("EXTOPO_MUTAG_DIR"); env && *env) return env;
  return fs::path(EXTOPO_SOURCE_DIR) / "data" / "MUTAG";
}

struct CvResult {
  bool ran = false;
  double mean = 0.0;
  double seconds = 0.0;
  std::string error;
};

/// featurize + 10-fold classify through the command-line entry point.
CvResult pipeline(const fs::path& data, const fs::path& work, const std::vector<std::string>& extra) {
  CvResult r;
  acceptance::Stopwatch clock;
  std::ostringstream out, err;
  const std::string csv = (work / "features.csv").string();
  std::vector<std::string> feat{"extopo", "featurize", "--dataset", data.string(), "--name", "MUTAG",
                                "--filtrations", "degree,betweenness", "--out", csv};
  feat.insert(feat.end(), extra.begin(), extra.end());
  if (int code = cli::run(feat, out, err); code != 0) {
    r.error = "featurize exit " + std::to_string(code) + ": " + err.str();
    return r;
  }
  const std::string cls_dir = (work / "classify").string();
  if (int code = cli::run({"extopo", "classify", "--features", csv, "--folds", "10", "--seed", "0", "--out", cls_dir}, out,
                          err);
      code != 0) {
    r.error = "classify exit " + std::to_string(code) + ": " + err.str();
    return r;
  }
  std::ifstream in(fs::path(cls_dir) / "classification.json");
  r.mean = nlohmann::json::parse(in)["mean_accuracy"].get<double>();
  r.seconds = clock.seconds();
  r.ran = true;
  return r;
}

}  // namespace

int main() {
  acceptance::Report report;
  const fs::path data = dataset_dir();
  GraphDataset ds;
  std::string load_error;
  try {
    ds = parse_tudataset(data, "MUTAG");
  } catch (const std::exception& e) {
    load_error = e.what();
  }
  if (!load_error.empty()) {
    const std::string why = "MUTAG not available at " + data.string() + " (" + load_error + "); set EXTOPO_MUTAG_DIR";
    report.record(4, "finite coordinates on MUTAG diagrams", false, why);
    report.record(10, "EPL + logistic regression accuracy >= 0.80", false, why);
    report.record(11, "50-epoch training reaches <= 0.7 x initial loss", false, why);
    report.record(13, "accuracy >= 0.75 after feature noise", false, why);
    return report.exit_code();
  }

  {
    const std::vector<std::string> names{"degree", "betweenness", "closeness", "subgraph"};
    std::size_t diagrams = 0, points = 0, non_finite = 0, betti_fail = 0;
    for (const Graph& g : ds.graphs) {
      for (const auto& d : epd_bundle(g, make_bundle(g, names))) {
        ++diagrams;
        const std::size_t comps = count_components(g);
        betti_fail += d.count(PointKind::Ext0) != comps || d.count(PointKind::Ext1) != g.num_edges() + comps - g.num_vertices();
        for (const EpdPoint& p : d.points) {
          ++points;
          non_finite += !(std::isfinite(p.birth) && std::isfinite(p.death));
        }
      }
    }
    report.record(4, "finite coordinates on MUTAG diagrams", non_finite == 0 && betti_fail == 0,
                  std::to_string(ds.size()) + " graphs, " + std::to_string(diagrams) + " diagrams, " +
                      std::to_string(points) + " points, " + std::to_string(non_finite) + " non-finite, " +
                      std::to_string(betti_fail) + " Betti-count mismatches");
  }

  testing::TempDir work("extopo_mutag");
  {
    fs::create_directories(work / "clean");
    CvResult r = pipeline(data, work / "clean", {});
    report.record(10, "EPL + logistic regression accuracy >= 0.80", r.ran && r.mean >= 0.80 && r.seconds <= 300.0,
                  r.ran ? "mean 10-fold accuracy " + fmt(r.mean) + ", " + fmt(r.seconds) + " s (limit 300 s)" : r.error);
  }
  {
    acceptance::Stopwatch clock;
    TrainConfig cfg;
    cfg.epochs = 50;
    TrainResult a = train_topo(ds, cfg);
    const double t = clock.seconds();
    TrainResult b = train_topo(ds, cfg);
    const double first = a.loss_trace.front(), last = a.loss_trace.back();
    const bool deterministic = a.loss_trace == b.loss_trace && a.model == b.model;
    report.record(11, "50-epoch training reaches <= 0.7 x initial loss", last <= 0.7 * first && deterministic && t <= 300.0,
                  "initial " + fmt(first) + ", final " + fmt(last) + ", ratio " + fmt(last / first) + " (limit 0.7), " +
                      (deterministic ? "deterministic" : "NOT deterministic") + ", " + fmt(t) + " s per run (limit 300 s)");
  }
  {
    fs::create_directories(work / "noisy");
    CvResult r = pipeline(data, work / "noisy",
                          {"--noise-fraction", "0.2", "--noise-mean", "1", "--noise-std", "1", "--seed", "0"});
    report.record(13, "accuracy >= 0.75 after feature noise", r.ran && r.mean >= 0.75,
                  r.ran ? "noise N(1,1) on 20% of graphs, mean 10-fold accuracy " + fmt(r.mean) : r.error);
  }
  return report.exit_code();
}
