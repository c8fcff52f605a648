#include "extopo_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "extopo/augment.hpp"
#include "extopo/contrastive.hpp"
#include "extopo/error.hpp"
#include "extopo/metrics.hpp"
#include "extopo/random.hpp"
#include "extopo/tudataset.hpp"
#include "extopo_cli/classify.hpp"
#include "extopo_cli/manifest.hpp"
#include "extopo_cli/parallel.hpp"
#include "extopo_cli/plot.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace extopo::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorDomain d) {
  switch (d) {
    case ErrorDomain::ingest: return exit_ingest;
    case ErrorDomain::augment: return exit_augment;
    case ErrorDomain::noise: return exit_noise;
    case ErrorDomain::filtration: return exit_filtration;
    case ErrorDomain::persistence: return exit_persistence;
    case ErrorDomain::vectorize: return exit_vectorize;
    case ErrorDomain::metric: return exit_metric;
    case ErrorDomain::loss: return exit_loss;
  }
  return exit_internal;
}

std::string real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::vector<std::string> split_names(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<std::string> checked_filtrations(const std::string& list) {
  auto names = split_names(list);
  if (names.empty()) throw UsageError("no filtration names given");
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (!parse_centrality(n)) throw UsageError("unknown filtration '" + n + "' (degree|betweenness|closeness|subgraph)");
    if (!seen.insert(n).second) throw UsageError("filtration '" + n + "' listed twice");
  }
  return names;
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct DatasetArgs {
  std::string path;
  std::string name;

  std::string resolved_name() const {
    if (!name.empty()) return name;
    return fs::path(path).lexically_normal().filename().empty() ? fs::path(path).lexically_normal().parent_path().filename().string()
                                                                : fs::path(path).lexically_normal().filename().string();
  }

  GraphDataset load(IngestReport* report = nullptr) const { return parse_tudataset(path, resolved_name(), report); }

  std::vector<fs::path> files() const {
    std::vector<fs::path> out;
    const std::string prefix = resolved_name() + "_";
    for (const fs::path& dir : {fs::path(path), fs::path(path) / resolved_name()}) {
      if (!fs::is_directory(dir)) continue;
      for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string fn = entry.path().filename().string();
        if (entry.is_regular_file() && fn.rfind(prefix, 0) == 0 && entry.path().extension() == ".txt") {
          out.push_back(entry.path());
        }
      }
      if (!out.empty()) break;
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  void add_to(CLI::App* app) {
    app->add_option("--dataset", path, "TUDataset directory")->required();
    app->add_option("--name", name, "dataset name (default: directory name)");
  }
};

struct FeatureArgs {
  std::string filtrations = "degree,betweenness";
  std::string summary = "EPL";
  std::size_t k_max = 2;
  std::size_t samples = 50;
  std::size_t rows = 50;
  std::size_t cols = 50;
  std::optional<double> sigma;
  std::string weight = "persistence";
  bool normalize = false;

  void add_to(CLI::App* app) {
    app->add_option("--filtrations", filtrations, "comma list of degree|betweenness|closeness|subgraph");
    app->add_option("--summary", summary, "EPL or EPI");
    app->add_option("--k-max", k_max, "landscape levels per sign");
    app->add_option("--samples", samples, "landscape samples per level");
    app->add_option("--rows", rows, "image rows");
    app->add_option("--cols", cols, "image columns");
    app->add_option("--sigma", sigma, "image Gaussian width (default 0.05 x spread)");
    app->add_option("--weight", weight, "image weight: persistence|constant");
    app->add_flag("--normalize", normalize, "min-max normalize each vertex function");
  }

  FeatureConfig config() const {
    FeatureConfig c;
    c.filtrations = checked_filtrations(filtrations);
    const auto kind = parse_summary_kind(summary);
    if (!kind) throw UsageError("unknown summary '" + summary + "' (EPL|EPI)");
    c.summary = *kind;
    c.k_max = k_max;
    c.samples = samples;
    c.image_rows = rows;
    c.image_cols = cols;
    c.sigma = sigma;
    if (weight == "persistence") c.weight = ImageWeight::persistence;
    else if (weight == "constant") c.weight = ImageWeight::constant;
    else throw UsageError("unknown weight '" + weight + "'");
    c.bundle.min_max_normalize = normalize;
    return c;
  }

  json to_json(const FeatureConfig& c) const {
    json j{{"filtrations", c.filtrations}, {"summary", to_string(c.summary)}, {"normalize", normalize}};
    if (c.summary == SummaryKind::EPL) {
      j["k_max"] = c.k_max;
      j["samples"] = c.samples;
    } else {
      j["rows"] = c.image_rows;
      j["cols"] = c.image_cols;
      j["sigma"] = c.sigma ? json(*c.sigma) : json("auto");
      j["weight"] = weight;
    }
    return j;
  }
};

std::string padded_index(std::size_t i, std::size_t total) {
  const std::size_t width = std::max<std::size_t>(4, std::to_string(total).size());
  std::string s = std::to_string(i);
  return std::string(width - std::min(width, s.size()), '0') + s;
}

// ---------------------------------------------------------------- ingest-check

int cmd_ingest_check(const DatasetArgs& ds_args, const std::string& out_dir, std::ostream& out) {
  IngestReport report;
  const GraphDataset ds = ds_args.load(&report);
  double nodes = 0, edges = 0;
  for (const Graph& g : ds.graphs) {
    nodes += static_cast<double>(g.num_vertices());
    edges += static_cast<double>(g.num_edges());
  }
  const double n = std::max<double>(1.0, static_cast<double>(ds.size()));
  std::vector<std::size_t> per_class(ds.num_classes, 0);
  for (const Graph& g : ds.graphs) {
    if (g.graph_label()) ++per_class[static_cast<std::size_t>(*g.graph_label())];
  }
  json summary{{"name", ds.name},
               {"graphs", ds.size()},
               {"classes", ds.num_classes},
               {"class_counts", per_class},
               {"mean_nodes", nodes / n},
               {"mean_edges", edges / n},
               {"feature_dim", ds.graphs.empty() ? 0 : ds.graphs.front().feature_dim()},
               {"feature_source", report.feature_source},
               {"duplicate_edges", report.duplicate_edges},
               {"self_loops", report.self_loops},
               {"warnings", report.warnings}};
  out << summary.dump(2) << '\n';
  if (!out_dir.empty()) {
    const fs::path file = fs::path(out_dir) / "summary.json";
    write_file(file, summary.dump(2) + "\n");
    Manifest m{"ingest-check", {{"dataset", ds_args.resolved_name()}}, 0, ds_args.files(), {file}};
    m.write(fs::path(out_dir) / "manifest.json");
  }
  return exit_ok;
}

// ---------------------------------------------------------------- epd

int cmd_epd(const DatasetArgs& ds_args, const FeatureArgs& fa, std::size_t landscape_samples, std::size_t workers,
            const std::string& out_dir, std::ostream& out) {
  const FeatureConfig fc = fa.config();
  const GraphDataset ds = ds_args.load();
  if (ds.size() == 0) throw IngestError(IngestErrorKind::parse, "dataset has no graphs");

  std::vector<std::vector<ExtendedPersistenceDiagram>> diagrams(ds.size());
  parallel_for(ds.size(), workers, [&](std::size_t i) {
    diagrams[i] = epd_bundle(ds.graphs[i], make_bundle(ds.graphs[i], fc.filtrations, fc.bundle));
  });

  const fs::path dir = fs::path(out_dir) / "diagrams";
  std::vector<fs::path> outputs;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t j = 0; j < fc.filtrations.size(); ++j) {
      const std::string stem = padded_index(i, ds.size()) + "_" + fc.filtrations[j];
      const fs::path file = dir / (stem + ".epd");
      write_file(file, format_diagram(diagrams[i][j]));
      outputs.push_back(file);
      if (landscape_samples > 0) {
        std::ostringstream csv;
        write_landscape_csv(csv, landscape(diagrams[i][j], fc.k_max, UniformGrid{landscape_samples, std::nullopt}));
        const fs::path lfile = dir / (stem + ".landscape.csv");
        write_file(lfile, csv.str());
        outputs.push_back(lfile);
      }
    }
  }
  json cfg = fa.to_json(fc);
  cfg["dataset"] = ds_args.resolved_name();
  cfg["landscape_samples"] = landscape_samples;
  Manifest m{"epd", cfg, 0, ds_args.files(), outputs};
  m.write(fs::path(out_dir) / "manifest.json");
  out << "wrote " << ds.size() * fc.filtrations.size() << " diagrams to " << dir.string() << '\n';
  return exit_ok;
}

// ---------------------------------------------------------------- featurize

struct NoiseArgs {
  double fraction = 0.0;
  double mean = 1.0;
  double stddev = 1.0;
};

std::vector<std::size_t> read_split(const std::string& path, std::size_t n) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read split file " + path);
  std::vector<std::size_t> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::size_t idx = 0;
    try {
      idx = std::stoul(line);
    } catch (const std::exception&) {
      throw UsageError("split file: bad index '" + line + "'");
    }
    if (idx >= n) throw UsageError("split file: index " + line + " out of range");
    out.push_back(idx);
  }
  if (out.empty()) throw UsageError("split file lists no graphs");
  return out;
}

int cmd_featurize(const DatasetArgs& ds_args, const FeatureArgs& fa, const NoiseArgs& noise, const std::string& split,
                  std::uint64_t seed, std::size_t workers, const std::string& out_file, std::ostream& out) {
  const FeatureConfig fc = fa.config();
  GraphDataset ds = ds_args.load();
  if (ds.size() == 0) throw IngestError(IngestErrorKind::parse, "dataset has no graphs");
  if (noise.fraction > 0.0) ds = inject_feature_noise(ds, noise.fraction, noise.mean, noise.stddev, seed);

  std::vector<std::vector<ExtendedPersistenceDiagram>> diagrams(ds.size());
  parallel_for(ds.size(), workers, [&](std::size_t i) {
    diagrams[i] = epd_bundle(ds.graphs[i], make_bundle(ds.graphs[i], fc.filtrations, fc.bundle));
  });

  std::vector<std::vector<ExtendedPersistenceDiagram>> fit_set;
  if (split.empty()) {
    fit_set = diagrams;
  } else {
    for (std::size_t i : read_split(split, ds.size())) fit_set.push_back(diagrams[i]);
  }
  const FeatureSpace space = fit_feature_space(fit_set, fc);

  std::vector<FeatureVector> rows(ds.size());
  parallel_for(ds.size(), workers, [&](std::size_t i) { rows[i] = featurize_diagrams(diagrams[i], space); });
  std::vector<int> labels;
  for (const Graph& g : ds.graphs) labels.push_back(g.graph_label().value_or(-1));

  std::ostringstream csv;
  write_feature_csv(csv, space, rows, labels);
  write_file(out_file, csv.str());

  json cfg = fa.to_json(fc);
  cfg["dataset"] = ds_args.resolved_name();
  cfg["split"] = split.empty() ? json("all") : json(fs::path(split).filename().string());
  cfg["noise"] = {{"fraction", noise.fraction}, {"mean", noise.mean}, {"std", noise.stddev}};
  auto inputs = ds_args.files();
  if (!split.empty()) inputs.push_back(split);
  Manifest m{"featurize", cfg, seed, inputs, {out_file}};
  m.write(out_file + ".manifest.json");
  out << "wrote " << rows.size() << " rows x " << space.dimension() << " features to " << out_file << '\n';
  return exit_ok;
}

// ---------------------------------------------------------------- dist

double diagram_distance(const std::string& metric, double p, std::size_t samples, const MatchOptions& match,
                        const ExtendedPersistenceDiagram& a, const ExtendedPersistenceDiagram& b) {
  if (metric == "bottleneck") return bottleneck(a, b, match);
  if (metric == "wasserstein") return wasserstein(a, b, p, match);
  if (std::isinf(p)) return landscape_sup_distance(a, b);
  double lo = 0.0, hi = 0.0;
  bool any = false;
  std::size_t levels = 1;
  for (const auto* d : {&a, &b}) {
    std::size_t above = 0, below = 0;
    for (const EpdPoint& q : d->points) {
      if (!any) lo = hi = q.birth;
      any = true;
      lo = std::min({lo, q.birth, q.death});
      hi = std::max({hi, q.birth, q.death});
      above += q.birth < q.death;
      below += q.death < q.birth;
    }
    levels = std::max({levels, above, below});
  }
  const UniformGrid grid{samples, std::make_pair(lo, hi)};
  return landscape_distance(landscape(a, levels, grid), landscape(b, levels, grid), p);
}

int cmd_dist(const std::string& metric, const std::string& p_text, std::size_t samples, const MatchOptions& match,
             const std::vector<std::string>& files,
             const std::string& dir, std::size_t workers, const std::string& out_dir, std::ostream& out) {
  if (metric != "bottleneck" && metric != "wasserstein" && metric != "landscape") {
    throw UsageError("unknown metric '" + metric + "' (bottleneck|wasserstein|landscape)");
  }
  double p = 1.0;
  if (p_text == "inf" || p_text == "infinity") p = infinity_norm;
  else {
    try {
      p = std::stod(p_text);
    } catch (const std::exception&) {
      throw UsageError("bad --p value '" + p_text + "'");
    }
  }
  if (metric == "wasserstein" && std::isinf(p)) throw UsageError("wasserstein needs a finite --p");

  std::vector<fs::path> inputs;
  if (!dir.empty()) {
    if (!files.empty()) throw UsageError("give either two diagram files or --dir, not both");
    if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir);
    for (const auto& e : fs::directory_iterator(dir)) {
      if (e.is_regular_file() && e.path().extension() == ".epd") inputs.push_back(e.path());
    }
    std::sort(inputs.begin(), inputs.end());
    if (inputs.empty()) throw UsageError("no .epd files in " + dir);
  } else {
    if (files.size() != 2) throw UsageError("dist needs exactly two diagram files or --dir");
    inputs = {files[0], files[1]};
  }

  std::vector<ExtendedPersistenceDiagram> diagrams;
  for (const auto& f : inputs) {
    if (!fs::is_regular_file(f)) throw IoError("cannot read " + f.string());
    diagrams.push_back(read_diagram_file(f));
  }
  const std::size_t n = diagrams.size();
  std::vector<double> matrix(n * n, 0.0);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  parallel_for(pairs.size(), workers, [&](std::size_t k) {
    const auto [i, j] = pairs[k];
    const double d = diagram_distance(metric, p, samples, match, diagrams[i], diagrams[j]);
    matrix[i * n + j] = matrix[j * n + i] = d;
  });

  std::ostringstream csv;
  csv << "diagram";
  for (const auto& f : inputs) csv << ',' << f.filename().string();
  csv << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    csv << inputs[i].filename().string();
    for (std::size_t j = 0; j < n; ++j) csv << ',' << real(matrix[i * n + j]);
    csv << '\n';
  }
  const fs::path file = fs::path(out_dir) / "distances.csv";
  write_file(file, csv.str());
  Manifest m{"dist",
             {{"metric", metric},
              {"p", std::isinf(p) ? json("inf") : json(p)},
              {"samples", samples},
              {"essential_to_diagonal", match.essential_to_diagonal}},
             0,
             inputs,
             {file}};
  m.write(fs::path(out_dir) / "manifest.json");
  if (n == 2) out << real(matrix[1]) << '\n';
  else out << csv.str();
  return exit_ok;
}

// ---------------------------------------------------------------- stability

Graph trial_graph(Rng& rng, std::size_t max_vertices) {
  const std::size_t n = 2 + rng.uniform_index(max_vertices - 1);
  if (rng.bernoulli(0.5)) {
    const std::size_t most = std::min(n * (n - 1) / 2, 2 * n);
    const std::size_t m = (n - 1) + rng.uniform_index(most - (n - 1) + 1);
    return random_connected(n, m, rng);
  }
  return erdos_renyi(n, 0.3, rng);
}

VertexFunction trial_function(Rng& rng, std::size_t n) {
  std::vector<double> values(n);
  const bool integer = rng.bernoulli(0.5);
  for (double& v : values) v = integer ? static_cast<double>(rng.uniform_index(5)) : rng.uniform01();
  return VertexFunction(std::move(values), "random");
}

int cmd_stability(std::size_t trials, std::size_t max_vertices, double epsilon, std::uint64_t seed,
                  const std::string& out_dir, std::ostream& out) {
  if (trials == 0) throw UsageError("--trials must be at least 1");
  if (max_vertices < 2) throw UsageError("--max-vertices must be at least 2");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw UsageError("--epsilon must be a finite non-negative number");

  std::ostringstream table;
  table << "trial,vertices,edges,landscape_sup,bottleneck,perturbation,pass\n";
  std::size_t failures = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, {t}));
    const Graph g = trial_graph(rng, max_vertices);
    const VertexFunction f = trial_function(rng, g.num_vertices());
    const StabilityReport r = stability_trial(g, f, epsilon, derive_seed(seed, {t, 1}));
    failures += !r.pass;
    table << t << ',' << g.num_vertices() << ',' << g.num_edges() << ',' << real(r.lhs) << ',' << real(r.mid) << ','
          << real(r.rhs) << ',' << (r.pass ? "pass" : "FAIL") << '\n';
  }
  out << table.str();
  out << (trials - failures) << "/" << trials << " trials pass\n";

  const fs::path file = fs::path(out_dir) / "stability.csv";
  write_file(file, table.str());
  Manifest m{"stability", {{"trials", trials}, {"max_vertices", max_vertices}, {"epsilon", epsilon}}, seed, {}, {file}};
  m.write(fs::path(out_dir) / "manifest.json");
  return failures == 0 ? exit_ok : exit_check_failed;
}

// ---------------------------------------------------------------- classify

int cmd_classify(const std::string& features, std::size_t folds, std::uint64_t seed, bool shuffle_labels,
                 const std::string& out_dir, std::ostream& out) {
  if (!fs::is_regular_file(features)) throw IoError("cannot read " + features);
  LabeledTable table;
  try {
    table = read_feature_csv_file(features);
  } catch (const std::runtime_error& e) {
    throw IoError(e.what());
  }
  if (shuffle_labels) {
    Rng rng(derive_seed(seed, {0x5eedu}));
    rng.shuffle(table.labels);
  }
  if (folds < 2 || folds > table.labels.size()) throw UsageError("--folds must lie in [2, rows]");
  const CrossValidation cv = cross_validate(table, folds, seed);

  json report{{"folds", folds},
              {"fold_accuracy", cv.fold_accuracy},
              {"mean_accuracy", cv.mean},
              {"std_accuracy", cv.stddev},
              {"majority_rate", cv.majority_rate},
              {"reshuffles", cv.reshuffles},
              {"shuffled_labels", shuffle_labels}};
  for (std::size_t f = 0; f < cv.fold_accuracy.size(); ++f) out << "fold " << f << " accuracy " << real(cv.fold_accuracy[f]) << '\n';
  out << "mean_accuracy " << real(cv.mean) << " +- " << real(cv.stddev) << " (majority rate " << real(cv.majority_rate)
      << ")\n";

  const fs::path file = fs::path(out_dir) / "classification.json";
  write_file(file, report.dump(2) + "\n");
  Manifest m{"classify", {{"folds", folds}, {"shuffle_labels", shuffle_labels}, {"classifier", "logistic"}}, seed,
             {features}, {file}};
  m.write(fs::path(out_dir) / "manifest.json");
  return exit_ok;
}

// ---------------------------------------------------------------- train

struct TrainArgs {
  std::string config;
  std::optional<std::size_t> epochs;
  std::optional<std::uint64_t> seed;
  bool joint = false;
  bool graph_only = false;
};

int cmd_train(const DatasetArgs& ds_args, const TrainArgs& ta, const std::string& out_dir, std::ostream& out) {
  TrainConfig cfg;
  if (!ta.config.empty()) {
    if (!fs::is_regular_file(ta.config)) throw IoError("cannot read config " + ta.config);
    cfg = read_train_config(ta.config);
  }
  if (ta.epochs) cfg.epochs = *ta.epochs;
  if (ta.seed) cfg.seed = *ta.seed;
  if (ta.joint && ta.graph_only) throw UsageError("--joint and --graph-only are exclusive");
  checked_filtrations([&] {
    std::string s;
    for (const auto& f : cfg.features.filtrations) s += f + ",";
    return s;
  }());
  const TrainMode mode = ta.joint ? TrainMode::joint : ta.graph_only ? TrainMode::graph : TrainMode::topo;

  const GraphDataset ds = ds_args.load();
  const TrainResult r = train(ds, cfg, mode);

  std::ostringstream model, trace, resolved;
  r.model.save(model);
  trace << "epoch,loss\n";
  char buf[40];
  for (std::size_t e = 0; e < r.loss_trace.size(); ++e) {
    std::snprintf(buf, sizeof buf, "%.17g", r.loss_trace[e]);
    trace << e << ',' << buf << '\n';
  }
  write_train_config(resolved, cfg);
  const fs::path dir(out_dir);
  write_file(dir / "model.txt", model.str());
  write_file(dir / "loss_trace.csv", trace.str());
  write_file(dir / "config.txt", resolved.str());

  const char* mode_name = mode == TrainMode::joint ? "joint" : mode == TrainMode::graph ? "graph" : "topo";
  Manifest m{"train", {{"dataset", ds_args.resolved_name()}, {"mode", mode_name}, {"config", resolved.str()}}, cfg.seed,
             ds_args.files(), {dir / "model.txt", dir / "loss_trace.csv", dir / "config.txt"}};
  if (!ta.config.empty()) m.inputs.push_back(ta.config);
  m.write(dir / "manifest.json");
  if (!r.loss_trace.empty()) {
    out << "initial loss " << real(r.loss_trace.front()) << ", final loss " << real(r.loss_trace.back()) << " ("
        << real(r.loss_trace.back() / r.loss_trace.front()) << "x)\n";
  } else {
    out << "0 epochs: wrote the initial model\n";
  }
  return exit_ok;
}

// ---------------------------------------------------------------- plot

int cmd_plot(const std::string& input, const std::string& out_file, std::ostream& out) {
  if (!fs::is_regular_file(input)) throw IoError("cannot read " + input);
  const std::string text = read_text(input);
  std::string svg;
  std::istringstream in(text);
  if (text.rfind("t,", 0) == 0) {
    try {
      svg = landscape_svg(read_landscape_csv(in));
    } catch (const std::runtime_error& e) {
      throw IoError(std::string("landscape parse failure: ") + e.what());
    }
  } else {
    svg = diagram_svg(read_diagram(in, fs::path(input).stem().string()));
  }
  write_file(out_file, svg);
  Manifest m{"plot", {{"input", fs::path(input).filename().string()}}, 0, {input}, {out_file}};
  m.write(out_file + ".manifest.json");
  out << "wrote " << out_file << '\n';
  return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"extopo: extended persistence features for graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "0.1.0");

  std::size_t workers = default_workers();
  app.add_option("--workers", workers, "worker threads (default: EXTOPO_WORKERS or 1)");

  DatasetArgs ingest_ds, epd_ds, feat_ds, train_ds;
  FeatureArgs epd_fa, feat_fa;
  std::string ingest_out, epd_out, feat_out, dist_out, stab_out, cls_out, train_out, plot_in, plot_out;

  auto* ingest = app.add_subcommand("ingest-check", "parse a TUDataset directory and summarize it");
  ingest_ds.add_to(ingest);
  ingest->add_option("--out", ingest_out, "directory for summary.json and manifest.json");

  auto* epd = app.add_subcommand("epd", "write one extended persistence diagram per graph and filtration");
  epd_ds.add_to(epd);
  epd_fa.add_to(epd);
  std::size_t landscape_samples = 0;
  epd->add_option("--landscape-samples", landscape_samples, "also write landscape CSVs with this many samples");
  epd->add_option("--out", epd_out, "output directory")->required();

  auto* feat = app.add_subcommand("featurize", "write EPL/EPI features as CSV");
  feat_ds.add_to(feat);
  feat_fa.add_to(feat);
  NoiseArgs noise;
  std::string split;
  std::uint64_t feat_seed = 0;
  feat->add_option("--split", split, "file of graph indices used to fit grids and bounds");
  feat->add_option("--noise-fraction", noise.fraction, "fraction of graphs that get Gaussian feature noise");
  feat->add_option("--noise-mean", noise.mean, "noise mean");
  feat->add_option("--noise-std", noise.stddev, "noise standard deviation");
  feat->add_option("--seed", feat_seed, "seed for noise injection");
  feat->add_option("--out", feat_out, "output CSV")->required();

  auto* dist = app.add_subcommand("dist", "distances between diagrams");
  std::string metric = "bottleneck", p_text = "1", dist_dir;
  std::size_t dist_samples = 200;
  std::vector<std::string> dist_files;
  dist->add_option("--metric", metric, "bottleneck|wasserstein|landscape");
  dist->add_option("--p", p_text, "order (number or inf)");
  dist->add_option("--samples", dist_samples, "grid samples for finite-p landscape distances");
  dist->add_option("--dir", dist_dir, "all pairs over the .epd files in this directory");
  MatchOptions match;
  dist->add_flag("--essential-diagonal", match.essential_to_diagonal,
                 "let Ext0/Ext1 points match the diagonal (diagrams of different graphs)");
  dist->add_option("files", dist_files, "two diagram files");
  dist->add_option("--out", dist_out, "output directory")->required();

  auto* stab = app.add_subcommand("stability", "random stability trials");
  std::size_t trials = 500, max_vertices = 12;
  double epsilon = 0.3;
  std::uint64_t stab_seed = 0;
  stab->add_option("--trials", trials, "number of trials");
  stab->add_option("--max-vertices", max_vertices, "largest random graph");
  stab->add_option("--epsilon", epsilon, "perturbation bound");
  stab->add_option("--seed", stab_seed, "seed");
  stab->add_option("--out", stab_out, "output directory")->required();

  auto* cls = app.add_subcommand("classify", "k-fold logistic regression on a feature CSV");
  std::string cls_features;
  std::size_t folds = 10;
  std::uint64_t cls_seed = 0;
  bool shuffle_labels = false;
  cls->add_option("--features", cls_features, "feature CSV")->required();
  cls->add_option("--folds", folds, "number of folds");
  cls->add_option("--seed", cls_seed, "seed");
  cls->add_flag("--shuffle-labels", shuffle_labels, "permute labels first (chance-level control)");
  cls->add_option("--out", cls_out, "output directory")->required();

  auto* tr = app.add_subcommand("train", "contrastive training of the topological layer");
  train_ds.add_to(tr);
  TrainArgs ta;
  tr->add_option("--config", ta.config, "key = value trainer config");
  tr->add_option("--epochs", ta.epochs, "override epochs");
  tr->add_option("--seed", ta.seed, "override seed");
  tr->add_flag("--joint", ta.joint, "add the baseline-encoder graph branch");
  tr->add_flag("--graph-only", ta.graph_only, "evaluate only the graph branch");
  tr->add_option("--out", train_out, "output directory")->required();

  auto* plot = app.add_subcommand("plot", "SVG of a diagram or landscape CSV");
  plot->add_option("--input", plot_in, "diagram file or landscape CSV")->required();
  plot->add_option("--out", plot_out, "output SVG")->required();

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  if (!argv_rev.empty()) argv_rev.pop_back();
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*ingest) return cmd_ingest_check(ingest_ds, ingest_out, out);
    if (*epd) return cmd_epd(epd_ds, epd_fa, landscape_samples, workers, epd_out, out);
    if (*feat) return cmd_featurize(feat_ds, feat_fa, noise, split, feat_seed, workers, feat_out, out);
    if (*dist) return cmd_dist(metric, p_text, dist_samples, match, dist_files, dist_dir, workers, dist_out, out);
    if (*stab) return cmd_stability(trials, max_vertices, epsilon, stab_seed, stab_out, out);
    if (*cls) return cmd_classify(cls_features, folds, cls_seed, shuffle_labels, cls_out, out);
    if (*tr) return cmd_train(train_ds, ta, train_out, out);
    if (*plot) return cmd_plot(plot_in, plot_out, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_usage;
  } catch (const Error& e) {
    err << to_string(e.domain()) << " (" << e.reason() << "): " << e.what() << '\n';
    return exit_code_for(e.domain());
  } catch (const IoError& e) {
    err << "io error: " << e.what() << '\n';
    return exit_io;
  } catch (const fs::filesystem_error& e) {
    err << "io error: " << e.what() << '\n';
    return exit_io;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return exit_internal;
  }
  return exit_internal;
}

}  // namespace extopo::cli
