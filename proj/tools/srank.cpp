// srank: command-line frontend for the stable-rank persistence pipeline.
//
// Subcommands: barcode, stablerank, dist, classify, spatial, poisson-baseline.
// Every run is a pure function of (inputs, flags, seed); outputs are written
// atomically and reruns are byte-identical.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stablerank/stablerank.hpp"

namespace fs = std::filesystem;
using namespace stablerank;
using json = io::json;

namespace {

Contour parse_contour(const std::string& spec) {
  if (spec == "standard") return Contour::standard();
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "power") return Contour::power(std::stod(arg));
  if (kind == "mult") return Contour::multiplicative(std::stod(arg));
  if (kind == "density") {
    const auto rows = io::read_point_rows(arg);
    DensitySpec density;
    for (const auto& row : rows) {
      if (row.size() != 2) throw std::runtime_error(arg + ": density file needs two columns (x, f(x))");
      density.grid.push_back(row[0]);
      density.values.push_back(row[1]);
    }
    return Contour::from_density(density);
  }
  throw std::runtime_error("unknown contour '" + spec + "' (use standard|power:<p>|mult:<r>|density:<file>)");
}

PointCloud load_cloud(const std::string& points_path, const std::vector<double>& torus) {
  const auto rows = io::read_point_rows(points_path);
  if (rows.empty()) throw std::runtime_error(points_path + ": no points");
  std::optional<std::vector<double>> extents;
  if (!torus.empty()) extents = torus;
  return PointCloud::from_points(rows, extents);
}

struct PipelineInput {
  std::string points_path;
  std::string dist_path;
  std::vector<double> torus;
  int max_dim = 2;
  std::string max_scale = "auto";

  void add_flags(CLI::App* cmd) {
    cmd->add_option("--points", points_path, "point cloud CSV, one point per row");
    cmd->add_option("--dist", dist_path, "lower-triangular distance matrix (line i holds d(i,0..i-1))");
    cmd->add_option("--torus", torus, "per-axis period lengths; switches to the toroidal metric");
    cmd->add_option("--max-dim", max_dim, "top simplex dimension (0..2)")->default_val(2);
    cmd->add_option("--max-scale", max_scale,
                    "filtration truncation scale, or 'auto' for the largest nearest-neighbor distance")
        ->default_val("auto");
  }

  DissimilarityMatrix dissimilarity() const {
    if (!dist_path.empty()) return io::read_lower_triangular(dist_path);
    if (points_path.empty()) throw std::runtime_error("need --points or --dist");
    const PointCloud cloud = load_cloud(points_path, torus);
    return pairwise_dissimilarity(cloud,
                                  torus.empty() ? Metric::euclidean : Metric::toroidal_euclidean);
  }

  Filtration filtration() const {
    const DissimilarityMatrix d = dissimilarity();
    const double scale = max_scale == "auto" ? suggested_max_scale(d) : std::stod(max_scale);
    return build_vr_filtration(d, max_dim, scale);
  }

  json manifest() const {
    json j;
    j["points"] = points_path;
    j["dist"] = dist_path;
    j["torus"] = torus;
    j["max_dim"] = max_dim;
    j["max_scale"] = max_scale;
    return j;
  }
};

void write_manifest(const fs::path& out_dir, const std::string& command, json config) {
  json j;
  j["command"] = command;
  j["config"] = std::move(config);
  io::atomic_write(out_dir / "run_manifest.json", j.dump(2) + "\n");
}

Truncation parse_truncation(const std::string& s) {
  if (s == "cap") return Truncation::cap_at_max_scale;
  if (s == "drop") return Truncation::drop_essential;
  throw std::runtime_error("unknown truncation '" + s + "' (use cap|drop)");
}

// ---------------------------------------------------------------------------

int cmd_barcode(const PipelineInput& input, const std::string& out_dir_str) {
  const fs::path out_dir(out_dir_str);
  fs::create_directories(out_dir);
  const Barcode bc = reduce_and_pair(input.filtration());
  io::write_barcode_json(out_dir / "barcode.json", bc);
  for (int degree = 0; degree <= std::min(input.max_dim, 1); ++degree) {
    const std::string name = degree == 0 ? "stem_h0.txt" : "stem_h1.txt";
    io::atomic_write(out_dir / name, io::stem_text(bc, degree));
  }
  write_manifest(out_dir, "barcode", input.manifest());
  return 0;
}

int cmd_stablerank(const PipelineInput& input, const std::string& barcode_path, const std::string& contour_spec,
                   const std::string& truncation_spec, bool normalize_flag, const std::string& degree_spec,
                   const std::string& out_dir_str) {
  const fs::path out_dir(out_dir_str);
  fs::create_directories(out_dir);
  const Contour contour = parse_contour(contour_spec);
  const Truncation truncation = parse_truncation(truncation_spec);
  const Barcode bc =
      barcode_path.empty() ? reduce_and_pair(input.filtration()) : io::read_barcode_json(barcode_path);
  for (int degree = 0; degree <= 1; ++degree) {
    if (degree_spec != "both" && degree_spec != std::to_string(degree)) continue;
    StableRank s = stable_rank(bc, degree, contour, truncation);
    if (normalize_flag) s = normalize(s);
    const std::string name = degree == 0 ? "stable_rank_h0.csv" : "stable_rank_h1.csv";
    io::atomic_write(out_dir / name, io::step_function_csv(s));
  }
  json config = input.manifest();
  config["barcode"] = barcode_path;
  config["contour"] = contour_spec;
  config["truncation"] = truncation_spec;
  config["normalize"] = normalize_flag;
  config["degree"] = degree_spec;
  write_manifest(out_dir, "stablerank", std::move(config));
  return 0;
}

int cmd_dist(const std::vector<std::string>& inputs, const std::string& metric, const std::string& out_path) {
  if (inputs.empty()) throw std::runtime_error("dist: no input files");
  std::vector<StepFunction> functions;
  std::vector<std::string> ids;
  for (const auto& path : inputs) {
    functions.push_back(io::read_step_function_csv(path));
    ids.push_back(fs::path(path).stem().string());
  }
  double p = 0.0;  // 0 marks the interleaving metric
  if (metric == "l1") {
    p = 1.0;
  } else if (metric == "l2") {
    p = 2.0;
  } else if (metric.rfind("lp:", 0) == 0) {
    p = std::stod(metric.substr(3));
  } else if (metric != "interleaving") {
    throw std::runtime_error("unknown metric '" + metric + "' (use l1|l2|lp:<p>|interleaving)");
  }
  const std::size_t n = functions.size();
  std::vector<std::vector<double>> matrix(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = p == 0.0 ? interleaving_distance(functions[i], functions[j])
                                : lp_distance(functions[i], functions[j], p);
      matrix[i][j] = matrix[j][i] = d;
    }
  }
  std::string out;
  for (std::size_t i = 0; i < n; ++i) out += (i ? "," : "") + ids[i];
  out += "\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out += (j ? "," : "") + io::format_double(matrix[i][j]);
    out += "\n";
  }
  io::atomic_write(out_path, out);
  return 0;
}

int cmd_classify(const std::string& manifest_path, const std::string& contour_h0_spec,
                 const std::string& contour_h1_spec, std::size_t folds, std::size_t train_count,
                 std::size_t sample_size, std::size_t repetitions, std::uint64_t seed, double max_scale,
                 bool standardize, unsigned threads, const std::string& out_dir_str) {
  const fs::path out_dir(out_dir_str);
  fs::create_directories(out_dir);
  const Contour c0 = parse_contour(contour_h0_spec);
  const Contour c1 = parse_contour(contour_h1_spec);

  std::map<std::string, std::vector<RankPair>> pairs_by_class;
  std::uint64_t dataset_stream = 0;
  for (const auto& entry : io::read_manifest(manifest_path)) {
    auto rows = io::read_point_rows(entry.csv_path);
    if (rows.empty()) throw std::runtime_error(entry.csv_path + ": no points");
    if (standardize) {
      const std::size_t dims = rows.front().size();
      for (std::size_t k = 0; k < dims; ++k) {
        double mean = 0.0;
        for (const auto& r : rows) mean += r[k];
        mean /= static_cast<double>(rows.size());
        double var = 0.0;
        for (const auto& r : rows) var += (r[k] - mean) * (r[k] - mean);
        const double sd = std::sqrt(var / static_cast<double>(rows.size()));
        for (auto& r : rows) r[k] = sd > 0.0 ? (r[k] - mean) / sd : r[k] - mean;
      }
    }
    LabeledDataset ds{entry.id, entry.label, PointCloud::from_points(std::move(rows))};
    const auto samples = subsample(ds, sample_size, repetitions, derive_seed(seed, dataset_stream++));
    auto pairs = rank_pairs(samples, c0, c1, max_scale, Truncation::cap_at_max_scale, threads);
    auto& bucket = pairs_by_class[ds.label];
    bucket.insert(bucket.end(), pairs.begin(), pairs.end());
  }

  const CrossValidationResult result = cross_validate(pairs_by_class, folds, train_count, seed);

  std::string confusion_csv;
  for (const auto& label : result.confusion.labels) confusion_csv += "," + label;
  confusion_csv += "\n";
  for (std::size_t i = 0; i < result.confusion.labels.size(); ++i) {
    confusion_csv += result.confusion.labels[i];
    for (double x : result.confusion.rows[i]) confusion_csv += "," + io::format_double(x);
    confusion_csv += "\n";
  }
  io::atomic_write(out_dir / "confusion.csv", confusion_csv);

  std::string folds_csv = "fold,accuracy\n";
  for (std::size_t i = 0; i < result.fold_accuracies.size(); ++i) {
    folds_csv += std::to_string(i) + "," + io::format_double(result.fold_accuracies[i]) + "\n";
  }
  io::atomic_write(out_dir / "folds.csv", folds_csv);

  json summary;
  summary["accuracy"] = result.accuracy;
  summary["labels"] = result.confusion.labels;
  summary["folds"] = folds;
  io::atomic_write(out_dir / "summary.json", summary.dump(2) + "\n");

  json config;
  config["manifest"] = manifest_path;
  config["contour_h0"] = contour_h0_spec;
  config["contour_h1"] = contour_h1_spec;
  config["folds"] = folds;
  config["train"] = train_count;
  config["sample_size"] = sample_size;
  config["reps"] = repetitions;
  config["seed"] = seed;
  config["max_scale"] = max_scale;
  config["standardize"] = standardize;
  write_manifest(out_dir, "classify", std::move(config));
  return 0;
}

int cmd_spatial(const std::string& field_path, double threshold, std::size_t min_size,
                const std::string& represent_spec, const std::string& lambda_spec, std::size_t realizations,
                std::uint64_t seed, const std::string& contour_spec, double cell_size, bool periodic,
                int connectivity, std::size_t r_grid, bool planar_nn, unsigned threads,
                const std::string& out_dir_str) {
  const fs::path out_dir(out_dir_str);
  fs::create_directories(out_dir);
  const Contour contour = parse_contour(contour_spec);

  const GridField field = fs::path(field_path).extension() == ".csv"
                              ? io::read_grid_csv(field_path, cell_size, periodic)
                              : io::read_grid_binary(field_path);

  RepresentMode mode = RepresentMode::centroid;
  double rate = 0.05;
  if (represent_spec == "centroid") {
    mode = RepresentMode::centroid;
  } else if (represent_spec == "maxval") {
    mode = RepresentMode::max_value;
  } else if (represent_spec.rfind("random:", 0) == 0) {
    mode = RepresentMode::random_cells;
    rate = std::stod(represent_spec.substr(7));
  } else {
    throw std::runtime_error("unknown representation '" + represent_spec +
                             "' (use centroid|maxval|random:<rate>)");
  }

  const ComponentSet components = label_components(field, threshold, min_size, connectivity);
  const PlanarPoints points = represent(components, mode, rate, derive_seed(seed, 1));

  json config;
  config["field"] = field_path;
  config["threshold"] = threshold;
  config["min_size"] = min_size;
  config["represent"] = represent_spec;
  config["lambda_baseline"] = lambda_spec;
  config["realizations"] = realizations;
  config["seed"] = seed;
  config["contour"] = contour_spec;
  config["connectivity"] = connectivity;
  config["r_grid"] = r_grid;
  config["planar_nn"] = planar_nn;

  json report;
  report["components"] = components.components.size();
  report["points"] = points.points.size();
  report["represent"] = represent_spec;
  report["min_size"] = min_size;
  report["seed"] = seed;

  if (points.points.size() < 2) {
    report["warning"] = "fewer than 2 representation points; indices undefined";
    report["i_org"] = nullptr;
    report["i_ph_0"] = nullptr;
    report["i_ph_1"] = nullptr;
    report["i_ph"] = nullptr;
    io::atomic_write(out_dir / "report.json", report.dump(2) + "\n");
    write_manifest(out_dir, "spatial", std::move(config));
    return 0;
  }

  PlanarPoints nn_points = points;
  if (planar_nn) nn_points.periodic = false;
  const IOrgResult org = i_org(nn_points, r_grid);

  const double lambda = lambda_spec == "auto"
                            ? static_cast<double>(points.points.size()) / (points.extent_x * points.extent_y)
                            : std::stod(lambda_spec);
  const GphPair baseline =
      csr_baseline(lambda, points.extent_x, points.extent_y, realizations, contour, derive_seed(seed, 2), threads);
  const GphPair field_gph = point_set_g_ph(points, contour);
  const PhIndex ph = i_ph(field_gph.h0, field_gph.h1, baseline.h0, baseline.h1);

  report["i_org"] = org.value;
  if (org.degenerate) report["warning"] = "all representation points identical; i_org forced to 1";
  report["i_ph_0"] = ph.i_ph_0;
  report["i_ph_1"] = ph.i_ph_1;
  report["i_ph"] = ph.i_ph;
  report["lambda"] = lambda;
  io::atomic_write(out_dir / "report.json", report.dump(2) + "\n");

  io::atomic_write(out_dir / "gph_h0.csv", io::step_function_csv(field_gph.h0));
  io::atomic_write(out_dir / "gph_h1.csv", io::step_function_csv(field_gph.h1));
  io::atomic_write(out_dir / "baseline_h0.csv", io::step_function_csv(baseline.h0));
  io::atomic_write(out_dir / "baseline_h1.csv", io::step_function_csv(baseline.h1));

  // (G_CSR, Ghat) pairs backing i_org, for plotting.
  {
    std::vector<double> nn = nn_distances(nn_points);
    std::sort(nn.begin(), nn.end());
    const double n = static_cast<double>(nn.size());
    const double lambda_hat = n / (points.extent_x * points.extent_y);
    const double r_max = std::sqrt(std::log(1e6) / (lambda_hat * M_PI));
    std::string curve = "g_csr,g_hat\n";
    for (std::size_t i = 0; i < r_grid; ++i) {
      const double r = r_max * static_cast<double>(i) / static_cast<double>(r_grid - 1);
      const double x = 1.0 - std::exp(-lambda_hat * M_PI * r * r);
      const double count = static_cast<double>(std::upper_bound(nn.begin(), nn.end(), r) - nn.begin());
      curve += io::format_double(x) + "," + io::format_double(count / n) + "\n";
    }
    io::atomic_write(out_dir / "iorg_curve.csv", curve);
  }

  write_manifest(out_dir, "spatial", std::move(config));
  return 0;
}

int cmd_poisson_baseline(double lambda, const std::vector<double>& extent, std::size_t realizations,
                         std::uint64_t seed, const std::string& contour_spec, unsigned threads,
                         const std::string& out_dir_str) {
  const fs::path out_dir(out_dir_str);
  fs::create_directories(out_dir);
  if (extent.size() != 2) throw std::runtime_error("poisson-baseline: --extent needs two values (Lx Ly)");
  const Contour contour = parse_contour(contour_spec);
  const GphPair baseline = csr_baseline(lambda, extent[0], extent[1], realizations, contour, seed, threads);
  io::atomic_write(out_dir / "baseline_h0.csv", io::step_function_csv(baseline.h0));
  io::atomic_write(out_dir / "baseline_h1.csv", io::step_function_csv(baseline.h1));
  json config;
  config["lambda"] = lambda;
  config["extent"] = extent;
  config["realizations"] = realizations;
  config["seed"] = seed;
  config["contour"] = contour_spec;
  write_manifest(out_dir, "poisson-baseline", std::move(config));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stable-rank persistence toolkit"};
  app.require_subcommand(1);
  unsigned threads = default_thread_count();
  app.add_option("--threads", threads, "worker threads (default: SRANK_THREADS or hardware)");

  // barcode
  auto* barcode = app.add_subcommand("barcode", "Vietoris-Rips persistence barcode");
  PipelineInput barcode_input;
  barcode_input.add_flags(barcode);
  std::string barcode_out;
  barcode->add_option("--out-dir", barcode_out)->required();

  // stablerank
  auto* stable = app.add_subcommand("stablerank", "stable-rank functions from a barcode or point cloud");
  PipelineInput stable_input;
  stable_input.add_flags(stable);
  std::string stable_barcode, stable_contour = "standard", stable_trunc = "cap", stable_degree = "both",
              stable_out;
  bool stable_normalize = false;
  stable->add_option("--barcode", stable_barcode, "barcode JSON produced by the barcode subcommand");
  stable->add_option("--contour", stable_contour)->default_val("standard");
  stable->add_option("--truncation", stable_trunc, "essential-bar policy: cap|drop")->default_val("cap");
  stable->add_option("--degree", stable_degree, "0|1|both")->default_val("both");
  stable->add_flag("--normalize", stable_normalize, "divide by the value at 0");
  stable->add_option("--out-dir", stable_out)->required();

  // dist
  auto* dist = app.add_subcommand("dist", "pairwise distance matrix between stable-rank CSVs");
  std::vector<std::string> dist_inputs;
  std::string dist_metric = "l1", dist_out;
  dist->add_option("--inputs", dist_inputs, "stable-rank CSV files")->required()->expected(-1);
  dist->add_option("--metric", dist_metric, "l1|l2|lp:<p>|interleaving")->default_val("l1");
  dist->add_option("--out", dist_out)->required();

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "mean-stable-rank classification with cross-validation");
  std::string cls_manifest, cls_c0 = "standard", cls_c1 = "standard", cls_out;
  std::size_t cls_folds = 20, cls_train = 40, cls_sample = 100, cls_reps = 100;
  std::uint64_t cls_seed = 0;
  double cls_max_scale = 0.0;
  bool cls_standardize = false;
  classify_cmd->add_option("--manifest", cls_manifest, "JSON list of {id, label, csv_path}")->required();
  classify_cmd->add_option("--contour-h0", cls_c0)->default_val("standard");
  classify_cmd->add_option("--contour-h1", cls_c1)->default_val("standard");
  classify_cmd->add_option("--folds", cls_folds)->default_val(20);
  classify_cmd->add_option("--train", cls_train)->default_val(40);
  classify_cmd->add_option("--sample-size", cls_sample)->default_val(100);
  classify_cmd->add_option("--reps", cls_reps)->default_val(100);
  classify_cmd->add_option("--seed", cls_seed)->default_val(0);
  classify_cmd->add_option("--max-scale", cls_max_scale)->required();
  classify_cmd->add_flag("--standardize", cls_standardize, "z-score each dataset's columns first");
  classify_cmd->add_option("--out-dir", cls_out)->required();

  // spatial
  auto* spatial = app.add_subcommand("spatial", "spatial organization indices of a gridded field");
  std::string sp_field, sp_represent = "centroid", sp_lambda = "auto", sp_contour = "standard", sp_out;
  double sp_threshold = 0.0, sp_cell = 1.0;
  std::size_t sp_min_size = 3, sp_realizations = 100, sp_rgrid = 512;
  std::uint64_t sp_seed = 0;
  bool sp_periodic = true, sp_planar_nn = false;
  int sp_connectivity = 4;
  spatial->add_option("--field", sp_field, "grid CSV, or flat float64 binary with a <file>.json sidecar")
      ->required();
  spatial->add_option("--threshold", sp_threshold)->default_val(0.0);
  spatial->add_option("--min-size", sp_min_size)->default_val(3);
  spatial->add_option("--represent", sp_represent, "centroid|maxval|random:<rate>")->default_val("centroid");
  spatial->add_option("--lambda-baseline", sp_lambda, "'auto' (= points/area) or a number")->default_val("auto");
  spatial->add_option("--realizations", sp_realizations)->default_val(100);
  spatial->add_option("--seed", sp_seed)->default_val(0);
  spatial->add_option("--contour", sp_contour)->default_val("standard");
  spatial->add_option("--cell-size", sp_cell, "cell edge length for CSV fields")->default_val(1.0);
  spatial->add_flag("--periodic,!--no-periodic", sp_periodic, "wrap across boundaries (CSV fields)");
  spatial->add_option("--connectivity", sp_connectivity, "4 or 8")->default_val(4);
  spatial->add_option("--r-grid", sp_rgrid, "sample count for the G_CSR axis")->default_val(512);
  spatial->add_flag("--planar-nn", sp_planar_nn, "use planar nearest-neighbor distances even when periodic");
  spatial->add_option("--out-dir", sp_out)->required();

  // poisson-baseline
  auto* poisson = app.add_subcommand("poisson-baseline", "Monte Carlo CSR G_PH baseline curves");
  double pb_lambda = 100.0;
  std::vector<double> pb_extent{1.0, 1.0};
  std::size_t pb_realizations = 100;
  std::uint64_t pb_seed = 0;
  std::string pb_contour = "standard", pb_out;
  poisson->add_option("--lambda", pb_lambda)->default_val(100.0);
  poisson->add_option("--extent", pb_extent, "domain extents Lx Ly")->expected(2);
  poisson->add_option("--realizations", pb_realizations)->default_val(100);
  poisson->add_option("--seed", pb_seed)->default_val(0);
  poisson->add_option("--contour", pb_contour)->default_val("standard");
  poisson->add_option("--out-dir", pb_out)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (barcode->parsed()) return cmd_barcode(barcode_input, barcode_out);
    if (stable->parsed()) {
      return cmd_stablerank(stable_input, stable_barcode, stable_contour, stable_trunc, stable_normalize,
                            stable_degree, stable_out);
    }
    if (dist->parsed()) return cmd_dist(dist_inputs, dist_metric, dist_out);
    if (classify_cmd->parsed()) {
      return cmd_classify(cls_manifest, cls_c0, cls_c1, cls_folds, cls_train, cls_sample, cls_reps, cls_seed,
                          cls_max_scale, cls_standardize, threads, cls_out);
    }
    if (spatial->parsed()) {
      return cmd_spatial(sp_field, sp_threshold, sp_min_size, sp_represent, sp_lambda, sp_realizations,
                         sp_seed, sp_contour, sp_cell, sp_periodic, sp_connectivity, sp_rgrid, sp_planar_nn,
                         threads, sp_out);
    }
    if (poisson->parsed()) {
      return cmd_poisson_baseline(pb_lambda, pb_extent, pb_realizations, pb_seed, pb_contour, threads, pb_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
