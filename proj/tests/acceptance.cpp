// Acceptance suite: one check per release criterion, each printing a single
// PASS/FAIL line. Run with no arguments for the full suite, or with a
// criterion number (1..9) to run one. Criterion 9 drives the srank binary
// named by the SRANK_BIN environment variable.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "stablerank/stablerank.hpp"

using namespace stablerank;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Check {
  bool ok = true;
  std::vector<std::string> notes;

  void expect(bool condition, const std::string& detail) {
    if (!condition) {
      ok = false;
      notes.push_back(detail);
    }
  }
  void note(const std::string& detail) { notes.push_back(detail); }
};

std::vector<AxiomSample> constrained_samples(std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<AxiomSample> samples;
  samples.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double v = rng.uniform(0.0, 10.0);
    const double w = v + rng.uniform(0.0, 10.0);
    const double eps = rng.uniform(0.0, 4.0);
    const double tau = eps + rng.uniform(0.0, 4.0);
    samples.push_back({v, w, eps, tau});
  }
  return samples;
}

DensitySpec random_density(std::uint64_t seed) {
  Rng rng(seed);
  DensitySpec spec;
  double x = 0.0;
  const std::size_t m = 3 + rng.index(8);
  for (std::size_t i = 0; i < m; ++i) {
    spec.grid.push_back(x);
    spec.values.push_back(rng.uniform(0.1, 5.0));
    x += rng.uniform(0.2, 2.0);
  }
  return spec;
}

Barcode random_barcode(std::uint64_t seed, double max_scale = 10.0) {
  Rng rng(seed);
  Barcode bc;
  bc.max_scale = max_scale;
  for (int degree = 0; degree <= 1; ++degree) {
    const std::size_t count = 1 + rng.index(8);
    for (std::size_t i = 0; i < count; ++i) {
      const double b = rng.uniform(0.0, max_scale * 0.5);
      const double d = rng.uniform() < 0.2 ? kInfiniteDeath : b + rng.uniform(0.01, max_scale * 0.4);
      bc.bars[degree].push_back({b, d, degree});
    }
  }
  return bc;
}

StepFunction random_stable_rank(std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t steps = 1 + rng.index(6);
  std::vector<double> xs{0.0}, ys;
  double x = 0.0, y = rng.uniform(1.0, 8.0);
  ys.push_back(y);
  for (std::size_t i = 1; i < steps; ++i) {
    x += rng.uniform(0.1, 2.0);
    y *= rng.uniform(0.1, 0.9);
    xs.push_back(x);
    ys.push_back(y);
  }
  xs.push_back(x + rng.uniform(0.1, 2.0));
  ys.push_back(0.0);
  return StepFunction(xs, ys);
}

Filtration random_vr(std::size_t n, std::uint64_t seed, double max_scale = 2.0) {
  Rng rng(seed);
  std::vector<std::vector<double>> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back({rng.uniform(), rng.uniform()});
  const auto cloud = PointCloud::from_points(std::move(pts));
  return build_vr_filtration(pairwise_dissimilarity(cloud, Metric::euclidean), 2, max_scale);
}

// --------------------------------------------------------------------------
// criterion 1: reduction agrees with the brute-force oracle

Check criterion_oracle_equivalence() {
  Check check;
  const auto start = Clock::now();
  Rng rng(20240001);
  for (int trial = 0; trial < 200 && check.ok; ++trial) {
    const std::size_t n = 1 + rng.index(7);
    const Filtration f = random_vr(n, rng.next_u64());
    const Barcode bc = reduce_and_pair(f);
    for (int s = 0; s < 20; ++s) {
      const double t = rng.uniform(0.0, f.max_scale());
      for (int degree = 0; degree <= 1; ++degree) {
        const int fast = betti_at_scale(bc, degree, t);
        const int slow = homology_at_scale_oracle(f, degree, t);
        check.expect(fast == slow, "mismatch at trial " + std::to_string(trial) + " degree " +
                                       std::to_string(degree) + " t=" + std::to_string(t) + ": " +
                                       std::to_string(fast) + " vs " + std::to_string(slow));
      }
    }
  }
  const double elapsed = seconds_since(start);
  check.note("200 clouds x 20 scales in " + std::to_string(elapsed) + " s");
  check.expect(elapsed < 60.0, "runtime exceeded 60 s");
  return check;
}

// criterion 2: unit-square fixture

Check criterion_unit_square() {
  Check check;
  const auto cloud = PointCloud::from_points({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  const Barcode bc = reduce_and_pair(build_vr_filtration(pairwise_dissimilarity(cloud, Metric::euclidean), 2, 2.0));
  check.expect(bc.bars_in(1).size() == 1, "expected exactly one H1 bar");
  if (!bc.bars_in(1).empty()) {
    check.expect(std::fabs(bc.bars_in(1)[0].birth - 1.0) <= 1e-12, "H1 birth differs from 1");
    check.expect(std::fabs(bc.bars_in(1)[0].death - std::sqrt(2.0)) <= 1e-12, "H1 death differs from sqrt(2)");
  }
  int finite = 0, essential = 0;
  for (const Bar& bar : bc.bars_in(0)) {
    if (bar.essential()) {
      ++essential;
    } else {
      ++finite;
      check.expect(std::fabs(bar.birth) <= 1e-12 && std::fabs(bar.death - 1.0) <= 1e-12,
                   "H0 finite bar differs from [0, 1)");
    }
  }
  check.expect(finite == 3 && essential == 1, "H0 is not three finite bars plus one essential");
  return check;
}

// criterion 3: contour axiom suite

Check criterion_contour_axioms() {
  Check check;
  const auto samples = constrained_samples(10000, 20240003);
  const std::vector<std::pair<std::string, Contour>> kinds{
      {"standard", Contour::standard()},
      {"power(1.5)", Contour::power(1.5)},
      {"power(2)", Contour::power(2.0)},
      {"mult(0.5)", Contour::multiplicative(0.5)},
      {"mult(2)", Contour::multiplicative(2.0)},
      {"density#1", contour_from_density(random_density(31))},
      {"density#2", contour_from_density(random_density(32))},
      {"density#3", contour_from_density(random_density(33))},
  };
  for (const auto& [name, contour] : kinds) {
    const bool holds = check_axioms(contour, samples, 1e-9);
    check.expect(holds, "axioms fail for " + name +
                            (name == "mult(0.5)" ? " (counterexample: C(1,1) = 0.5 < 1 violates v <= C(v,eps))"
                                                 : ""));
  }
  // constant-density contour matches the standard contour
  const auto constant = contour_from_density({{0.0, 3.0}, {1.0, 1.0}, {}});
  Rng rng(20241003);
  for (int i = 0; i < 1000; ++i) {
    const double v = rng.uniform(0.0, 10.0);
    const double eps = rng.uniform(0.0, 5.0);
    if (std::fabs(constant(v, eps) - (v + eps)) > 1e-9) {
      check.expect(false, "constant-density contour deviates from standard");
      break;
    }
  }
  return check;
}

// criterion 4: stable-rank algorithm fixtures

Check criterion_stable_rank_fixtures() {
  Check check;
  Barcode fixture;
  fixture.max_scale = 5.0;
  fixture.bars[0] = {{0, 2, 0}, {0, 1, 0}, {1, 3, 0}};
  const StableRank s = stable_rank(fixture, 0, Contour::standard());
  check.expect(s(0.0) == 3.0, "fixture value at 0 is not 3");
  check.expect(s(1.0) == 2.0, "fixture value at 1 is not 2");
  check.expect(s(2.5) == 0.0, "fixture value at 2.5 is not 0");

  const std::vector<Contour> kinds{Contour::standard(),
                                   Contour::power(1.5),
                                   Contour::power(2.0),
                                   Contour::multiplicative(0.5),
                                   Contour::multiplicative(2.0),
                                   contour_from_density(random_density(44))};
  for (std::uint64_t seed = 0; seed < 100 && check.ok; ++seed) {
    const Barcode bc = random_barcode(seed);
    for (int degree = 0; degree <= 1; ++degree) {
      for (const Contour& contour : kinds) {
        const StableRank r = stable_rank(bc, degree, contour, Truncation::cap_at_max_scale);
        check.expect(r(0.0) == static_cast<double>(rank_invariant(bc, degree)),
                     "stable_rank(0) != bar count at barcode seed " + std::to_string(seed));
      }
    }
  }
  return check;
}

// criterion 5: metric suite

Check criterion_metrics() {
  Check check;
  const StepFunction f({0.0, 1.0}, {2.0, 0.0});
  const StepFunction g({0.0, 1.5}, {2.0, 0.0});
  check.expect(std::fabs(lp_distance(f, g, 1.0) - 1.0) <= 1e-12, "fixture L1 != 1.0");
  check.expect(std::fabs(lp_distance(f, g, 2.0) - std::sqrt(2.0)) <= 1e-12, "fixture L2 != sqrt(2)");
  check.expect(std::fabs(interleaving_distance(f, g) - 0.5) <= 1e-12, "fixture interleaving != 0.5");

  Rng rng(20240005);
  for (int trial = 0; trial < 100 && check.ok; ++trial) {
    const StepFunction a = random_stable_rank(rng.next_u64());
    const StepFunction b = random_stable_rank(rng.next_u64());
    const StepFunction c = random_stable_rank(rng.next_u64());
    for (double p : {1.0, 2.0}) {
      check.expect(lp_distance(a, a, p) == 0.0, "L_p identity not exact");
      check.expect(lp_distance(a, b, p) == lp_distance(b, a, p), "L_p symmetry not exact");
      check.expect(lp_distance(a, c, p) <= lp_distance(a, b, p) + lp_distance(b, c, p) + 1e-9,
                   "L_p triangle inequality violated");
    }
    check.expect(interleaving_distance(a, a) == 0.0, "interleaving identity not exact");
    check.expect(interleaving_distance(a, b) == interleaving_distance(b, a), "interleaving symmetry not exact");
    check.expect(
        interleaving_distance(a, c) <= interleaving_distance(a, b) + interleaving_distance(b, c) + 1e-9,
        "interleaving triangle inequality violated");
  }
  return check;
}

// criterion 6: complete-spatial-randomness self-consistency

Check criterion_csr_self_consistency() {
  Check check;
  const auto start = Clock::now();
  const Contour contour = Contour::standard();
  const unsigned threads = default_thread_count();
  double iph_total = 0.0, iorg_total = 0.0;
  const int seeds = 5, tests_per_seed = 100;
  for (int seed = 0; seed < seeds; ++seed) {
    const GphPair baseline =
        csr_baseline(100.0, 1.0, 1.0, 100, contour, derive_seed(600, static_cast<std::uint64_t>(seed)), threads);
    const auto tests =
        poisson_realizations(100.0, 1.0, 1.0, tests_per_seed, derive_seed(700, static_cast<std::uint64_t>(seed)));
    std::vector<double> iph_values(tests.size(), 0.5), iorg_values(tests.size(), 0.5);
    parallel_for(tests.size(), threads, [&](std::size_t i) {
      const GphPair field = point_set_g_ph(tests[i], contour);
      iph_values[i] = i_ph(field.h0, field.h1, baseline.h0, baseline.h1).i_ph;
      if (tests[i].points.size() >= 2) iorg_values[i] = i_org(tests[i]).value;
    });
    double iph_mean = 0.0, iorg_mean = 0.0;
    for (std::size_t i = 0; i < tests.size(); ++i) {
      iph_mean += iph_values[i];
      iorg_mean += iorg_values[i];
    }
    iph_total += iph_mean / tests.size();
    iorg_total += iorg_mean / tests.size();
  }
  const double iph = iph_total / seeds;
  const double iorg = iorg_total / seeds;
  const double elapsed = seconds_since(start);
  check.note("I_PH = " + std::to_string(iph) + ", I_org = " + std::to_string(iorg) + " (" +
             std::to_string(elapsed) + " s)");
  check.expect(std::fabs(iph - 0.5) <= 0.05, "I_PH outside 0.5 +/- 0.05");
  check.expect(std::fabs(iorg - 0.5) <= 0.10, "I_org outside 0.5 +/- 0.10");
  check.expect(elapsed < 600.0, "runtime exceeded 10 minutes");
  return check;
}

// criterion 7: salting robustness

struct SaltedPair {
  GridField base;
  GridField salted;
};

SaltedPair make_csr_field_pair(std::uint64_t seed) {
  const std::size_t g = 64;
  Rng rng(seed);
  const long count = rng.poisson(100.0);
  std::vector<double> values(g * g, 0.0);
  std::vector<std::size_t> occupied = rng.sample_without_replacement(g * g, static_cast<std::size_t>(count));
  for (std::size_t c : occupied) values[c] = 1.0;
  GridField base = GridField::create(values, g, g, 1.0 / static_cast<double>(g), true);

  // salt: 10% extra isolated single-cell components on empty, non-adjacent cells
  const ComponentSet base_components = label_components(base, 0.0, 1);
  const std::size_t m = std::max<std::size_t>(1, static_cast<std::size_t>(
                                                     std::llround(0.10 * static_cast<double>(
                                                                             base_components.components.size()))));
  const auto has_active_neighbor = [&](std::size_t cell) {
    const long x = static_cast<long>(cell % g), y = static_cast<long>(cell / g);
    for (long dy = -1; dy <= 1; ++dy) {
      for (long dx = -1; dx <= 1; ++dx) {
        const std::size_t wx = static_cast<std::size_t>((x + dx + static_cast<long>(g)) % static_cast<long>(g));
        const std::size_t wy = static_cast<std::size_t>((y + dy + static_cast<long>(g)) % static_cast<long>(g));
        if (values[wy * g + wx] > 0.0) return true;
      }
    }
    return false;
  };
  std::vector<double> salted_values = values;
  std::size_t placed = 0;
  while (placed < m) {
    const std::size_t cell = rng.index(g * g);
    if (salted_values[cell] > 0.0 || has_active_neighbor(cell)) continue;
    salted_values[cell] = 1.0;
    ++placed;
  }
  return {std::move(base), GridField::create(std::move(salted_values), g, g, 1.0 / static_cast<double>(g), true)};
}

Check criterion_salting_robustness() {
  Check check;
  const Contour contour = Contour::standard();
  const unsigned threads = default_thread_count();
  const GphPair baseline = csr_baseline(100.0, 1.0, 1.0, 100, contour, 20240007, threads);

  const int seeds = 20;
  std::vector<double> delta_iph(seeds, 0.0), delta_iorg(seeds, 0.0);
  parallel_for(static_cast<std::size_t>(seeds), threads, [&](std::size_t s) {
    const SaltedPair fields = make_csr_field_pair(900 + s);
    double iph[2], iorg[2];
    const GridField* grids[2] = {&fields.base, &fields.salted};
    for (int which = 0; which < 2; ++which) {
      const PlanarPoints pts =
          represent(label_components(*grids[which], 0.0, 1), RepresentMode::centroid, 0.05, 1);
      const GphPair field = point_set_g_ph(pts, contour);
      iph[which] = i_ph(field.h0, field.h1, baseline.h0, baseline.h1).i_ph;
      iorg[which] = i_org(pts).value;
    }
    delta_iph[s] = std::fabs(iph[1] - iph[0]);
    delta_iorg[s] = std::fabs(iorg[1] - iorg[0]);
  });
  double mean_iph = 0.0, mean_iorg = 0.0;
  for (int s = 0; s < seeds; ++s) {
    mean_iph += delta_iph[s];
    mean_iorg += delta_iorg[s];
  }
  mean_iph /= seeds;
  mean_iorg /= seeds;
  check.note("mean |delta I_PH| = " + std::to_string(mean_iph) + ", mean |delta I_org| = " +
             std::to_string(mean_iorg));
  check.expect(mean_iph < mean_iorg, "salting moved I_PH at least as much as I_org");
  return check;
}

// criterion 8: desk-scale classification

std::vector<std::vector<double>> circle_points(Rng& rng, double cx, double cy, double radius, std::size_t n) {
  std::vector<std::vector<double>> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const double angle = 2.0 * M_PI * rng.uniform();
    const double jitter_x = rng.uniform(-0.02, 0.02);
    const double jitter_y = rng.uniform(-0.02, 0.02);
    pts.push_back({cx + radius * std::cos(angle) + jitter_x, cy + radius * std::sin(angle) + jitter_y});
  }
  return pts;
}

std::map<std::string, std::vector<RankPair>> synthetic_classes(const Contour& c0, const Contour& c1,
                                                               unsigned threads) {
  std::map<std::string, std::vector<RankPair>> by_class;
  Rng rng(20240008);

  std::vector<std::vector<double>> one_circle = circle_points(rng, 0.5, 0.5, 0.35, 320);
  for (int i = 0; i < 80; ++i) one_circle.push_back({rng.uniform(), rng.uniform()});
  std::vector<std::vector<double>> two_circles = circle_points(rng, 0.28, 0.28, 0.18, 160);
  for (auto& p : circle_points(rng, 0.72, 0.72, 0.18, 160)) two_circles.push_back(p);
  for (int i = 0; i < 80; ++i) two_circles.push_back({rng.uniform(), rng.uniform()});
  std::vector<std::vector<double>> noise;
  for (int i = 0; i < 400; ++i) noise.push_back({rng.uniform(), rng.uniform()});

  const std::vector<std::pair<std::string, std::vector<std::vector<double>>>> classes{
      {"one-circle", one_circle}, {"two-circles", two_circles}, {"noise", noise}};
  std::uint64_t stream = 0;
  for (const auto& [label, pts] : classes) {
    const LabeledDataset ds{label, label, PointCloud::from_points(pts)};
    const auto samples = subsample(ds, 100, 20, derive_seed(81000, stream++));
    by_class[label] = rank_pairs(samples, c0, c1, 1.5, Truncation::cap_at_max_scale, threads);
  }
  return by_class;
}

Check criterion_classification() {
  Check check;
  const unsigned threads = default_thread_count();
  const auto by_class = synthetic_classes(Contour::standard(), Contour::standard(), threads);

  const CrossValidationResult result = cross_validate(by_class, 10, 10, 20240088);
  check.note("accuracy = " + std::to_string(result.accuracy));
  check.expect(result.accuracy >= 0.90, "accuracy below 0.90");

  // shuffled-label control sits near chance level
  std::vector<RankPair> all_pairs;
  std::vector<std::string> labels;
  for (const auto& [label, pairs] : by_class) {
    for (const auto& pair : pairs) {
      all_pairs.push_back(pair);
      labels.push_back(label);
    }
  }
  Rng shuffle_rng(424242);
  shuffle_rng.shuffle(labels);
  std::map<std::string, std::vector<RankPair>> shuffled;
  for (std::size_t i = 0; i < all_pairs.size(); ++i) shuffled[labels[i]].push_back(all_pairs[i]);
  const CrossValidationResult control = cross_validate(shuffled, 10, 10, 20240088);
  check.note("shuffled-label accuracy = " + std::to_string(control.accuracy));
  check.expect(std::fabs(control.accuracy - 1.0 / 3.0) <= 0.15, "shuffled control outside 1/3 +/- 0.15");

  // swapping the H1 contour must leave every H0 stable rank bit-identical
  const auto swapped = synthetic_classes(Contour::standard(), Contour::power(2.0), threads);
  bool h0_identical = true, h1_changed = false;
  for (const auto& [label, pairs] : by_class) {
    const auto& other = swapped.at(label);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      h0_identical = h0_identical && pairs[i].h0 == other[i].h0;
      h1_changed = h1_changed || !(pairs[i].h1 == other[i].h1);
    }
  }
  check.expect(h0_identical, "H0 stable ranks changed when only the H1 contour changed");
  check.expect(h1_changed, "H1 stable ranks did not react to the contour change");
  return check;
}

// criterion 9: CLI determinism

struct CliRunner {
  std::string bin;
  fs::path dir;

  int run(const std::string& args) const {
    const std::string cmd = bin + " " + args + " >" + (dir / "log.txt").string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
};

bool dirs_byte_identical(const fs::path& a, const fs::path& b, std::string& detail) {
  std::vector<fs::path> names;
  for (const auto& entry : fs::recursive_directory_iterator(a)) {
    if (entry.is_regular_file()) names.push_back(fs::relative(entry.path(), a));
  }
  std::sort(names.begin(), names.end());
  std::vector<fs::path> other;
  for (const auto& entry : fs::recursive_directory_iterator(b)) {
    if (entry.is_regular_file()) other.push_back(fs::relative(entry.path(), b));
  }
  std::sort(other.begin(), other.end());
  if (names != other) {
    detail = "file sets differ";
    return false;
  }
  for (const auto& name : names) {
    if (io::read_file(a / name) != io::read_file(b / name)) {
      detail = "file differs: " + name.string();
      return false;
    }
  }
  return true;
}

Check criterion_cli_determinism() {
  Check check;
  const char* bin = std::getenv("SRANK_BIN");
  if (!bin) {
    check.expect(false, "SRANK_BIN not set");
    return check;
  }
  const fs::path root = fs::temp_directory_path() / ("srank_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);
  const CliRunner cli{bin, root};

  // fixtures
  io::atomic_write(root / "square.csv", "0,0\n1,0\n0,1\n1,1\n");
  io::atomic_write(root / "f.csv", io::step_function_csv(StepFunction({0.0, 1.0}, {2.0, 0.0})));
  io::atomic_write(root / "g.csv", io::step_function_csv(StepFunction({0.0, 1.5}, {2.0, 0.0})));
  {
    Rng rng(5150);
    std::string field;
    for (int y = 0; y < 8; ++y) {
      for (int x = 0; x < 8; ++x) field += (x ? "," : "") + std::string(rng.uniform() < 0.15 ? "1" : "0");
      field += "\n";
    }
    io::atomic_write(root / "field.csv", field);
    std::string class_a, class_b;
    for (int i = 0; i < 30; ++i) {
      class_a += io::format_double(rng.uniform()) + "," + io::format_double(rng.uniform()) + "\n";
      const double angle = 2.0 * M_PI * rng.uniform();
      class_b += io::format_double(0.5 + 0.3 * std::cos(angle)) + "," +
                 io::format_double(0.5 + 0.3 * std::sin(angle)) + "\n";
    }
    io::atomic_write(root / "class_a.csv", class_a);
    io::atomic_write(root / "class_b.csv", class_b);
    io::json manifest = io::json::array();
    manifest.push_back({{"id", "a"}, {"label", "noise"}, {"csv_path", (root / "class_a.csv").string()}});
    manifest.push_back({{"id", "b"}, {"label", "ring"}, {"csv_path", (root / "class_b.csv").string()}});
    io::atomic_write(root / "manifest.json", manifest.dump(2) + "\n");
  }

  const std::vector<std::pair<std::string, std::string>> commands{
      {"barcode", "barcode --points " + (root / "square.csv").string() + " --max-dim 2 --max-scale 2"},
      {"stablerank", "stablerank --points " + (root / "square.csv").string() +
                         " --max-scale 2 --contour power:2 --normalize"},
      {"classify", "classify --manifest " + (root / "manifest.json").string() +
                       " --folds 2 --train 2 --sample-size 10 --reps 3 --seed 5 --max-scale 1.5"},
      {"spatial", "spatial --field " + (root / "field.csv").string() +
                      " --cell-size 0.125 --min-size 1 --realizations 4 --seed 3 --r-grid 64"},
      {"poisson-baseline", "poisson-baseline --lambda 20 --extent 1 1 --realizations 3 --seed 11"},
  };
  for (const auto& [name, args] : commands) {
    const fs::path out_a = root / (name + "_a");
    const fs::path out_b = root / (name + "_b");
    check.expect(cli.run(args + " --out-dir " + out_a.string()) == 0, name + ": first run failed");
    check.expect(cli.run(args + " --out-dir " + out_b.string()) == 0, name + ": second run failed");
    std::string detail;
    if (!dirs_byte_identical(out_a, out_b, detail)) {
      check.expect(false, name + ": " + detail);
    }
  }
  // dist writes a single file
  const std::string dist_args = "dist --inputs " + (root / "f.csv").string() + " " + (root / "g.csv").string() +
                                " --metric interleaving --out ";
  check.expect(cli.run(dist_args + (root / "m_a.csv").string()) == 0, "dist: first run failed");
  check.expect(cli.run(dist_args + (root / "m_b.csv").string()) == 0, "dist: second run failed");
  check.expect(io::read_file(root / "m_a.csv") == io::read_file(root / "m_b.csv"),
               "dist: outputs differ between reruns");

  fs::remove_all(root);
  return check;
}

struct Criterion {
  int number;
  std::string name;
  std::function<Check()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "oracle equivalence", criterion_oracle_equivalence},
      {2, "unit-square fixture", criterion_unit_square},
      {3, "contour axiom suite", criterion_contour_axioms},
      {4, "stable-rank fixtures", criterion_stable_rank_fixtures},
      {5, "metric suite", criterion_metrics},
      {6, "CSR self-consistency", criterion_csr_self_consistency},
      {7, "salting robustness", criterion_salting_robustness},
      {8, "desk-scale classification", criterion_classification},
      {9, "CLI determinism", criterion_cli_determinism},
  };
  int selected = 0;
  if (argc > 1) selected = std::atoi(argv[1]);

  int failures = 0;
  for (const auto& criterion : criteria) {
    if (selected != 0 && criterion.number != selected) continue;
    const Check check = criterion.run();
    std::printf("criterion %d (%s): %s\n", criterion.number, criterion.name.c_str(),
                check.ok ? "PASS" : "FAIL");
    for (const auto& note : check.notes) std::printf("  - %s\n", note.c_str());
    if (!check.ok) ++failures;
  }
  return failures;
}
