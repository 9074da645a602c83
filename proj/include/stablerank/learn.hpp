#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stablerank/filtration.hpp"
#include "stablerank/parallel.hpp"
#include "stablerank/persistence.hpp"
#include "stablerank/point_cloud.hpp"
#include "stablerank/rng.hpp"
#include "stablerank/stable_rank.hpp"

namespace stablerank {

struct LabeledDataset {
  std::string id;
  std::string label;
  PointCloud points;
};

/// Stable ranks of one sample in degrees 0 and 1.
struct RankPair {
  StableRank h0;
  StableRank h1;
};

/// Row-normalized: rows are test classes, columns predicted classes.
struct ConfusionMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> rows;
};

/// `repetitions` independent uniform without-replacement samples of
/// `sample_size` points. Deterministic given the seed; repetition r draws
/// from substream r.
inline std::vector<PointCloud> subsample(const LabeledDataset& ds, std::size_t sample_size,
                                         std::size_t repetitions, std::uint64_t seed) {
  const std::size_t n = ds.points.size();
  if (sample_size > n) throw std::invalid_argument("subsample: sample_size exceeds the point count");
  std::vector<PointCloud> samples;
  samples.reserve(repetitions);
  for (std::size_t r = 0; r < repetitions; ++r) {
    Rng rng(derive_seed(seed, r));
    std::vector<std::vector<double>> pts;
    pts.reserve(sample_size);
    for (std::size_t i : rng.sample_without_replacement(n, sample_size)) {
      pts.push_back(ds.points.points[i]);
    }
    samples.push_back(PointCloud::from_points(std::move(pts), ds.points.torus_extents));
  }
  return samples;
}

/// Full persistence pipeline per sample: Euclidean (or toroidal)
/// dissimilarities, Vietoris-Rips up to dimension 2, reduction, then stable
/// ranks with the degree-specific contours.
inline std::vector<RankPair> rank_pairs(const std::vector<PointCloud>& samples, const Contour& c0,
                                        const Contour& c1, double max_scale,
                                        Truncation truncation = Truncation::cap_at_max_scale,
                                        unsigned threads = 1) {
  if (samples.empty()) throw std::invalid_argument("rank_pairs: empty sample list");
  std::vector<RankPair> pairs(samples.size());
  parallel_for(samples.size(), threads, [&](std::size_t i) {
    const Metric metric = samples[i].torus_extents ? Metric::toroidal_euclidean : Metric::euclidean;
    const DissimilarityMatrix d = pairwise_dissimilarity(samples[i], metric);
    const Barcode bc = reduce_and_pair(build_vr_filtration(d, 2, max_scale));
    pairs[i] = RankPair{stable_rank(bc, 0, c0, truncation), stable_rank(bc, 1, c1, truncation)};
  });
  return pairs;
}

struct ClassifierSplit {
  std::map<std::string, RankPair> classifiers;           // pointwise means over the training split
  std::map<std::string, std::vector<RankPair>> tests;    // held-out pairs
};

/// Random per-class split: train_count pairs become the classifier (pointwise
/// mean in each degree), the rest are test data.
inline ClassifierSplit build_classifiers(const std::map<std::string, std::vector<RankPair>>& pairs_by_class,
                                         std::size_t train_count, std::uint64_t seed) {
  ClassifierSplit split;
  std::uint64_t class_stream = 0;
  for (const auto& [label, pairs] : pairs_by_class) {
    if (pairs.size() <= train_count) {
      throw std::invalid_argument("build_classifiers: class '" + label + "' has too few pairs");
    }
    Rng rng(derive_seed(seed, class_stream++));
    std::vector<std::size_t> order(pairs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);
    std::vector<std::size_t> train(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(train_count));
    std::sort(train.begin(), train.end());
    std::vector<std::size_t> test(order.begin() + static_cast<std::ptrdiff_t>(train_count), order.end());
    std::sort(test.begin(), test.end());

    std::vector<StableRank> h0s, h1s;
    h0s.reserve(train.size());
    h1s.reserve(train.size());
    for (std::size_t i : train) {
      h0s.push_back(pairs[i].h0);
      h1s.push_back(pairs[i].h1);
    }
    split.classifiers.emplace(label, RankPair{pointwise_mean(h0s), pointwise_mean(h1s)});
    auto& held_out = split.tests[label];
    held_out.reserve(test.size());
    for (std::size_t i : test) held_out.push_back(pairs[i]);
  }
  return split;
}

/// Label minimizing L1(classifier.h0, test.h0) + L1(classifier.h1, test.h1);
/// ties resolve to the lexicographically smallest label.
inline std::string classify(const RankPair& test, const std::map<std::string, RankPair>& classifiers) {
  if (classifiers.empty()) throw std::invalid_argument("classify: no classifiers");
  std::string best;
  double best_distance = std::numeric_limits<double>::infinity();
  for (const auto& [label, classifier] : classifiers) {
    const double distance =
        lp_distance(classifier.h0, test.h0, 1.0) + lp_distance(classifier.h1, test.h1, 1.0);
    if (distance < best_distance) {
      best_distance = distance;
      best = label;
    }
  }
  if (best.empty() && std::isinf(best_distance)) best = classifiers.begin()->first;
  return best;
}

struct CrossValidationResult {
  ConfusionMatrix confusion;
  double accuracy = 0.0;                  // mean over the diagonal of the confusion matrix
  std::vector<double> fold_accuracies;    // fraction of correct classifications per fold
};

/// Repeated random-subsampling validation: every fold redraws the train/test
/// split (fold f uses substream f of the seed), classifies all held-out
/// pairs, and accumulates the confusion counts, row-normalized at the end.
inline CrossValidationResult cross_validate(const std::map<std::string, std::vector<RankPair>>& pairs_by_class,
                                            std::size_t folds, std::size_t train_count, std::uint64_t seed) {
  if (folds < 1) throw std::invalid_argument("cross_validate: folds must be >= 1");
  std::vector<std::string> labels;
  labels.reserve(pairs_by_class.size());
  for (const auto& [label, _] : pairs_by_class) labels.push_back(label);
  std::map<std::string, std::size_t> label_index;
  for (std::size_t i = 0; i < labels.size(); ++i) label_index.emplace(labels[i], i);

  std::vector<std::vector<double>> counts(labels.size(), std::vector<double>(labels.size(), 0.0));
  CrossValidationResult result;
  for (std::size_t fold = 0; fold < folds; ++fold) {
    const ClassifierSplit split = build_classifiers(pairs_by_class, train_count, derive_seed(seed, fold));
    std::size_t fold_total = 0, fold_correct = 0;
    for (const auto& [label, tests] : split.tests) {
      for (const RankPair& test : tests) {
        const std::string predicted = classify(test, split.classifiers);
        counts[label_index.at(label)][label_index.at(predicted)] += 1.0;
        ++fold_total;
        if (predicted == label) ++fold_correct;
      }
    }
    result.fold_accuracies.push_back(fold_total ? static_cast<double>(fold_correct) / fold_total : 0.0);
  }

  for (auto& row : counts) {
    double total = 0.0;
    for (double x : row) total += x;
    if (total > 0.0) {
      for (double& x : row) x /= total;
    }
  }
  double diagonal = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) diagonal += counts[i][i];
  result.confusion = ConfusionMatrix{std::move(labels), std::move(counts)};
  result.accuracy = diagonal / static_cast<double>(result.confusion.labels.size());
  return result;
}

}  // namespace stablerank
