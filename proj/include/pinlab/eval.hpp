#pragma once

// Scenario evaluation: mask every test PIN with a pattern, query a scorer and
// aggregate accuracy, macro precision/recall/F1 over the full candidate class
// space, top-k success, expected guess rank and a Wald interval.

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "pinlab/corpus.hpp"
#include "pinlab/model.hpp"
#include "pinlab/pin.hpp"
#include "pinlab/scorer.hpp"

namespace pinlab {

/// Counts per (true candidate, predicted candidate) over 10^|M| classes.
class ConfusionTally {
 public:
  explicit ConfusionTally(std::uint32_t classes);

  void add(std::uint32_t truth, std::uint32_t predicted, std::uint64_t times = 1);
  void merge(const ConfusionTally& other);

  std::uint32_t classes() const { return classes_; }
  std::uint64_t total() const { return total_; }
  std::uint64_t count(std::uint32_t truth, std::uint32_t predicted) const;

  std::uint64_t true_positives(std::uint32_t c) const { return diagonal_[c]; }
  std::uint64_t support(std::uint32_t c) const { return support_[c]; }
  std::uint64_t predicted(std::uint32_t c) const { return predicted_[c]; }

 private:
  std::uint32_t classes_;
  std::uint64_t total_ = 0;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> cells_;
  std::vector<std::uint64_t> diagonal_;
  std::vector<std::uint64_t> support_;
  std::vector<std::uint64_t> predicted_;
};

struct MacroMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::vector<double> per_class_recall;  // indexed by candidate code
};

/// Averages over every class, zero-support classes included; 0/0 counts as 0.
/// Throws std::invalid_argument on an empty tally.
MacroMetrics macro_metrics(const ConfusionTally& tally);

/// Fraction of 1-based ranks <= k. Throws std::invalid_argument when k < 1 or
/// ranks is empty.
double topk_success(std::span<const std::uint32_t> ranks, std::uint32_t k);

/// Mean 1-based rank. Throws std::invalid_argument on empty input.
double expected_guess_rank(std::span<const std::uint32_t> ranks);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Two-sided standard normal quantile for a confidence level in (0, 1).
double normal_critical_value(double level);

/// p ± z sqrt(p (1 - p) / n), clipped to [0, 1]. z is 1.959964 at 0.95.
/// Throws std::invalid_argument when n == 0 or successes > n.
Interval wald_interval(std::uint64_t successes, std::uint64_t n, double level = 0.95);

struct ScenarioResult {
  explicit ScenarioResult(const MaskPattern& p) : pattern(p) {}

  MaskPattern pattern;
  std::uint64_t n = 0;
  std::uint64_t correct = 0;
  double accuracy = 0.0;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  std::vector<double> per_class_recall;
  std::vector<std::pair<std::uint32_t, double>> topk;
  double expected_rank = 0.0;
  Interval ci95;
  /// Test records answered through each EstimationPath.
  std::array<std::uint64_t, kEstimationPathCount> path_counts{};
};

inline const std::vector<std::uint32_t> kDefaultKs = {1, 3, 5, 10};

/// Throws std::invalid_argument for a k outside 1..10^|M| and DataError for an
/// empty test set. Results do not depend on `threads`.
ScenarioResult evaluate_scenario(const Scorer& scorer, const Corpus& test, const MaskPattern& pattern,
                                 std::span<const std::uint32_t> ks = kDefaultKs,
                                 unsigned threads = 1);

inline const std::vector<std::uint64_t> kDefaultTaus = {1, 5, 10, 20, 50};

/// Re-evaluates `model` under each gate value; the histogram is shared.
/// Throws std::invalid_argument unless exactly two positions are missing.
std::vector<std::pair<std::uint64_t, ScenarioResult>> tau_sensitivity(
    const TrainedModel& model, const Corpus& test, const MaskPattern& pattern,
    std::span<const std::uint64_t> taus = kDefaultTaus,
    std::span<const std::uint32_t> ks = kDefaultKs, unsigned threads = 1);

}  // namespace pinlab
