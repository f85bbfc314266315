#pragma once

// The context-conditioned PIN model.
//
// Training only builds a joint histogram over the 10,000 possible PINs. Every
// count the estimators need is a marginalization of it:
//
//   N(C)      PINs agreeing with the observation at every observed position
//   N(x, C)   those PINs that also carry digit x at a given missing position
//   N(x)      occurrences of x pooled over all four positions
//
// Conditionals are add-alpha smoothed over the 10 digits,
//   P(x | C) = (N(x, C) + alpha) / (N(C) + 10 alpha),
// and unseen contexts (N(C) = 0) fall back to the pooled digit prior
//   P(x) = (N(x) + alpha) / (4 N_pins + 10 alpha).
//
// For two missing digits the smoothed joint over the 100 pairs is used once
// the context has been seen at least tau times; sparser contexts and every
// three-missing query use the product of per-position conditionals.

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "pinlab/corpus.hpp"
#include "pinlab/pin.hpp"
#include "pinlab/scorer.hpp"

namespace pinlab {

struct ModelConfig {
  double alpha = 1.0;
  std::uint64_t tau = 10;

  /// Throws std::invalid_argument unless alpha is positive and finite.
  void validate() const;

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

/// Joint count of every observed PIN plus derived totals.
class PinHistogram {
 public:
  PinHistogram();

  void add(const Pin& pin, std::uint64_t times = 1);
  /// Integer addition; commutative and associative.
  void merge(const PinHistogram& other);

  std::uint64_t count(const Pin& pin) const {
    return counts_[static_cast<std::size_t>(pin.index())];
  }
  std::uint64_t total_pins() const { return total_pins_; }
  std::uint64_t pooled_digit_count(int digit) const {
    return pooled_.at(static_cast<std::size_t>(digit));
  }
  std::uint64_t total_digit_slots() const { return total_pins_ * kPinLength; }

  /// N(C)
  std::uint64_t context_count(const Observation& obs) const;

  /// N(x, C) for every digit x at `position`, which must be missing in obs.
  /// Other missing positions are marginalized out.
  std::array<std::uint64_t, kDigitCount> context_digit_counts(const Observation& obs,
                                                              int position) const;

  /// Count of every completion of obs, indexed by candidate code.
  std::vector<std::uint64_t> completion_counts(const Observation& obs) const;

  /// Number of distinct PINs with a nonzero count.
  std::size_t distinct_pins() const;

  friend bool operator==(const PinHistogram&, const PinHistogram&) = default;

 private:
  std::vector<std::uint64_t> counts_;  // indexed by Pin::index()
  std::uint64_t total_pins_ = 0;
  std::array<std::uint64_t, kDigitCount> pooled_{};
};

/// Immutable after construction. Copies share the histogram.
class TrainedModel final : public Scorer {
 public:
  TrainedModel(PinHistogram histogram, ModelConfig config);

  const PinHistogram& histogram() const { return *histogram_; }
  const ModelConfig& config() const { return config_; }

  /// Same histogram and alpha, different joint-estimation gate.
  TrainedModel with_tau(std::uint64_t tau) const;

  std::uint64_t context_count(const Observation& obs) const {
    return histogram_->context_count(obs);
  }

  /// Smoothed P(digit at target_position | observed context). Returns the
  /// formula value even for unseen contexts (uniform 1/10). Throws
  /// std::invalid_argument when target_position is observed.
  double smoothed_conditional(const Observation& obs, int target_position, int digit) const;

  double prior_probability(int digit) const;

  /// Smoothed joint over the 100 pairs: (N(pin) + alpha) / (N(C) + 100 alpha).
  /// Throws std::invalid_argument unless exactly two positions are missing.
  double joint_two_probability(const Observation& obs, const Candidate& pair) const;

  CompletionDistribution completion_distribution(const Observation& obs) const override;
  std::string name() const override { return "proposed"; }

 private:
  TrainedModel(std::shared_ptr<const PinHistogram> histogram, ModelConfig config);

  std::vector<double> conditional_row(const Observation& obs, int position) const;

  std::shared_ptr<const PinHistogram> histogram_;
  ModelConfig config_;
};

PinHistogram build_histogram(const Corpus& corpus);
TrainedModel train(const Corpus& corpus, const ModelConfig& config = {});

// Model file, LF-terminated text:
//   PINMODEL v1 alpha=<decimal> tau=<int>
//   <pin> <count>        one line per nonzero entry, ascending by PIN
//   TOTAL <total pins>
// The trailer is always written; on read it is optional but cross-checked.

/// Shortest decimal that reads back to the same double, always with a '.'.
std::string format_decimal(double value);

void write_model(const TrainedModel& model, std::ostream& out);
/// Throws DataError naming the line on version mismatch, malformed or
/// unsorted entries, or a TOTAL that disagrees with the entries.
TrainedModel read_model(std::istream& in);

void serialize_model(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel deserialize_model(const std::filesystem::path& path);

}  // namespace pinlab
