#pragma once

// Comparison scorers. Each is built from a PinHistogram and smooths with the
// same add-alpha rule as the proposed model.

#include <array>
#include <cstdint>
#include <string>

#include "pinlab/model.hpp"
#include "pinlab/scorer.hpp"

namespace pinlab {

/// Per-position digit counts and co-occurrence counts for every ordered
/// position pair, all exact marginalizations of a histogram.
class PositionalTables {
 public:
  explicit PositionalTables(const PinHistogram& histogram);

  std::uint64_t total_pins() const { return total_pins_; }
  /// PINs with digit d at position p.
  std::uint64_t position_count(int p, int d) const { return single_[idx(p)][idx(d)]; }
  /// PINs with digit a at position t and digit b at position j (t != j).
  std::uint64_t pair_count(int t, int a, int j, int b) const {
    return pair_[idx(t)][idx(j)][idx(a)][idx(b)];
  }

 private:
  static std::size_t idx(int v) { return static_cast<std::size_t>(v); }

  std::uint64_t total_pins_ = 0;
  std::array<std::array<std::uint64_t, kDigitCount>, kPinLength> single_{};
  std::array<std::array<std::array<std::array<std::uint64_t, kDigitCount>, kDigitCount>, kPinLength>,
             kPinLength>
      pair_{};
};

/// Scores each missing position by its nearest observed neighbour,
/// P(d_t | d_j) = (N(d_t, d_j) + alpha) / (N(d_j) + 10 alpha), and multiplies
/// the factors. Ties in distance go to the higher position, so hiding d1 and
/// d3 gives P(d1 | d2) P(d3 | d4).
class BigramModel final : public Scorer {
 public:
  BigramModel(const PinHistogram& histogram, double alpha = 1.0);

  /// Observed position used to score missing position t.
  static int neighbor(const MaskPattern& pattern, int t);

  /// P(d_t = v | d_j = o)
  double conditional(int t, int v, int j, int o) const;

  CompletionDistribution completion_distribution(const Observation& obs) const override;
  std::string name() const override { return "bigram"; }

 private:
  PositionalTables tables_;
  double alpha_;
};

/// First-order chain with one transition matrix shared by the three adjacent
/// position pairs. Observations are conditioned on by enumerating all
/// completions: P(s) = pi(s1) A(s1,s2) A(s2,s3) A(s3,s4), renormalized.
class MarkovChainModel final : public Scorer {
 public:
  MarkovChainModel(const PinHistogram& histogram, double alpha = 1.0);

  double initial(int digit) const { return initial_[static_cast<std::size_t>(digit)]; }
  double transition(int from, int to) const {
    return transition_[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)];
  }
  /// Raw pooled count of from->to over the three adjacent pairs.
  std::uint64_t transition_count(int from, int to) const {
    return transition_counts_[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)];
  }
  double sequence_probability(const Pin& pin) const;

  CompletionDistribution completion_distribution(const Observation& obs) const override;
  std::string name() const override { return "markov"; }

 private:
  std::array<double, kDigitCount> initial_{};
  std::array<std::array<std::uint64_t, kDigitCount>, kDigitCount> transition_counts_{};
  std::array<std::array<double, kDigitCount>, kDigitCount> transition_{};
};

/// Per missing position t, treats d_t as the class and the observed digits as
/// conditionally independent features:
///   P(d_t = v | obs) ∝ P_t(v) ∏_j P(o_j | d_t = v)
/// with P_t(v) = (N_t(v) + alpha) / (N + 10 alpha) and
/// P(o_j | d_t = v) = (N(d_t = v, d_j = o_j) + alpha) / (N_t(v) + 10 alpha).
/// Positions are combined by product.
class NaiveBayesModel final : public Scorer {
 public:
  NaiveBayesModel(const PinHistogram& histogram, double alpha = 1.0);

  /// Normalized posterior over the 10 digits at missing position t.
  std::array<double, kDigitCount> position_posterior(const Observation& obs, int t) const;

  CompletionDistribution completion_distribution(const Observation& obs) const override;
  std::string name() const override { return "nb"; }

 private:
  PositionalTables tables_;
  double alpha_;
};

}  // namespace pinlab
