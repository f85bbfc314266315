#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pinlab/pin.hpp"

namespace pinlab {

/// How a completion distribution was estimated. The first four are the
/// proposed model's paths; baselines report `baseline`.
enum class EstimationPath : std::uint8_t {
  direct_single,
  joint,
  independence,
  prior_fallback,
  baseline,
};

inline constexpr std::size_t kEstimationPathCount = 5;

std::string_view to_string(EstimationPath path);

/// Normalized probabilities over every filling of the missing positions,
/// indexed by Candidate::code().
struct CompletionDistribution {
  MaskPattern pattern;
  std::vector<double> probabilities;
  EstimationPath path = EstimationPath::baseline;

  double at(const Candidate& c) const { return probabilities.at(c.code()); }
};

/// Scales `weights` in place to sum to 1. Throws std::domain_error when the
/// sum is not positive and finite.
void normalize(std::vector<double>& weights);

/// Contract shared by the proposed model and every baseline: a normalized,
/// strictly positive completion distribution for any valid observation.
/// Implementations are immutable and safe for concurrent readers.
class Scorer {
 public:
  virtual ~Scorer() = default;

  virtual CompletionDistribution completion_distribution(const Observation& obs) const = 0;
  virtual std::string name() const = 0;
};

/// Assigns equal mass to every candidate.
class UniformScorer final : public Scorer {
 public:
  CompletionDistribution completion_distribution(const Observation& obs) const override;
  std::string name() const override { return "uniform"; }
};

}  // namespace pinlab
