#pragma once

// Ranking, point prediction and guess rank on top of any Scorer.
//
// Candidates are ranked by descending probability; equal probabilities are
// ordered by ascending candidate tuple, so every ranking is a total order.
// Ranks are 1-based: rank k means the truth is found on the k-th guess.

#include <cstdint>
#include <vector>

#include "pinlab/pin.hpp"
#include "pinlab/scorer.hpp"

namespace pinlab {

struct RankedCompletion {
  Candidate candidate;
  double probability;
};

using RankedCompletions = std::vector<RankedCompletion>;

RankedCompletions rank_distribution(const CompletionDistribution& dist);
RankedCompletions rank_completions(const Scorer& scorer, const Observation& obs);

/// For each candidate code, its 1-based rank in rank_distribution(dist).
std::vector<std::uint32_t> rank_lookup(const CompletionDistribution& dist);

Candidate predict(const Scorer& scorer, const Observation& obs);

/// Throws std::invalid_argument when truth's width differs from the number of
/// missing positions.
std::uint32_t true_rank(const Scorer& scorer, const Observation& obs, const Candidate& truth);

}  // namespace pinlab
