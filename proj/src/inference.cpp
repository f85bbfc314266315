#include "pinlab/inference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pinlab {

std::string_view to_string(EstimationPath path) {
  switch (path) {
    case EstimationPath::direct_single: return "direct_single";
    case EstimationPath::joint: return "joint";
    case EstimationPath::independence: return "independence";
    case EstimationPath::prior_fallback: return "prior_fallback";
    case EstimationPath::baseline: return "baseline";
  }
  return "unknown";
}

void normalize(std::vector<double>& weights) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw std::domain_error("cannot normalize a distribution with non-positive mass");
  }
  for (double& w : weights) w /= total;
}

CompletionDistribution UniformScorer::completion_distribution(const Observation& obs) const {
  const auto space = obs.pattern().candidate_space();
  return {obs.pattern(), std::vector<double>(space, 1.0 / space), EstimationPath::baseline};
}

namespace {

std::vector<std::uint32_t> ranked_codes(const CompletionDistribution& dist) {
  std::vector<std::uint32_t> order(dist.probabilities.size());
  std::iota(order.begin(), order.end(), 0U);
  const auto& p = dist.probabilities;
  std::sort(order.begin(), order.end(), [&p](std::uint32_t a, std::uint32_t b) {
    if (p[a] != p[b]) return p[a] > p[b];
    return a < b;
  });
  return order;
}

}  // namespace

RankedCompletions rank_distribution(const CompletionDistribution& dist) {
  const int width = static_cast<int>(dist.pattern.missing_count());
  RankedCompletions out;
  out.reserve(dist.probabilities.size());
  for (auto code : ranked_codes(dist)) {
    out.push_back({Candidate(code, width), dist.probabilities[code]});
  }
  return out;
}

RankedCompletions rank_completions(const Scorer& scorer, const Observation& obs) {
  return rank_distribution(scorer.completion_distribution(obs));
}

std::vector<std::uint32_t> rank_lookup(const CompletionDistribution& dist) {
  const auto order = ranked_codes(dist);
  std::vector<std::uint32_t> rank(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<std::uint32_t>(i + 1);
  return rank;
}

Candidate predict(const Scorer& scorer, const Observation& obs) {
  const auto dist = scorer.completion_distribution(obs);
  const auto& p = dist.probabilities;
  // first maximum in code order == lexicographic tie-break
  const auto best = std::max_element(p.begin(), p.end());
  return Candidate(static_cast<std::uint32_t>(best - p.begin()),
                   static_cast<int>(dist.pattern.missing_count()));
}

std::uint32_t true_rank(const Scorer& scorer, const Observation& obs, const Candidate& truth) {
  if (static_cast<std::size_t>(truth.width()) != obs.pattern().missing_count()) {
    throw std::invalid_argument("truth has " + std::to_string(truth.width()) +
                                " digits but the observation is missing " +
                                std::to_string(obs.pattern().missing_count()));
  }
  const auto dist = scorer.completion_distribution(obs);
  const auto& p = dist.probabilities;
  const double target = p[truth.code()];
  std::uint32_t rank = 1;
  for (std::uint32_t code = 0; code < p.size(); ++code) {
    if (p[code] > target || (p[code] == target && code < truth.code())) ++rank;
  }
  return rank;
}

}  // namespace pinlab
