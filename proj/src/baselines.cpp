#include "pinlab/baselines.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace pinlab {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("alpha must be positive and finite");
  }
}

// Product of independent per-position rows, indexed by candidate code.
std::vector<double> product_distribution(const std::vector<std::array<double, kDigitCount>>& rows) {
  std::vector<double> out{1.0};
  for (const auto& row : rows) {
    std::vector<double> next;
    next.reserve(out.size() * kDigitCount);
    for (double prefix : out) {
      for (double v : row) next.push_back(prefix * v);
    }
    out = std::move(next);
  }
  normalize(out);
  return out;
}

}  // namespace

PositionalTables::PositionalTables(const PinHistogram& histogram)
    : total_pins_(histogram.total_pins()) {
  for (int i = 0; i < kPinSpace; ++i) {
    const Pin pin = Pin::from_index(i);
    const auto c = histogram.count(pin);
    if (c == 0) continue;
    for (int t = 0; t < kPinLength; ++t) {
      single_[idx(t)][idx(pin.digit(t))] += c;
      for (int j = 0; j < kPinLength; ++j) {
        if (j != t) pair_[idx(t)][idx(j)][idx(pin.digit(t))][idx(pin.digit(j))] += c;
      }
    }
  }
}

// --- bigram ---

BigramModel::BigramModel(const PinHistogram& histogram, double alpha)
    : tables_(histogram), alpha_(alpha) {
  check_alpha(alpha);
}

int BigramModel::neighbor(const MaskPattern& pattern, int t) {
  int best = -1;
  for (int j : pattern.observed()) {
    // observed() is ascending, so >= keeps the higher position on a tie
    if (best < 0 || std::abs(t - j) <= std::abs(t - best)) best = j;
  }
  return best;
}

double BigramModel::conditional(int t, int v, int j, int o) const {
  const double joint = static_cast<double>(tables_.pair_count(t, v, j, o));
  const double given = static_cast<double>(tables_.position_count(j, o));
  return (joint + alpha_) / (given + alpha_ * kDigitCount);
}

CompletionDistribution BigramModel::completion_distribution(const Observation& obs) const {
  std::vector<std::array<double, kDigitCount>> rows;
  for (int t : obs.pattern().missing()) {
    const int j = neighbor(obs.pattern(), t);
    const int o = obs.observed_digit(j);
    std::array<double, kDigitCount> row{};
    for (int v = 0; v < kDigitCount; ++v) row[static_cast<std::size_t>(v)] = conditional(t, v, j, o);
    rows.push_back(row);
  }
  return {obs.pattern(), product_distribution(rows), EstimationPath::baseline};
}

// --- Markov chain ---

MarkovChainModel::MarkovChainModel(const PinHistogram& histogram, double alpha) {
  check_alpha(alpha);
  std::array<std::uint64_t, kDigitCount> first{};
  for (int i = 0; i < kPinSpace; ++i) {
    const Pin pin = Pin::from_index(i);
    const auto c = histogram.count(pin);
    if (c == 0) continue;
    first[static_cast<std::size_t>(pin.digit(0))] += c;
    for (int p = 0; p + 1 < kPinLength; ++p) {
      transition_counts_[static_cast<std::size_t>(pin.digit(p))]
                        [static_cast<std::size_t>(pin.digit(p + 1))] += c;
    }
  }
  const double n = static_cast<double>(histogram.total_pins());
  for (std::size_t d = 0; d < kDigitCount; ++d) {
    initial_[d] = (static_cast<double>(first[d]) + alpha) / (n + alpha * kDigitCount);
  }
  for (std::size_t u = 0; u < kDigitCount; ++u) {
    std::uint64_t row_total = 0;
    for (auto c : transition_counts_[u]) row_total += c;
    for (std::size_t v = 0; v < kDigitCount; ++v) {
      transition_[u][v] = (static_cast<double>(transition_counts_[u][v]) + alpha) /
                          (static_cast<double>(row_total) + alpha * kDigitCount);
    }
  }
}

double MarkovChainModel::sequence_probability(const Pin& pin) const {
  double p = initial(pin.digit(0));
  for (int i = 0; i + 1 < kPinLength; ++i) p *= transition(pin.digit(i), pin.digit(i + 1));
  return p;
}

CompletionDistribution MarkovChainModel::completion_distribution(const Observation& obs) const {
  const auto space = obs.pattern().candidate_space();
  std::vector<double> probs(space);
  for (std::uint32_t code = 0; code < space; ++code) {
    probs[code] = sequence_probability(obs.complete(code));
  }
  normalize(probs);
  return {obs.pattern(), std::move(probs), EstimationPath::baseline};
}

// --- naive Bayes ---

NaiveBayesModel::NaiveBayesModel(const PinHistogram& histogram, double alpha)
    : tables_(histogram), alpha_(alpha) {
  check_alpha(alpha);
}

std::array<double, kDigitCount> NaiveBayesModel::position_posterior(const Observation& obs,
                                                                    int t) const {
  if (!obs.pattern().is_missing(t)) throw std::invalid_argument("target position is not missing");
  const double n = static_cast<double>(tables_.total_pins());
  std::array<double, kDigitCount> post{};
  double total = 0.0;
  for (int v = 0; v < kDigitCount; ++v) {
    const double class_count = static_cast<double>(tables_.position_count(t, v));
    double score = (class_count + alpha_) / (n + alpha_ * kDigitCount);
    for (int j : obs.pattern().observed()) {
      const double joint = static_cast<double>(tables_.pair_count(t, v, j, obs.observed_digit(j)));
      score *= (joint + alpha_) / (class_count + alpha_ * kDigitCount);
    }
    post[static_cast<std::size_t>(v)] = score;
    total += score;
  }
  for (double& p : post) p /= total;
  return post;
}

CompletionDistribution NaiveBayesModel::completion_distribution(const Observation& obs) const {
  std::vector<std::array<double, kDigitCount>> rows;
  for (int t : obs.pattern().missing()) rows.push_back(position_posterior(obs, t));
  return {obs.pattern(), product_distribution(rows), EstimationPath::baseline};
}

}  // namespace pinlab
