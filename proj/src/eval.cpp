#include "pinlab/eval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "pinlab/errors.hpp"
#include "pinlab/inference.hpp"

namespace pinlab {

ConfusionTally::ConfusionTally(std::uint32_t classes)
    : classes_(classes), diagonal_(classes), support_(classes), predicted_(classes) {
  if (classes == 0) throw std::invalid_argument("tally needs at least one class");
}

void ConfusionTally::add(std::uint32_t truth, std::uint32_t predicted, std::uint64_t times) {
  if (truth >= classes_ || predicted >= classes_) throw std::out_of_range("class out of range");
  cells_[{truth, predicted}] += times;
  total_ += times;
  support_[truth] += times;
  predicted_[predicted] += times;
  if (truth == predicted) diagonal_[truth] += times;
}

void ConfusionTally::merge(const ConfusionTally& other) {
  if (other.classes_ != classes_) throw std::invalid_argument("tally class spaces differ");
  for (const auto& [cell, c] : other.cells_) add(cell.first, cell.second, c);
}

std::uint64_t ConfusionTally::count(std::uint32_t truth, std::uint32_t predicted) const {
  const auto it = cells_.find({truth, predicted});
  return it == cells_.end() ? 0 : it->second;
}

namespace {

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

MacroMetrics macro_metrics(const ConfusionTally& tally) {
  if (tally.total() == 0) throw std::invalid_argument("empty tally");
  MacroMetrics m;
  m.per_class_recall.resize(tally.classes());
  double p_sum = 0.0;
  double r_sum = 0.0;
  double f_sum = 0.0;
  for (std::uint32_t c = 0; c < tally.classes(); ++c) {
    const auto tp = tally.true_positives(c);
    const double precision = ratio(tp, tally.predicted(c));
    const double recall = ratio(tp, tally.support(c));
    const double f1 =
        precision + recall == 0.0 ? 0.0 : 2.0 * precision * recall / (precision + recall);
    m.per_class_recall[c] = recall;
    p_sum += precision;
    r_sum += recall;
    f_sum += f1;
  }
  const double k = tally.classes();
  m.precision = p_sum / k;
  m.recall = r_sum / k;
  m.f1 = f_sum / k;
  return m;
}

double topk_success(std::span<const std::uint32_t> ranks, std::uint32_t k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (ranks.empty()) throw std::invalid_argument("no ranks");
  const auto hits = std::count_if(ranks.begin(), ranks.end(), [k](std::uint32_t r) { return r <= k; });
  return static_cast<double>(hits) / static_cast<double>(ranks.size());
}

double expected_guess_rank(std::span<const std::uint32_t> ranks) {
  if (ranks.empty()) throw std::invalid_argument("no ranks");
  std::uint64_t sum = 0;
  for (auto r : ranks) sum += r;
  return static_cast<double>(sum) / static_cast<double>(ranks.size());
}

double normal_critical_value(double level) {
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("level must lie in (0, 1)");
  if (level == 0.95) return 1.959964;
  // solve erfc(z / sqrt 2) = 1 - level by bisection
  const double tail = 1.0 - level;
  double lo = 0.0;
  double hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::erfc(mid / std::sqrt(2.0)) > tail ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Interval wald_interval(std::uint64_t successes, std::uint64_t n, double level) {
  if (n == 0) throw std::invalid_argument("wald interval needs n > 0");
  if (successes > n) throw std::invalid_argument("successes exceed n");
  const double z = normal_critical_value(level);
  const double p = static_cast<double>(successes) / static_cast<double>(n);
  const double half = z * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  return {std::clamp(p - half, 0.0, 1.0), std::clamp(p + half, 0.0, 1.0)};
}

namespace {

struct ContextAnswer {
  std::vector<std::uint32_t> rank_of;  // by candidate code, 1-based
  std::uint32_t predicted = 0;
  EstimationPath path = EstimationPath::baseline;
};

// Answers each distinct context once; results land in fixed slots, so the
// outcome is identical for any thread count.
std::vector<ContextAnswer> answer_contexts(const Scorer& scorer, const MaskPattern& pattern,
                                           const std::vector<int>& keys, unsigned threads) {
  std::vector<ContextAnswer> answers(keys.size());
  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t i = begin; i < keys.size(); i += step) {
      const Observation obs(Pin::from_index(keys[i]), pattern);
      const auto dist = scorer.completion_distribution(obs);
      ContextAnswer& a = answers[i];
      a.rank_of = rank_lookup(dist);
      a.predicted = static_cast<std::uint32_t>(
          std::find(a.rank_of.begin(), a.rank_of.end(), 1U) - a.rank_of.begin());
      a.path = dist.path;
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(keys.size(), 1));
  if (workers == 1) {
    work(0, 1);
    return answers;
  }
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
  pool.clear();
  return answers;
}

}  // namespace

ScenarioResult evaluate_scenario(const Scorer& scorer, const Corpus& test, const MaskPattern& pattern,
                                 std::span<const std::uint32_t> ks, unsigned threads) {
  const std::uint32_t space = pattern.candidate_space();
  for (auto k : ks) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    if (k > space) {
      throw std::invalid_argument("k exceeds candidate space: k=" + std::to_string(k) + " for " +
                                  pattern.label() + " (" + std::to_string(space) + " candidates)");
    }
  }
  if (test.empty()) throw DataError("empty test set");

  std::vector<int> slot_of(kPinSpace, -1);
  std::vector<int> keys;
  std::vector<int> record_slot(test.size());
  for (std::size_t i = 0; i < test.size(); ++i) {
    const int key = Observation(test[i], pattern).context_key();
    if (slot_of[static_cast<std::size_t>(key)] < 0) {
      slot_of[static_cast<std::size_t>(key)] = static_cast<int>(keys.size());
      keys.push_back(key);
    }
    record_slot[i] = slot_of[static_cast<std::size_t>(key)];
  }
  const auto answers = answer_contexts(scorer, pattern, keys, threads);

  ScenarioResult result(pattern);
  ConfusionTally tally(space);
  std::vector<std::uint32_t> ranks(test.size());
  for (std::size_t i = 0; i < test.size(); ++i) {
    const ContextAnswer& a = answers[static_cast<std::size_t>(record_slot[i])];
    const std::uint32_t truth = candidate_of(test[i], pattern).code();
    ranks[i] = a.rank_of[truth];
    tally.add(truth, a.predicted);
    ++result.path_counts[static_cast<std::size_t>(a.path)];
  }

  const auto macro = macro_metrics(tally);
  result.n = test.size();
  result.correct = static_cast<std::uint64_t>(std::count(ranks.begin(), ranks.end(), 1U));
  result.accuracy = static_cast<double>(result.correct) / static_cast<double>(result.n);
  result.macro_precision = macro.precision;
  result.macro_recall = macro.recall;
  result.macro_f1 = macro.f1;
  result.per_class_recall = macro.per_class_recall;
  for (auto k : ks) result.topk.emplace_back(k, topk_success(ranks, k));
  result.expected_rank = expected_guess_rank(ranks);
  result.ci95 = wald_interval(result.correct, result.n);
  return result;
}

std::vector<std::pair<std::uint64_t, ScenarioResult>> tau_sensitivity(
    const TrainedModel& model, const Corpus& test, const MaskPattern& pattern,
    std::span<const std::uint64_t> taus, std::span<const std::uint32_t> ks, unsigned threads) {
  if (pattern.missing_count() != 2) {
    throw std::invalid_argument("tau sensitivity needs exactly two missing positions");
  }
  std::vector<std::pair<std::uint64_t, ScenarioResult>> out;
  for (auto tau : taus) {
    out.emplace_back(tau, evaluate_scenario(model.with_tau(tau), test, pattern, ks, threads));
  }
  return out;
}

}  // namespace pinlab
