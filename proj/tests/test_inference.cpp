#include <algorithm>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "pinlab/inference.hpp"
#include "pinlab/model.hpp"

using namespace pinlab;

namespace {

/// Returns a fixed distribution regardless of context.
class FixedScorer final : public Scorer {
 public:
  explicit FixedScorer(std::vector<double> probs) : probs_(std::move(probs)) {}
  CompletionDistribution completion_distribution(const Observation& obs) const override {
    return {obs.pattern(), probs_, EstimationPath::baseline};
  }
  std::string name() const override { return "fixed"; }

 private:
  std::vector<double> probs_;
};

std::vector<std::uint32_t> codes(const RankedCompletions& r) {
  std::vector<std::uint32_t> out;
  for (const auto& x : r) out.push_back(x.candidate.code());
  return out;
}

}  // namespace

TEST_CASE("uniform distribution ranks lexicographically") {
  const UniformScorer uniform;
  const auto ranked = rank_completions(uniform, Observation::parse("?234"));
  CHECK(codes(ranked) == std::vector<std::uint32_t>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  CHECK(predict(uniform, Observation::parse("?234")).str() == "0");
  CHECK(predict(uniform, Observation::parse("??34")).str() == "00");
  CHECK(true_rank(uniform, Observation::parse("?234"), Candidate(9, 1)) == 10);
}

TEST_CASE("tiny model ranking") {
  const auto model = train(oracle::tiny_corpus());
  const auto ranked = rank_completions(model, Observation::parse("?234"));
  CHECK(ranked.front().candidate.str() == "1");
  CHECK(ranked.front().probability == doctest::Approx(0.25));
  CHECK(predict(model, Observation::parse("?234")).str() == "1");
  CHECK(predict(train({}), Observation::parse("?234")).str() == "0");
  CHECK(true_rank(model, Observation::parse("??34"), Candidate(12, 2)) == 1);
}

TEST_CASE("ties break by ascending candidate") {
  const FixedScorer scorer({0.1, 0.3, 0.1, 0.3, 0.2, 0.0, 0.0, 0.0, 0.0, 0.0});
  const auto ranked = rank_completions(scorer, Observation::parse("1?34"));
  CHECK(codes(ranked) == std::vector<std::uint32_t>{1, 3, 4, 0, 2, 5, 6, 7, 8, 9});
  CHECK(true_rank(scorer, Observation::parse("1?34"), Candidate(3, 1)) == 2);
  CHECK(true_rank(scorer, Observation::parse("1?34"), Candidate(9, 1)) == 10);
}

TEST_CASE("true_rank rejects a truth of the wrong width") {
  const UniformScorer uniform;
  CHECK_THROWS_AS(true_rank(uniform, Observation::parse("??34"), Candidate(1, 1)),
                  std::invalid_argument);
}

TEST_CASE("property: ranking invariants") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const Corpus corpus = oracle::random_corpus(rng, 150);
    const auto model = train(corpus, {1.0, std::uniform_int_distribution<std::uint64_t>(0, 10)(rng)});
    const auto o = oracle::random_observation(rng, corpus);
    const auto dist = model.completion_distribution(o);
    const auto ranked = rank_distribution(dist);

    // permutation of the candidate space, non-increasing probabilities
    auto c = codes(ranked);
    REQUIRE(c.size() == o.pattern().candidate_space());
    for (std::size_t i = 1; i < ranked.size(); ++i) {
      CHECK(ranked[i - 1].probability >= ranked[i].probability);
    }
    std::sort(c.begin(), c.end());
    for (std::uint32_t i = 0; i < c.size(); ++i) REQUIRE(c[i] == i);

    // scaling by a power of two is exact, so the order must be unchanged
    CompletionDistribution scaled = dist;
    for (double& p : scaled.probabilities) p *= 0.125;
    CHECK(codes(rank_distribution(scaled)) == codes(ranked));

    // rank lookup agrees with true_rank, and rank 1 iff predicted
    const auto lookup = rank_lookup(dist);
    const auto best = predict(model, o);
    for (int k = 0; k < 5; ++k) {
      const Candidate truth(std::uniform_int_distribution<std::uint32_t>(0, o.pattern().candidate_space() - 1)(rng),
                            static_cast<int>(o.pattern().missing_count()));
      const auto r = true_rank(model, o, truth);
      CHECK(r == lookup[truth.code()]);
      CHECK((r == 1) == (truth == best));
    }
    CHECK(rank_distribution(model.completion_distribution(o)).front().candidate == best);
  }
}
