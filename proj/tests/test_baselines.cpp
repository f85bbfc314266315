#include <numeric>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "pinlab/baselines.hpp"
#include "pinlab/inference.hpp"

using namespace pinlab;

namespace {

Observation obs(const char* text) { return Observation::parse(text); }

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

void check_uniform(const Scorer& scorer, const char* text) {
  const auto d = scorer.completion_distribution(obs(text));
  for (double p : d.probabilities) CHECK(p == doctest::Approx(1.0 / static_cast<double>(d.probabilities.size())));
}

}  // namespace

TEST_CASE("positional tables are histogram marginalizations") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const Corpus corpus = oracle::random_corpus(rng, 120);
    const PositionalTables tables(build_histogram(corpus));
    CHECK(tables.total_pins() == corpus.size());
    for (int t = 0; t < 4; ++t) {
      for (int a = 0; a < 10; ++a) {
        CHECK(tables.position_count(t, a) == oracle::position_count(corpus, t, a));
        for (int j = 0; j < 4; ++j) {
          if (j == t) continue;
          for (int b = 0; b < 10; ++b) {
            REQUIRE(tables.pair_count(t, a, j, b) == oracle::pair_count(corpus, t, a, j, b));
          }
        }
      }
    }
  }
}

TEST_CASE("bigram conditional on the tiny histogram") {
  const BigramModel bigram(build_histogram(oracle::tiny_corpus()));
  CHECK(bigram.conditional(0, 1, 1, 2) == doctest::Approx(4.0 / 13));
  check_uniform(BigramModel(build_histogram({})), "?2?4");
}

TEST_CASE("bigram neighbour rule") {
  CHECK(BigramModel::neighbor(MaskPattern::parse("13"), 0) == 1);
  CHECK(BigramModel::neighbor(MaskPattern::parse("13"), 2) == 3);  // tie goes right
  CHECK(BigramModel::neighbor(MaskPattern::parse("123"), 0) == 3);
  CHECK(BigramModel::neighbor(MaskPattern::parse("234"), 3) == 0);
  CHECK(BigramModel::neighbor(MaskPattern::parse("2"), 1) == 2);
  CHECK(BigramModel::neighbor(MaskPattern::parse("14"), 3) == 2);
}

TEST_CASE("property: bigram on d1,d3 | d2,d4 is P(d1|d2) P(d3|d4)") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    const Corpus corpus = oracle::random_corpus(rng, 150);
    const double alpha = std::uniform_real_distribution<double>(0.1, 2.0)(rng);
    const BigramModel bigram(build_histogram(corpus), alpha);
    const Observation o(Pin::from_index(std::uniform_int_distribution<int>(0, 9999)(rng)),
                        MaskPattern::parse("13"));
    const int d2 = o.observed_digit(1);
    const int d4 = o.observed_digit(3);
    std::vector<double> expected(100);
    for (int a = 0; a < 10; ++a) {
      for (int c = 0; c < 10; ++c) {
        const double p1 = (static_cast<double>(oracle::pair_count(corpus, 0, a, 1, d2)) + alpha) /
                          (static_cast<double>(oracle::position_count(corpus, 1, d2)) + 10 * alpha);
        const double p3 = (static_cast<double>(oracle::pair_count(corpus, 2, c, 3, d4)) + alpha) /
                          (static_cast<double>(oracle::position_count(corpus, 3, d4)) + 10 * alpha);
        expected[static_cast<std::size_t>(a * 10 + c)] = p1 * p3;
      }
    }
    const double total = sum(expected);
    const auto got = bigram.completion_distribution(o);
    for (std::size_t i = 0; i < 100; ++i) {
      CHECK(got.probabilities[i] == doctest::Approx(expected[i] / total).epsilon(1e-12));
    }
  }
}

TEST_CASE("markov chain parameters on the tiny histogram") {
  const MarkovChainModel markov(build_histogram(oracle::tiny_corpus()));
  CHECK(markov.initial(1) == doctest::Approx(4.0 / 14));
  CHECK(markov.transition(1, 2) == doctest::Approx(4.0 / 13));
  std::uint64_t transitions = 0;
  for (int u = 0; u < 10; ++u) {
    double row = 0;
    for (int v = 0; v < 10; ++v) {
      transitions += markov.transition_count(u, v);
      row += markov.transition(u, v);
    }
    CHECK(row == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(transitions == 12);
  CHECK(markov.transition_count(1, 2) == 3);
  check_uniform(MarkovChainModel(build_histogram({})), "?2??");
}

TEST_CASE("property: markov conditioning equals brute-force enumeration") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 40; ++trial) {
    const Corpus corpus = oracle::random_corpus(rng, 150);
    const double alpha = 1.0;
    // pooled transition counts and first-digit counts straight from the PINs
    double first[10] = {};
    double trans[10][10] = {};
    double out[10] = {};
    for (const Pin& p : corpus) {
      first[p.digit(0)] += 1;
      for (int i = 0; i < 3; ++i) {
        trans[p.digit(i)][p.digit(i + 1)] += 1;
        out[p.digit(i)] += 1;
      }
    }
    const auto n = static_cast<double>(corpus.size());
    auto seq_p = [&](const Pin& s) {
      double p = (first[s.digit(0)] + alpha) / (n + 10 * alpha);
      for (int i = 0; i < 3; ++i) {
        p *= (trans[s.digit(i)][s.digit(i + 1)] + alpha) / (out[s.digit(i)] + 10 * alpha);
      }
      return p;
    };
    const MarkovChainModel markov(build_histogram(corpus), alpha);
    const auto o = oracle::random_observation(rng, corpus);
    // enumerate all 10,000 PINs and keep those consistent with the observation
    std::vector<double> expected(o.pattern().candidate_space(), 0.0);
    for (int i = 0; i < kPinSpace; ++i) {
      const Pin s = Pin::from_index(i);
      if (oracle::matches_context(s, o)) expected[candidate_of(s, o.pattern()).code()] = seq_p(s);
    }
    const double total = sum(expected);
    const auto got = markov.completion_distribution(o);
    CHECK(sum(got.probabilities) == doctest::Approx(1.0).epsilon(1e-9));
    for (std::size_t c = 0; c < expected.size(); ++c) {
      CHECK(got.probabilities[c] == doctest::Approx(expected[c] / total).epsilon(1e-12));
    }
  }
}

TEST_CASE("naive Bayes posterior on the tiny histogram") {
  const NaiveBayesModel nb(build_histogram(oracle::tiny_corpus()));
  // hand-derived Bayes for ?234: class prior (count+1)/14, likelihoods (pair+1)/(class+10)
  const double s1 = 4.0 / 14 * (4.0 / 13) * (4.0 / 13) * (3.0 / 13);
  const double s9 = 2.0 / 14 * (1.0 / 11) * (1.0 / 11) * (1.0 / 11);
  const double s0 = 1.0 / 14 * 0.1 * 0.1 * 0.1;
  const double z = s1 + s9 + 8 * s0;
  const auto post = nb.position_posterior(obs("?234"), 0);
  CHECK(post[1] == doctest::Approx(s1 / z).epsilon(1e-12));
  CHECK(post[9] == doctest::Approx(s9 / z).epsilon(1e-12));
  CHECK(post[0] == doctest::Approx(s0 / z).epsilon(1e-12));
  check_uniform(NaiveBayesModel(build_histogram({})), "???4");
}

TEST_CASE("naive Bayes on a perfectly correlated corpus") {
  const NaiveBayesModel nb(build_histogram(Corpus(10, *Pin::parse("1111"))));
  CHECK(predict(nb, obs("?111")).str() == "1");
  CHECK(predict(nb, obs("?1??")).str() == "111");
}

TEST_CASE("property: naive Bayes equals brute-force Bayes per position") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 40; ++trial) {
    const Corpus corpus = oracle::random_corpus(rng, 120);
    const double alpha = std::uniform_real_distribution<double>(0.2, 2.0)(rng);
    const NaiveBayesModel nb(build_histogram(corpus), alpha);
    const auto o = oracle::random_observation(rng, corpus);
    const auto n = static_cast<double>(corpus.size());
    std::vector<std::array<double, 10>> rows;
    for (int t : o.pattern().missing()) {
      std::array<double, 10> row{};
      double z = 0;
      for (int v = 0; v < 10; ++v) {
        const double cls = static_cast<double>(oracle::position_count(corpus, t, v));
        double s = (cls + alpha) / (n + 10 * alpha);
        for (int j : o.pattern().observed()) {
          s *= (static_cast<double>(oracle::pair_count(corpus, t, v, j, o.observed_digit(j))) + alpha) /
               (cls + 10 * alpha);
        }
        row[static_cast<std::size_t>(v)] = s;
        z += s;
      }
      for (double& x : row) x /= z;
      rows.push_back(row);
    }
    const auto got = nb.completion_distribution(o);
    for (std::uint32_t code = 0; code < got.probabilities.size(); ++code) {
      const Candidate c(code, static_cast<int>(rows.size()));
      double expected = 1.0;
      for (int i = 0; i < c.width(); ++i) expected *= rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c.digit(i))];
      CHECK(got.probabilities[code] == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("property: every baseline is normalized and strictly positive") {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 150; ++trial) {
    const Corpus corpus = oracle::random_corpus(rng, 200);
    const auto h = build_histogram(corpus);
    const BigramModel bigram(h);
    const MarkovChainModel markov(h);
    const NaiveBayesModel nb(h);
    const auto o = oracle::random_observation(rng, corpus);
    for (const Scorer* s : {static_cast<const Scorer*>(&bigram), static_cast<const Scorer*>(&markov),
                            static_cast<const Scorer*>(&nb)}) {
      const auto d = s->completion_distribution(o);
      CHECK(d.probabilities.size() == o.pattern().candidate_space());
      CHECK(sum(d.probabilities) == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(*std::min_element(d.probabilities.begin(), d.probabilities.end()) > 0.0);
    }
  }
}
