#pragma once

// Command-line front end. Subcommands: extract, train, evaluate, predict,
// sensitivity. Exit codes: 0 success, 1 usage error, 2 I/O error, 3 data
// error. Reports go to --report (or stdout); logs go to the error stream.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pinlab/corpus.hpp"
#include "pinlab/model.hpp"
#include "pinlab/pin.hpp"
#include "pinlab/report.hpp"

namespace pinlab::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kIo = 2,
  kData = 3,
};

inline const std::vector<std::string> kModelNames = {"proposed", "bigram", "markov", "nb"};

struct RunConfig {
  ModelConfig model;
  SplitConfig split;
  std::vector<std::uint32_t> ks = {1, 3, 5, 10};
  std::vector<MaskPattern> scenarios = MaskPattern::all();
  std::vector<std::string> models = kModelNames;
  std::vector<std::uint64_t> taus = {1, 5, 10, 20, 50};
};

/// Worker count: hardware concurrency, capped by PINLAB_THREADS when set.
unsigned thread_budget();

/// "all" or a comma list of 1-based missing-position sets, e.g. "1,12,234".
std::vector<MaskPattern> parse_scenarios(const std::string& text);
/// Comma list drawn from kModelNames.
std::vector<std::string> parse_models(const std::string& text);

/// Splits the corpus, trains every requested model on the train portion and
/// evaluates every requested scenario on the test portion.
Json evaluate_report(const Corpus& corpus, const RunConfig& config, unsigned threads);

/// Gate sweep for a single two-missing pattern.
Json sensitivity_report(const Corpus& corpus, const RunConfig& config, const MaskPattern& pattern,
                        unsigned threads);

/// Entry point; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pinlab::cli
