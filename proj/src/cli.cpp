#include "pinlab/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "pinlab/baselines.hpp"
#include "pinlab/errors.hpp"
#include "pinlab/eval.hpp"
#include "pinlab/inference.hpp"

namespace pinlab::cli {

namespace {

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
               item.end());
    if (item.empty()) throw std::invalid_argument("empty item in list '" + text + "'");
    out.push_back(item);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

template <typename T>
std::vector<T> parse_numbers(const std::string& text, const char* what) {
  std::vector<T> out;
  for (const auto& item : split_commas(text)) {
    T value{};
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc() || ptr != item.data() + item.size()) {
      throw std::invalid_argument(std::string("bad ") + what + " value '" + item + "'");
    }
    out.push_back(value);
  }
  return out;
}

std::string format_probability(double p) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), p);
  return {buf, res.ptr};
}

std::unique_ptr<Scorer> make_scorer(const std::string& name, const TrainedModel& proposed) {
  const double alpha = proposed.config().alpha;
  if (name == "proposed") return std::make_unique<TrainedModel>(proposed);
  if (name == "bigram") return std::make_unique<BigramModel>(proposed.histogram(), alpha);
  if (name == "markov") return std::make_unique<MarkovChainModel>(proposed.histogram(), alpha);
  if (name == "nb") return std::make_unique<NaiveBayesModel>(proposed.histogram(), alpha);
  throw std::invalid_argument("unknown model '" + name + "'");
}

Json config_json(const RunConfig& config) {
  Json j;
  j["alpha"] = config.model.alpha;
  j["tau"] = config.model.tau;
  j["seed"] = config.split.seed;
  j["train_fraction"] = config.split.fraction_str();
  j["ks"] = config.ks;
  Json scenarios = Json::array();
  for (const auto& p : config.scenarios) scenarios.push_back(p.scenario());
  j["scenarios"] = std::move(scenarios);
  j["models"] = config.models;
  return j;
}

Json split_json(const CorpusSplit& split) {
  Json j;
  j["train"] = split.train.size();
  j["test"] = split.test.size();
  return j;
}

CorpusSplit checked_split(const Corpus& corpus, const SplitConfig& config) {
  auto split = split_corpus(corpus, config);
  if (split.test.empty()) throw DataError("empty test split");
  return split;
}

}  // namespace

unsigned thread_budget() {
  unsigned n = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PINLAB_THREADS"); env != nullptr && *env != '\0') {
    unsigned cap = 0;
    const std::string_view text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), cap);
    if (ec != std::errc() || ptr != text.data() + text.size() || cap == 0) {
      throw std::invalid_argument("PINLAB_THREADS must be a positive integer");
    }
    n = std::min(n, cap);
  }
  return n;
}

std::vector<MaskPattern> parse_scenarios(const std::string& text) {
  if (text == "all") return MaskPattern::all();
  std::vector<MaskPattern> out;
  for (const auto& item : split_commas(text)) {
    const auto pattern = MaskPattern::parse(item);
    if (std::find(out.begin(), out.end(), pattern) != out.end()) {
      throw std::invalid_argument("duplicate scenario '" + item + "'");
    }
    out.push_back(pattern);
  }
  return out;
}

std::vector<std::string> parse_models(const std::string& text) {
  if (text == "all") return kModelNames;
  auto out = split_commas(text);
  for (const auto& name : out) {
    if (std::find(kModelNames.begin(), kModelNames.end(), name) == kModelNames.end()) {
      throw std::invalid_argument("unknown model '" + name + "' (expected proposed, bigram, markov, nb)");
    }
  }
  return out;
}

Json evaluate_report(const Corpus& corpus, const RunConfig& config, unsigned threads) {
  for (const auto& pattern : config.scenarios) {
    for (auto k : config.ks) {
      if (k < 1 || k > pattern.candidate_space()) {
        throw std::invalid_argument("k exceeds candidate space: k=" + std::to_string(k) + " for " +
                                    pattern.label());
      }
    }
  }
  const auto split = checked_split(corpus, config.split);
  const TrainedModel proposed = train(split.train, config.model);

  Json report;
  report["schema"] = kReportSchema;
  report["command"] = "evaluate";
  report["config"] = config_json(config);
  report["corpus"] = corpus_fingerprint_json(corpus);
  report["split"] = split_json(split);
  Json models = Json::array();
  for (const auto& name : config.models) {
    const auto scorer = make_scorer(name, proposed);
    Json entry;
    entry["model"] = name;
    Json scenarios = Json::array();
    for (const auto& pattern : config.scenarios) {
      scenarios.push_back(to_json(evaluate_scenario(*scorer, split.test, pattern, config.ks, threads)));
    }
    entry["scenarios"] = std::move(scenarios);
    models.push_back(std::move(entry));
  }
  report["models"] = std::move(models);
  return report;
}

Json sensitivity_report(const Corpus& corpus, const RunConfig& config, const MaskPattern& pattern,
                        unsigned threads) {
  const auto split = checked_split(corpus, config.split);
  const TrainedModel proposed = train(split.train, config.model);
  const auto sweep = tau_sensitivity(proposed, split.test, pattern, config.taus, config.ks, threads);

  Json report;
  report["schema"] = kReportSchema;
  report["command"] = "sensitivity";
  Json cfg = config_json(config);
  cfg["scenarios"] = Json::array({pattern.scenario()});
  cfg["models"] = Json::array({"proposed"});
  cfg["taus"] = config.taus;
  report["config"] = std::move(cfg);
  report["corpus"] = corpus_fingerprint_json(corpus);
  report["split"] = split_json(split);
  report["pattern"] = pattern.label();
  Json results = Json::array();
  for (const auto& [tau, result] : sweep) results.push_back(sensitivity_entry_json(tau, result));
  report["results"] = std::move(results);
  return report;
}

namespace {

struct Options {
  double alpha = 1.0;
  std::uint64_t tau = 10;
  std::uint64_t seed = 39;
  std::string train_fraction = "0.8";
  std::string scenarios;
  std::string models = "all";
  std::string ks = "1,3,5,10";
  std::string taus = "1,5,10,20,50";
  bool no_split = false;
  std::string report;

  std::string input;
  std::string output;
  std::string corpus;
  std::string model;
  std::string observation;
};

RunConfig to_run_config(const Options& o, const char* default_scenarios) {
  RunConfig config;
  config.model.alpha = o.alpha;
  config.model.tau = o.tau;
  config.model.validate();
  config.split.seed = o.seed;
  parse_train_fraction(o.train_fraction, config.split);
  config.ks = parse_numbers<std::uint32_t>(o.ks, "--ks");
  config.taus = parse_numbers<std::uint64_t>(o.taus, "--taus");
  config.scenarios = parse_scenarios(o.scenarios.empty() ? default_scenarios : o.scenarios);
  config.models = parse_models(o.models);
  return config;
}

void write_report(const Json& report, const std::string& path, std::ostream& out) {
  const std::string text = dump_report(report);
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path + " for writing");
  file << text;
  file.flush();
  if (!file) throw IoError("write failed: " + path);
}

int cmd_extract(const Options& o, std::ostream& err) {
  std::ifstream in(o.input, std::ios::binary);
  if (!in) throw IoError("cannot open " + o.input);
  const auto result = extract_pins(in);
  if (in.bad()) throw IoError("read failed: " + o.input);
  save_corpus(result.corpus, o.output);
  err << "lines read: " << result.stats.lines_read << ", lines skipped: " << result.stats.lines_skipped
      << ", pins extracted: " << result.stats.pins_extracted << '\n';
  return kOk;
}

int cmd_train(const Options& o, std::ostream& err) {
  const RunConfig config = to_run_config(o, "all");
  const Corpus corpus = load_corpus(o.corpus);
  Corpus training;
  if (o.no_split) {
    training = corpus;
  } else {
    training = split_corpus(corpus, config.split).train;
    if (training.empty()) throw DataError("empty training split");
  }
  const TrainedModel model = train(training, config.model);
  serialize_model(model, o.model);
  err << "trained on " << training.size() << " of " << corpus.size() << " pins, "
      << model.histogram().distinct_pins() << " distinct\n";
  return kOk;
}

int cmd_evaluate(const Options& o, std::ostream& out, std::ostream& err) {
  const RunConfig config = to_run_config(o, "all");
  const Corpus corpus = load_corpus(o.corpus);
  const unsigned threads = thread_budget();
  err << "evaluating " << config.models.size() << " model(s) on " << config.scenarios.size()
      << " scenario(s), " << threads << " thread(s)\n";
  write_report(evaluate_report(corpus, config, threads), o.report, out);
  return kOk;
}

int cmd_sensitivity(const Options& o, std::ostream& out, std::ostream&) {
  const RunConfig config = to_run_config(o, "12");
  if (config.scenarios.size() != 1) {
    throw std::invalid_argument("sensitivity takes exactly one scenario");
  }
  const Corpus corpus = load_corpus(o.corpus);
  write_report(sensitivity_report(corpus, config, config.scenarios.front(), thread_budget()), o.report,
               out);
  return kOk;
}

int cmd_predict(const Options& o, std::ostream& out) {
  const Observation obs = Observation::parse(o.observation);
  const TrainedModel model = deserialize_model(o.model);
  const auto dist = model.completion_distribution(obs);
  const auto ranked = rank_distribution(dist);
  const std::size_t shown = std::min<std::size_t>(10, ranked.size());
  for (std::size_t i = 0; i < shown; ++i) {
    out << ranked[i].candidate.str() << '\t' << obs.complete(ranked[i].candidate).str() << '\t'
        << format_probability(ranked[i].probability) << '\t' << to_string(dist.path) << '\n';
  }
  return kOk;
}

void add_model_options(CLI::App& cmd, Options& o) {
  cmd.add_option("--alpha", o.alpha, "Laplace smoothing pseudo-count")->capture_default_str();
  cmd.add_option("--tau", o.tau, "Minimum context count for joint estimation")->capture_default_str();
}

void add_split_options(CLI::App& cmd, Options& o) {
  cmd.add_option("--seed", o.seed, "Shuffle seed")->capture_default_str();
  cmd.add_option("--train-fraction", o.train_fraction, "Train share, decimal or ratio")
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"PIN partial-leakage inference toolkit", "pinlab"};
  app.set_config("--config", "", "Read options from a TOML/INI file");
  app.require_subcommand(1);

  auto* extract = app.add_subcommand("extract", "Extract 4-digit PINs from a password dump");
  extract->add_option("input", o.input, "Password dump, one candidate per line")->required();
  extract->add_option("output", o.output, "Corpus file to write")->required();

  auto* train_cmd = app.add_subcommand("train", "Train the model and write a model file");
  train_cmd->add_option("corpus", o.corpus, "Corpus file")->required();
  train_cmd->add_option("model", o.model, "Model file to write")->required();
  add_model_options(*train_cmd, o);
  add_split_options(*train_cmd, o);
  train_cmd->add_flag("--no-split", o.no_split, "Train on the whole corpus");

  auto* evaluate = app.add_subcommand("evaluate", "Evaluate models over masking scenarios");
  evaluate->add_option("corpus", o.corpus, "Corpus file")->required();
  add_model_options(*evaluate, o);
  add_split_options(*evaluate, o);
  evaluate->add_option("--scenarios", o.scenarios, "'all' or e.g. 1,12,234")->default_str("all");
  evaluate->add_option("--models", o.models, "'all' or a subset of proposed,bigram,markov,nb")
      ->capture_default_str();
  evaluate->add_option("--ks", o.ks, "Top-k cut-offs")->capture_default_str();
  evaluate->add_option("--report", o.report, "Report path (default stdout)");

  auto* predict_cmd = app.add_subcommand("predict", "Rank completions of a partial PIN");
  predict_cmd->add_option("model", o.model, "Model file")->required();
  predict_cmd->add_option("observation", o.observation, "e.g. ?2?4")->required();

  auto* sensitivity = app.add_subcommand("sensitivity", "Accuracy across joint-estimation gates");
  sensitivity->add_option("corpus", o.corpus, "Corpus file")->required();
  add_model_options(*sensitivity, o);
  add_split_options(*sensitivity, o);
  sensitivity->add_option("--scenarios", o.scenarios, "Two-missing scenario")->default_str("12");
  sensitivity->add_option("--taus", o.taus, "Gate values")->capture_default_str();
  sensitivity->add_option("--ks", o.ks, "Top-k cut-offs")->capture_default_str();
  sensitivity->add_option("--report", o.report, "Report path (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*extract) return cmd_extract(o, err);
    if (*train_cmd) return cmd_train(o, err);
    if (*evaluate) return cmd_evaluate(o, out, err);
    if (*predict_cmd) return cmd_predict(o, out);
    if (*sensitivity) return cmd_sensitivity(o, out, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kData;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kData;
  }
  return kUsage;
}

}  // namespace pinlab::cli
