#include "pinlab/report.hpp"

#include <cstdio>

namespace pinlab {

namespace {

Json positions_json(std::span<const int> positions) {
  Json out = Json::array();
  for (int p : positions) out.push_back(p + 1);
  return out;
}

Json path_counts_json(const ScenarioResult& r) {
  Json paths = Json::object();
  for (std::size_t p = 0; p < kEstimationPathCount; ++p) {
    if (r.path_counts[p] != 0) {
      paths[std::string(to_string(static_cast<EstimationPath>(p)))] = r.path_counts[p];
    }
  }
  return paths;
}

}  // namespace

Json to_json(const ScenarioResult& r) {
  Json j;
  j["pattern"] = r.pattern.label();
  j["missing"] = positions_json(r.pattern.missing());
  j["observed"] = positions_json(r.pattern.observed());
  j["n"] = r.n;
  j["correct"] = r.correct;
  j["accuracy"] = r.accuracy;
  j["macro_precision"] = r.macro_precision;
  j["macro_recall"] = r.macro_recall;
  j["macro_f1"] = r.macro_f1;
  Json topk = Json::object();
  for (const auto& [k, rate] : r.topk) topk[std::to_string(k)] = rate;
  j["topk"] = std::move(topk);
  j["expected_rank"] = r.expected_rank;
  j["ci95"] = Json::array({r.ci95.lo, r.ci95.hi});
  j["path_counts"] = path_counts_json(r);
  Json recall = Json::object();
  const int width = static_cast<int>(r.pattern.missing_count());
  for (std::uint32_t c = 0; c < r.per_class_recall.size(); ++c) {
    recall[Candidate(c, width).str()] = r.per_class_recall[c];
  }
  j["per_class_recall"] = std::move(recall);
  return j;
}

Json corpus_fingerprint_json(const Corpus& corpus) {
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(corpus_fingerprint(corpus)));
  Json j;
  j["count"] = corpus.size();
  j["fnv1a64"] = hex;
  return j;
}

Json sensitivity_entry_json(std::uint64_t tau, const ScenarioResult& result) {
  Json j;
  j["tau"] = tau;
  j["n"] = result.n;
  j["correct"] = result.correct;
  j["accuracy"] = result.accuracy;
  j["ci95"] = Json::array({result.ci95.lo, result.ci95.hi});
  j["path_counts"] = path_counts_json(result);
  j["result"] = to_json(result);
  return j;
}

std::string dump_report(const Json& report) { return report.dump(2) + "\n"; }

}  // namespace pinlab
