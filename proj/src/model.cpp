#include "pinlab/model.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include "pinlab/errors.hpp"

namespace pinlab {

namespace {

constexpr std::array<int, kPinLength> kPositionStride = {1000, 100, 10, 1};

// Calls fn(code, count) for every completion of obs in ascending code order.
template <typename Fn>
void for_each_completion(const std::vector<std::uint64_t>& counts, const Observation& obs,
                         Fn&& fn) {
  const auto missing = obs.pattern().missing();
  const std::uint32_t space = obs.pattern().candidate_space();
  const int base = obs.context_key();
  for (std::uint32_t code = 0; code < space; ++code) {
    int index = base;
    std::uint32_t rest = code;
    for (std::size_t i = missing.size(); i-- > 0;) {
      index += static_cast<int>(rest % 10) * kPositionStride[static_cast<std::size_t>(missing[i])];
      rest /= 10;
    }
    fn(code, counts[static_cast<std::size_t>(index)]);
  }
}

void check_digit(int digit) {
  if (digit < 0 || digit >= kDigitCount) throw std::invalid_argument("digit out of range");
}

}  // namespace

void ModelConfig::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("alpha must be positive and finite");
  }
}

// --- PinHistogram ---

PinHistogram::PinHistogram() : counts_(kPinSpace, 0) {}

void PinHistogram::add(const Pin& pin, std::uint64_t times) {
  counts_[static_cast<std::size_t>(pin.index())] += times;
  total_pins_ += times;
  for (int p = 0; p < kPinLength; ++p) pooled_[static_cast<std::size_t>(pin.digit(p))] += times;
}

void PinHistogram::merge(const PinHistogram& other) {
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  total_pins_ += other.total_pins_;
  for (std::size_t d = 0; d < pooled_.size(); ++d) pooled_[d] += other.pooled_[d];
}

std::uint64_t PinHistogram::context_count(const Observation& obs) const {
  std::uint64_t total = 0;
  for_each_completion(counts_, obs, [&](std::uint32_t, std::uint64_t c) { total += c; });
  return total;
}

std::array<std::uint64_t, kDigitCount> PinHistogram::context_digit_counts(const Observation& obs,
                                                                          int position) const {
  const auto missing = obs.pattern().missing();
  std::size_t slot = missing.size();
  for (std::size_t i = 0; i < missing.size(); ++i) {
    if (missing[i] == position) slot = i;
  }
  if (slot == missing.size()) throw std::invalid_argument("target position is not missing");
  std::uint32_t divisor = 1;
  for (std::size_t i = slot + 1; i < missing.size(); ++i) divisor *= 10;

  std::array<std::uint64_t, kDigitCount> out{};
  for_each_completion(counts_, obs, [&](std::uint32_t code, std::uint64_t c) {
    out[code / divisor % 10] += c;
  });
  return out;
}

std::vector<std::uint64_t> PinHistogram::completion_counts(const Observation& obs) const {
  std::vector<std::uint64_t> out(obs.pattern().candidate_space());
  for_each_completion(counts_, obs, [&](std::uint32_t code, std::uint64_t c) { out[code] = c; });
  return out;
}

std::size_t PinHistogram::distinct_pins() const {
  std::size_t n = 0;
  for (auto c : counts_) n += c != 0;
  return n;
}

PinHistogram build_histogram(const Corpus& corpus) {
  PinHistogram h;
  for (const Pin& pin : corpus) h.add(pin);
  return h;
}

// --- TrainedModel ---

TrainedModel::TrainedModel(PinHistogram histogram, ModelConfig config)
    : TrainedModel(std::make_shared<const PinHistogram>(std::move(histogram)), config) {}

TrainedModel::TrainedModel(std::shared_ptr<const PinHistogram> histogram, ModelConfig config)
    : histogram_(std::move(histogram)), config_(config) {
  config_.validate();
}

TrainedModel TrainedModel::with_tau(std::uint64_t tau) const {
  ModelConfig config = config_;
  config.tau = tau;
  return TrainedModel(histogram_, config);
}

double TrainedModel::smoothed_conditional(const Observation& obs, int target_position,
                                          int digit) const {
  check_digit(digit);
  const auto counts = histogram_->context_digit_counts(obs, target_position);
  std::uint64_t context = 0;
  for (auto c : counts) context += c;
  const double a = config_.alpha;
  return (static_cast<double>(counts[static_cast<std::size_t>(digit)]) + a) /
         (static_cast<double>(context) + a * kDigitCount);
}

std::vector<double> TrainedModel::conditional_row(const Observation& obs, int position) const {
  const auto counts = histogram_->context_digit_counts(obs, position);
  std::uint64_t context = 0;
  for (auto c : counts) context += c;
  const double a = config_.alpha;
  const double denom = static_cast<double>(context) + a * kDigitCount;
  std::vector<double> row(kDigitCount);
  for (std::size_t d = 0; d < row.size(); ++d) row[d] = (static_cast<double>(counts[d]) + a) / denom;
  return row;
}

double TrainedModel::prior_probability(int digit) const {
  check_digit(digit);
  const double a = config_.alpha;
  return (static_cast<double>(histogram_->pooled_digit_count(digit)) + a) /
         (static_cast<double>(histogram_->total_digit_slots()) + a * kDigitCount);
}

double TrainedModel::joint_two_probability(const Observation& obs, const Candidate& pair) const {
  if (obs.pattern().missing_count() != 2) {
    throw std::invalid_argument("joint estimate needs exactly two missing positions");
  }
  const double a = config_.alpha;
  const auto n_pin = histogram_->count(obs.complete(pair));
  const auto n_context = histogram_->context_count(obs);
  return (static_cast<double>(n_pin) + a) / (static_cast<double>(n_context) + a * 100.0);
}

namespace {

// Product over missing positions of rows[i][digit_i], indexed by candidate code.
std::vector<double> outer_product(const std::vector<std::vector<double>>& rows) {
  std::vector<double> out{1.0};
  for (const auto& row : rows) {
    std::vector<double> next;
    next.reserve(out.size() * row.size());
    for (double prefix : out) {
      for (double v : row) next.push_back(prefix * v);
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

CompletionDistribution TrainedModel::completion_distribution(const Observation& obs) const {
  const MaskPattern& pattern = obs.pattern();
  const std::size_t m = pattern.missing_count();
  const std::uint64_t n_context = histogram_->context_count(obs);
  CompletionDistribution dist{pattern, {}, EstimationPath::direct_single};

  if (n_context == 0) {
    std::vector<double> prior(kDigitCount);
    for (int d = 0; d < kDigitCount; ++d) prior[static_cast<std::size_t>(d)] = prior_probability(d);
    dist.probabilities = outer_product(std::vector<std::vector<double>>(m, prior));
    normalize(dist.probabilities);
    dist.path = EstimationPath::prior_fallback;
    return dist;
  }

  if (m == 1) {
    dist.probabilities = conditional_row(obs, pattern.missing()[0]);
    dist.path = EstimationPath::direct_single;
    return dist;
  }

  if (m == 2 && n_context >= config_.tau) {
    const double a = config_.alpha;
    const double denom = static_cast<double>(n_context) + a * 100.0;
    const auto counts = histogram_->completion_counts(obs);
    dist.probabilities.resize(counts.size());
    for (std::size_t c = 0; c < counts.size(); ++c) {
      dist.probabilities[c] = (static_cast<double>(counts[c]) + a) / denom;
    }
    dist.path = EstimationPath::joint;
    return dist;
  }

  std::vector<std::vector<double>> rows;
  for (int p : pattern.missing()) rows.push_back(conditional_row(obs, p));
  dist.probabilities = outer_product(rows);
  normalize(dist.probabilities);
  dist.path = EstimationPath::independence;
  return dist;
}

TrainedModel train(const Corpus& corpus, const ModelConfig& config) {
  return TrainedModel(build_histogram(corpus), config);
}

// --- serialization ---

std::string format_decimal(double value) {
  char buf[512];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed);
  if (res.ec != std::errc()) throw std::invalid_argument("cannot format value");
  std::string out(buf, res.ptr);
  if (out.find('.') == std::string::npos) out += ".0";
  return out;
}

namespace {

constexpr std::string_view kMagic = "PINMODEL";
constexpr std::string_view kVersion = "v1";

template <typename T>
bool parse_number(std::string_view text, T& value) {
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && ptr == text.data() + text.size() && !text.empty();
}

ModelConfig parse_header(const std::string& line) {
  std::istringstream fields(line);
  std::string magic, version, alpha_field, tau_field, extra;
  fields >> magic >> version >> alpha_field >> tau_field;
  if (magic != kMagic) throw DataError::at_line("not a PINMODEL file", 1);
  if (version != kVersion) {
    throw DataError::at_line("unsupported model version '" + version + "'", 1);
  }
  ModelConfig config;
  if (alpha_field.rfind("alpha=", 0) != 0 ||
      !parse_number(std::string_view(alpha_field).substr(6), config.alpha) ||
      tau_field.rfind("tau=", 0) != 0 ||
      !parse_number(std::string_view(tau_field).substr(4), config.tau) || (fields >> extra)) {
    throw DataError::at_line("malformed header", 1);
  }
  if (line != std::string(kMagic) + " " + std::string(kVersion) + " " + alpha_field + " " +
                  tau_field) {
    throw DataError::at_line("malformed header", 1);
  }
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw DataError::at_line(e.what(), 1);
  }
  return config;
}

}  // namespace

void write_model(const TrainedModel& model, std::ostream& out) {
  const auto& config = model.config();
  out << kMagic << ' ' << kVersion << " alpha=" << format_decimal(config.alpha)
      << " tau=" << config.tau << '\n';
  const auto& h = model.histogram();
  for (int i = 0; i < kPinSpace; ++i) {
    const Pin pin = Pin::from_index(i);
    if (const auto c = h.count(pin); c != 0) out << pin.str() << ' ' << c << '\n';
  }
  out << "TOTAL " << h.total_pins() << '\n';
}

TrainedModel read_model(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError::at_line("missing PINMODEL header", 1);
  const ModelConfig config = parse_header(line);

  PinHistogram h;
  std::size_t line_no = 1;
  int last_index = -1;
  bool trailer_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trailer_seen) throw DataError::at_line("content after TOTAL trailer", line_no);
    const std::string_view view(line);
    if (view.rfind("TOTAL ", 0) == 0) {
      std::uint64_t total = 0;
      if (!parse_number(view.substr(6), total)) {
        throw DataError::at_line("malformed TOTAL trailer", line_no);
      }
      if (total != h.total_pins()) {
        throw DataError::at_line("TOTAL " + std::to_string(total) + " does not match entry sum " +
                                     std::to_string(h.total_pins()),
                                 line_no);
      }
      trailer_seen = true;
      continue;
    }
    std::uint64_t count = 0;
    const auto pin = view.size() > 5 && view[4] == ' ' ? Pin::parse(view.substr(0, 4)) : std::nullopt;
    if (!pin || !parse_number(view.substr(5), count) || count == 0) {
      throw DataError::at_line("expected '<4-digit pin> <positive count>'", line_no);
    }
    if (pin->index() <= last_index) {
      throw DataError::at_line("entries must be strictly ascending by PIN", line_no);
    }
    last_index = pin->index();
    h.add(*pin, count);
  }
  return TrainedModel(std::move(h), config);
}

void serialize_model(const TrainedModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_model(model, out);
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

TrainedModel deserialize_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return read_model(in);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace pinlab
