#include "pinlab/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "pinlab/errors.hpp"

namespace pinlab {

namespace {

bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }

__extension__ using u128 = unsigned __int128;

}  // namespace

void extract_line(std::string_view line, Corpus& out) {
  std::size_t i = 0;
  while (i < line.size()) {
    if (!is_ascii_digit(line[i])) {
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < line.size() && is_ascii_digit(line[end])) ++end;
    if (end - i == kPinLength) out.push_back(*Pin::parse(line.substr(i, kPinLength)));
    i = end;
  }
}

bool is_valid_utf8(std::string_view line) {
  std::size_t i = 0;
  const std::size_t n = line.size();
  while (i < n) {
    const auto c = static_cast<unsigned char>(line[i]);
    if (c < 0x80) {
      ++i;
      continue;
    }
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > n) return false;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(line[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // overlong forms, surrogates, beyond U+10FFFF
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
        (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF) {
      return false;
    }
    i += len;
  }
  return true;
}

namespace {

void extract_one(std::string_view line, ExtractionResult& result) {
  ++result.stats.lines_read;
  if (!is_valid_utf8(line)) {
    ++result.stats.lines_skipped;
    return;
  }
  const std::size_t before = result.corpus.size();
  extract_line(line, result.corpus);
  result.stats.pins_extracted += result.corpus.size() - before;
}

}  // namespace

ExtractionResult extract_pins(std::span<const std::string> lines) {
  ExtractionResult result;
  for (const auto& line : lines) extract_one(line, result);
  return result;
}

ExtractionResult extract_pins(std::istream& in) {
  ExtractionResult result;
  std::string line;
  while (std::getline(in, line)) extract_one(line, result);
  return result;
}

// --- split ---

void SplitConfig::validate() const {
  if (fraction_denominator == 0 || fraction_numerator == 0 ||
      fraction_numerator >= fraction_denominator) {
    throw std::invalid_argument("train fraction must lie strictly between 0 and 1");
  }
}

std::size_t SplitConfig::train_size(std::size_t n) const {
  validate();
  const auto wide = static_cast<u128>(n) * fraction_numerator / fraction_denominator;
  return static_cast<std::size_t>(wide);
}

std::string SplitConfig::fraction_str() const {
  return std::to_string(fraction_numerator) + "/" + std::to_string(fraction_denominator);
}

namespace {

std::uint64_t parse_u64(std::string_view text) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("bad train fraction");
  }
  return value;
}

}  // namespace

void parse_train_fraction(std::string_view text, SplitConfig& config) {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    num = parse_u64(text.substr(0, slash));
    den = parse_u64(text.substr(slash + 1));
  } else {
    const auto dot = text.find('.');
    const std::string_view whole = text.substr(0, dot);
    const std::string_view frac =
        dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if (frac.size() > 18 || (whole.empty() && frac.empty())) {
      throw std::invalid_argument("bad train fraction");
    }
    num = whole.empty() ? 0 : parse_u64(whole);
    for (char c : frac) {
      if (!is_ascii_digit(c)) throw std::invalid_argument("bad train fraction");
      num = num * 10 + static_cast<std::uint64_t>(c - '0');
      den *= 10;
    }
  }
  if (den == 0) throw std::invalid_argument("bad train fraction");
  const std::uint64_t g = std::gcd(num, den);
  SplitConfig parsed = config;
  parsed.fraction_numerator = g == 0 ? num : num / g;
  parsed.fraction_denominator = g == 0 ? den : den / g;
  parsed.validate();
  config = parsed;
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  // reject the low (2^64 mod bound) values so the modulo is unbiased
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  SplitMix64 rng(seed);
  for (std::size_t i = n; i-- > 1;) {
    const auto j = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(idx[i], idx[j]);
  }
  return idx;
}

CorpusSplit split_corpus(const Corpus& corpus, const SplitConfig& config) {
  config.validate();
  if (corpus.empty()) throw DataError("empty corpus");
  const auto order = shuffled_indices(corpus.size(), config.seed);
  const std::size_t cut = config.train_size(corpus.size());
  CorpusSplit split;
  split.train.reserve(cut);
  split.test.reserve(corpus.size() - cut);
  for (std::size_t i = 0; i < order.size(); ++i) {
    (i < cut ? split.train : split.test).push_back(corpus[order[i]]);
  }
  return split;
}

// --- file format ---

void write_corpus(const Corpus& corpus, std::ostream& out) {
  for (const Pin& pin : corpus) out << pin.str() << '\n';
}

Corpus read_corpus(std::istream& in) {
  Corpus corpus;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto pin = Pin::parse(line);
    if (!pin) throw DataError::at_line("expected exactly 4 ASCII digits", line_no);
    corpus.push_back(*pin);
  }
  return corpus;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_corpus(corpus, out);
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return read_corpus(in);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::uint64_t corpus_fingerprint(const Corpus& corpus) {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  auto mix = [&hash](char c) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001B3ULL;
  };
  for (const Pin& pin : corpus) {
    for (char c : pin.str()) mix(c);
    mix('\n');
  }
  return hash;
}

}  // namespace pinlab
