#pragma once

// Corpus ingestion: PIN extraction from raw password dumps, deterministic
// train/test splitting and the one-PIN-per-line corpus file format.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pinlab/pin.hpp"

namespace pinlab {

/// Extracted PINs in extraction order, duplicates kept.
using Corpus = std::vector<Pin>;

struct ExtractionStats {
  std::uint64_t lines_read = 0;
  std::uint64_t lines_skipped = 0;  // not valid UTF-8
  std::uint64_t pins_extracted = 0;
};

struct ExtractionResult {
  Corpus corpus;
  ExtractionStats stats;
};

/// Appends every maximal run of exactly four ASCII digits in `line` to `out`,
/// left to right. Runs of any other length contribute nothing.
void extract_line(std::string_view line, Corpus& out);

/// True when `line` is well-formed UTF-8.
bool is_valid_utf8(std::string_view line);

/// Runs extract_line over each line. Lines that are not valid UTF-8 are
/// skipped and counted in stats.lines_skipped.
ExtractionResult extract_pins(std::span<const std::string> lines);

/// Streaming form over '\n'-separated input. A trailing '\r' is treated like
/// any other non-digit character.
ExtractionResult extract_pins(std::istream& in);

/// Train fraction as an exact rational so that floor(fraction * N) has no
/// floating-point edge cases.
struct SplitConfig {
  std::uint64_t fraction_numerator = 4;
  std::uint64_t fraction_denominator = 5;
  std::uint64_t seed = 39;

  /// Throws std::invalid_argument unless 0 < numerator < denominator.
  void validate() const;
  /// floor(N * numerator / denominator)
  std::size_t train_size(std::size_t n) const;
  std::string fraction_str() const;
};

/// Parses a decimal ("0.8", ".75") or a ratio ("4/5") into a reduced
/// fraction. Throws std::invalid_argument on anything outside (0, 1).
void parse_train_fraction(std::string_view text, SplitConfig& config);

/// SplitMix64 (Steele, Lea, Flood 2014).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform value in [0, bound) by rejection sampling; bound > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

/// Fisher-Yates permutation of 0..n-1: for i = n-1 down to 1, swap i with
/// below(i + 1).
std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed);

struct CorpusSplit {
  Corpus train;
  Corpus test;
};

/// First train_size(N) shuffled records form train, the rest test.
/// Throws DataError("empty corpus") on an empty corpus.
CorpusSplit split_corpus(const Corpus& corpus, const SplitConfig& config);

void write_corpus(const Corpus& corpus, std::ostream& out);
/// Throws DataError naming the 1-based line on anything but 4 ASCII digits.
Corpus read_corpus(std::istream& in);

/// Throws IoError when the file cannot be written or read.
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);
Corpus load_corpus(const std::filesystem::path& path);

/// FNV-1a 64 over the corpus file bytes; order-sensitive.
std::uint64_t corpus_fingerprint(const Corpus& corpus);

}  // namespace pinlab
