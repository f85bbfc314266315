#pragma once

// Core value types shared by every module: PINs, mask patterns, observations
// and candidate fillings of the missing positions.
//
// Positions are 0-based in code (0..3). Text forms are 1-based to match the
// usual d1..d4 naming: a pattern with positions 0 and 1 missing prints as
// "d1d2|d3d4" and parses from the scenario string "12".

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pinlab {

inline constexpr int kPinLength = 4;
inline constexpr int kDigitCount = 10;
inline constexpr int kPinSpace = 10000;

/// A four-digit PIN. Leading zeros are significant ("0007" != "7").
class Pin {
 public:
  constexpr Pin() = default;

  /// Throws std::invalid_argument unless every digit is in 0..9.
  explicit Pin(const std::array<int, kPinLength>& digits);

  /// Parses exactly four ASCII digits; anything else yields nullopt.
  static std::optional<Pin> parse(std::string_view text);

  /// Inverse of index(); throws std::out_of_range outside 0..9999.
  static Pin from_index(int index);

  int digit(int position) const { return digits_[static_cast<std::size_t>(position)]; }

  /// Dense index d1*1000 + d2*100 + d3*10 + d4. Ascending index order is
  /// ascending lexicographic order of the 4-character string.
  int index() const {
    return digits_[0] * 1000 + digits_[1] * 100 + digits_[2] * 10 + digits_[3];
  }

  std::string str() const;

  friend auto operator<=>(const Pin&, const Pin&) = default;

 private:
  std::array<std::uint8_t, kPinLength> digits_{};
};

/// Which positions are missing. Valid patterns have 1 to 3 missing positions,
/// giving exactly 14 distinct patterns.
class MaskPattern {
 public:
  /// Throws std::invalid_argument for an empty, full, out-of-range or
  /// duplicated position list.
  static MaskPattern from_missing(std::span<const int> positions);
  static MaskPattern from_missing(std::initializer_list<int> positions) {
    return from_missing(std::span<const int>(positions.begin(), positions.size()));
  }

  /// Parses a scenario string listing 1-based missing positions, e.g. "13".
  static MaskPattern parse(std::string_view scenario);

  /// All 14 patterns: four single, six double, four triple, in the order
  /// d1, d2, d3, d4, d1d2, d1d3, d1d4, d2d3, d2d4, d3d4, d2d3d4, d1d3d4,
  /// d1d2d4, d1d2d3.
  static const std::vector<MaskPattern>& all();

  std::span<const int> missing() const { return {missing_.data(), missing_count_}; }
  std::span<const int> observed() const {
    return {observed_.data(), kPinLength - missing_count_};
  }
  std::size_t missing_count() const { return missing_count_; }
  bool is_missing(int position) const { return (bits_ >> position) & 1U; }

  /// Size of the candidate space, 10^|missing|.
  std::uint32_t candidate_space() const;

  /// "d1d2|d3d4"
  std::string label() const;
  /// "12"
  std::string scenario() const;

  std::uint8_t bits() const { return bits_; }

  friend bool operator==(const MaskPattern& a, const MaskPattern& b) { return a.bits_ == b.bits_; }

 private:
  explicit MaskPattern(std::uint8_t bits);

  std::uint8_t bits_ = 0;
  std::size_t missing_count_ = 0;
  std::array<int, kPinLength> missing_{};
  std::array<int, kPinLength> observed_{};
};

/// A filling of the missing positions, in ascending position order. The code
/// is the filling read as a base-10 number, so ascending code order is
/// ascending lexicographic order of the digit tuple.
class Candidate {
 public:
  /// Throws std::invalid_argument unless width is 1..3 and code < 10^width.
  Candidate(std::uint32_t code, int width);
  /// Throws std::invalid_argument on bad digits or width.
  static Candidate from_digits(std::span<const int> digits);

  std::uint32_t code() const { return code_; }
  int width() const { return width_; }
  /// i-th digit, 0 = first missing position.
  int digit(int i) const;
  std::string str() const;

  friend auto operator<=>(const Candidate&, const Candidate&) = default;

 private:
  std::uint32_t code_ = 0;
  int width_ = 1;
};

/// A partially observed PIN: the pattern plus digit values at the observed
/// positions. Missing positions hold no value.
class Observation {
 public:
  /// Masks a known PIN.
  Observation(const Pin& pin, MaskPattern pattern);

  /// Parses a 4-character string over {0-9, '?'} with 1 to 3 '?' characters,
  /// e.g. "?2?4". Throws std::invalid_argument otherwise.
  static Observation parse(std::string_view text);

  const MaskPattern& pattern() const { return pattern_; }

  /// Throws std::invalid_argument if the position is missing.
  int observed_digit(int position) const;

  /// The full PIN formed by placing the candidate at the missing positions.
  Pin complete(const Candidate& candidate) const;
  Pin complete(std::uint32_t candidate_code) const;

  /// Dense key identifying the context within its pattern (the PIN index with
  /// missing positions zeroed).
  int context_key() const { return context_.index(); }

  /// "?234"
  std::string str() const;

 private:
  MaskPattern pattern_;
  Pin context_;  // missing positions are zero
};

/// The candidate that the given PIN places at the pattern's missing positions.
Candidate candidate_of(const Pin& pin, const MaskPattern& pattern);

}  // namespace pinlab
