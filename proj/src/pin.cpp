#include "pinlab/pin.hpp"

#include <stdexcept>

namespace pinlab {

namespace {

constexpr std::array<std::uint32_t, 4> kPow10 = {1, 10, 100, 1000};

bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

Pin::Pin(const std::array<int, kPinLength>& digits) {
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] < 0 || digits[i] > 9) throw std::invalid_argument("pin digit out of range");
    digits_[i] = static_cast<std::uint8_t>(digits[i]);
  }
}

std::optional<Pin> Pin::parse(std::string_view text) {
  if (text.size() != kPinLength) return std::nullopt;
  std::array<int, kPinLength> digits{};
  for (std::size_t i = 0; i < kPinLength; ++i) {
    if (!is_ascii_digit(text[i])) return std::nullopt;
    digits[i] = text[i] - '0';
  }
  return Pin(digits);
}

Pin Pin::from_index(int index) {
  if (index < 0 || index >= kPinSpace) throw std::out_of_range("pin index out of range");
  return Pin({index / 1000, index / 100 % 10, index / 10 % 10, index % 10});
}

std::string Pin::str() const {
  std::string out(kPinLength, '0');
  for (std::size_t i = 0; i < kPinLength; ++i) out[i] = static_cast<char>('0' + digits_[i]);
  return out;
}

// --- MaskPattern ---

MaskPattern::MaskPattern(std::uint8_t bits) : bits_(bits) {
  std::size_t observed_count = 0;
  for (int p = 0; p < kPinLength; ++p) {
    if ((bits_ >> p) & 1U) {
      missing_[missing_count_++] = p;
    } else {
      observed_[observed_count++] = p;
    }
  }
}

MaskPattern MaskPattern::from_missing(std::span<const int> positions) {
  std::uint8_t bits = 0;
  for (int p : positions) {
    if (p < 0 || p >= kPinLength) throw std::invalid_argument("mask position out of range");
    const auto bit = static_cast<std::uint8_t>(1U << p);
    if (bits & bit) throw std::invalid_argument("duplicate mask position");
    bits |= bit;
  }
  if (bits == 0 || bits == 0xF) {
    throw std::invalid_argument("mask must leave 1 to 3 positions missing");
  }
  return MaskPattern(bits);
}

MaskPattern MaskPattern::parse(std::string_view scenario) {
  std::vector<int> positions;
  for (char c : scenario) {
    if (c < '1' || c > '4') {
      throw std::invalid_argument("bad scenario '" + std::string(scenario) +
                                  "': expected 1-based missing positions, e.g. 12");
    }
    positions.push_back(c - '1');
  }
  return from_missing(positions);
}

const std::vector<MaskPattern>& MaskPattern::all() {
  static const std::vector<MaskPattern> patterns = [] {
    std::vector<MaskPattern> out;
    for (const char* s : {"1", "2", "3", "4", "12", "13", "14", "23", "24", "34", "234", "134",
                          "124", "123"}) {
      out.push_back(parse(s));
    }
    return out;
  }();
  return patterns;
}

std::uint32_t MaskPattern::candidate_space() const { return kPow10[missing_count_]; }

std::string MaskPattern::label() const {
  std::string out;
  for (int p : missing()) out += "d" + std::to_string(p + 1);
  out += '|';
  for (int p : observed()) out += "d" + std::to_string(p + 1);
  return out;
}

std::string MaskPattern::scenario() const {
  std::string out;
  for (int p : missing()) out += static_cast<char>('1' + p);
  return out;
}

// --- Candidate ---

Candidate::Candidate(std::uint32_t code, int width) : code_(code), width_(width) {
  if (width < 1 || width > 3) throw std::invalid_argument("candidate width must be 1..3");
  if (code >= kPow10[static_cast<std::size_t>(width)]) {
    throw std::invalid_argument("candidate code out of range");
  }
}

Candidate Candidate::from_digits(std::span<const int> digits) {
  std::uint32_t code = 0;
  for (int d : digits) {
    if (d < 0 || d > 9) throw std::invalid_argument("candidate digit out of range");
    code = code * 10 + static_cast<std::uint32_t>(d);
  }
  return Candidate(code, static_cast<int>(digits.size()));
}

int Candidate::digit(int i) const {
  return static_cast<int>(code_ / kPow10[static_cast<std::size_t>(width_ - 1 - i)] % 10);
}

std::string Candidate::str() const {
  std::string out;
  for (int i = 0; i < width_; ++i) out += static_cast<char>('0' + digit(i));
  return out;
}

// --- Observation ---

namespace {

Pin zero_missing(const Pin& pin, const MaskPattern& pattern) {
  std::array<int, kPinLength> digits{};
  for (int p : pattern.observed()) digits[static_cast<std::size_t>(p)] = pin.digit(p);
  return Pin(digits);
}

}  // namespace

Observation::Observation(const Pin& pin, MaskPattern pattern)
    : pattern_(pattern), context_(zero_missing(pin, pattern)) {}

Observation Observation::parse(std::string_view text) {
  if (text.size() != kPinLength) {
    throw std::invalid_argument("observation must be 4 characters over 0-9 and '?'");
  }
  std::array<int, kPinLength> digits{};
  std::vector<int> missing;
  for (int p = 0; p < kPinLength; ++p) {
    const char c = text[static_cast<std::size_t>(p)];
    if (c == '?') {
      missing.push_back(p);
    } else if (is_ascii_digit(c)) {
      digits[static_cast<std::size_t>(p)] = c - '0';
    } else {
      throw std::invalid_argument("observation must be 4 characters over 0-9 and '?'");
    }
  }
  if (missing.empty() || missing.size() == kPinLength) {
    throw std::invalid_argument("observation needs 1 to 3 '?' positions");
  }
  return {Pin(digits), MaskPattern::from_missing(missing)};
}

int Observation::observed_digit(int position) const {
  if (position < 0 || position >= kPinLength || pattern_.is_missing(position)) {
    throw std::invalid_argument("position is not observed");
  }
  return context_.digit(position);
}

Pin Observation::complete(std::uint32_t candidate_code) const {
  std::array<int, kPinLength> digits{};
  for (int p : pattern_.observed()) digits[static_cast<std::size_t>(p)] = context_.digit(p);
  const auto missing = pattern_.missing();
  for (std::size_t i = missing.size(); i-- > 0;) {
    digits[static_cast<std::size_t>(missing[i])] = static_cast<int>(candidate_code % 10);
    candidate_code /= 10;
  }
  return Pin(digits);
}

Pin Observation::complete(const Candidate& candidate) const {
  if (static_cast<std::size_t>(candidate.width()) != pattern_.missing_count()) {
    throw std::invalid_argument("candidate width does not match the pattern");
  }
  return complete(candidate.code());
}

std::string Observation::str() const {
  std::string out = context_.str();
  for (int p : pattern_.missing()) out[static_cast<std::size_t>(p)] = '?';
  return out;
}

Candidate candidate_of(const Pin& pin, const MaskPattern& pattern) {
  std::uint32_t code = 0;
  for (int p : pattern.missing()) code = code * 10 + static_cast<std::uint32_t>(pin.digit(p));
  return Candidate(code, static_cast<int>(pattern.missing_count()));
}

}  // namespace pinlab
