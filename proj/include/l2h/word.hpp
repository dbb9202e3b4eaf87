#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace l2h {

/// A letter is +(i+1) for generator i and -(i+1) for its inverse.
using Letter = std::int32_t;

constexpr Letter make_letter(std::size_t generator, bool inverse = false) {
  Letter l = static_cast<Letter>(generator) + 1;
  return inverse ? -l : l;
}
constexpr std::size_t generator_of(Letter l) { return static_cast<std::size_t>((l < 0 ? -l : l) - 1); }
constexpr bool is_inverse(Letter l) { return l < 0; }

/// Letter order: a < a^-1 < b < b^-1 < ...
constexpr int letter_key(Letter l) { return 2 * static_cast<int>(generator_of(l)) + (l < 0 ? 1 : 0); }

std::vector<Letter> inverse_letters(std::span<const Letter> letters);

/// A group element in the normal form of its group. Construction does not
/// normalize; use Group::normalize.
struct Word {
  std::vector<Letter> letters;

  Word() = default;
  explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}

  std::size_t size() const noexcept { return letters.size(); }
  bool is_identity() const noexcept { return letters.empty(); }

  friend bool operator==(const Word&, const Word&) = default;
};

/// Shortlex order with the letter order above.
bool shortlex_less(const Word& u, const Word& v);

struct ShortlexLess {
  bool operator()(const Word& u, const Word& v) const { return shortlex_less(u, v); }
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (Letter l : w.letters) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(l));
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

/// "e" for the identity, otherwise letters like `a b^-1` separated by spaces.
std::string format_letters(std::span<const Letter> letters, const std::vector<std::string>& names);

/// Inverse of format_letters. Throws SyntaxError / UnknownGenerator.
std::vector<Letter> parse_letters(const std::string& text, const std::vector<std::string>& names);

}  // namespace l2h
