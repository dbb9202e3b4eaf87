#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "l2h/word.hpp"

namespace l2h {

struct GeneratorSymbol {
  std::string name;
  std::size_t index = 0;
};

/// A finite presentation. Relators are unreduced letter sequences over the
/// free group on the generators, with commutators and powers expanded.
struct Presentation {
  std::string name;
  std::vector<GeneratorSymbol> generators;
  std::vector<std::vector<Letter>> relators;

  std::optional<std::size_t> find_generator(std::string_view name) const;
  std::vector<std::string> generator_names() const;
  std::size_t max_relator_length() const;
};

/// Parses
///   group "<name>" { generators a, b; relators [a,b], a^2 (a b)^-1; }
/// `#` starts a comment that runs to the end of the line.
Presentation parse_presentation(std::string_view text);

/// Canonical text form; parse_presentation(format_presentation(p)) == p.
std::string format_presentation(const Presentation& p);

bool operator==(const GeneratorSymbol& a, const GeneratorSymbol& b);
bool operator==(const Presentation& a, const Presentation& b);

}  // namespace l2h
