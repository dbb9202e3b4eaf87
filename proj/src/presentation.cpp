#include "l2h/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "l2h/errors.hpp"

namespace l2h {

std::vector<Letter> inverse_letters(std::span<const Letter> letters) {
  std::vector<Letter> out(letters.rbegin(), letters.rend());
  for (Letter& l : out) l = -l;
  return out;
}

bool shortlex_less(const Word& u, const Word& v) {
  if (u.size() != v.size()) return u.size() < v.size();
  for (std::size_t i = 0; i < u.size(); ++i) {
    int a = letter_key(u.letters[i]);
    int b = letter_key(v.letters[i]);
    if (a != b) return a < b;
  }
  return false;
}

std::string format_letters(std::span<const Letter> letters, const std::vector<std::string>& names) {
  if (letters.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) out += ' ';
    out += names.at(generator_of(letters[i]));
    if (is_inverse(letters[i])) out += "^-1";
  }
  return out;
}

namespace {

enum class Tok { ident, integer, string, lbrace, rbrace, lbracket, rbracket, lparen, rparen, comma, semicolon, caret, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  long long value = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.column = col_;
    if (pos_ >= src_.size()) return t;
    char c = src_[pos_];
    auto single = [&](Tok k) {
      advance();
      t.kind = k;
      t.text = std::string(1, c);
      return t;
    };
    switch (c) {
      case '{': return single(Tok::lbrace);
      case '}': return single(Tok::rbrace);
      case '[': return single(Tok::lbracket);
      case ']': return single(Tok::rbracket);
      case '(': return single(Tok::lparen);
      case ')': return single(Tok::rparen);
      case ',': return single(Tok::comma);
      case ';': return single(Tok::semicolon);
      case '^': return single(Tok::caret);
      default: break;
    }
    if (c == '"') {
      advance();
      while (pos_ < src_.size() && src_[pos_] != '"') {
        if (src_[pos_] == '\n') throw SyntaxError(t.line, t.column, "unterminated string");
        t.text += src_[pos_];
        advance();
      }
      if (pos_ >= src_.size()) throw SyntaxError(t.line, t.column, "unterminated string");
      advance();
      t.kind = Tok::string;
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        t.text += src_[pos_];
        advance();
      }
      t.kind = Tok::ident;
      return t;
    }
    if (c == '-' || c == '+' || std::isdigit(static_cast<unsigned char>(c))) {
      t.text += c;
      advance();
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        t.text += src_[pos_];
        advance();
      }
      std::string_view digits = t.text;
      if (digits.front() == '+') digits.remove_prefix(1);
      auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), t.value);
      if (ec != std::errc() || p != digits.data() + digits.size())
        throw SyntaxError(t.line, t.column, "malformed integer '" + t.text + "'");
      t.kind = Tok::integer;
      return t;
    }
    throw SyntaxError(t.line, t.column, std::string("unexpected character '") + c + "'");
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

const char* tok_name(Tok k) {
  switch (k) {
    case Tok::ident: return "identifier";
    case Tok::integer: return "integer";
    case Tok::string: return "string";
    case Tok::lbrace: return "'{'";
    case Tok::rbrace: return "'}'";
    case Tok::lbracket: return "'['";
    case Tok::rbracket: return "']'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::comma: return "','";
    case Tok::semicolon: return "';'";
    case Tok::caret: return "'^'";
    case Tok::end: return "end of input";
  }
  return "?";
}

std::vector<Letter> power(const std::vector<Letter>& w, long long n) {
  std::vector<Letter> base = n < 0 ? inverse_letters(w) : w;
  std::vector<Letter> out;
  for (long long i = 0; i < (n < 0 ? -n : n); ++i) out.insert(out.end(), base.begin(), base.end());
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) { cur_ = lex_.next(); }

  Presentation parse() {
    Presentation p;
    expect_keyword("group");
    if (cur_.kind != Tok::string) fail("expected group name string");
    p.name = cur_.text;
    bump();
    expect(Tok::lbrace);
    expect_keyword("generators");
    for (;;) {
      if (cur_.kind != Tok::ident) fail("expected generator name");
      if (p.find_generator(cur_.text))
        throw Error(ErrorCode::duplicate_generator, at() + "duplicate generator '" + cur_.text + "'");
      p.generators.push_back({cur_.text, p.generators.size()});
      bump();
      if (cur_.kind == Tok::comma) {
        bump();
        continue;
      }
      break;
    }
    expect(Tok::semicolon);
    pres_ = &p;
    expect_keyword("relators");
    if (cur_.kind != Tok::semicolon) {
      for (;;) {
        p.relators.push_back(wordexpr());
        if (cur_.kind == Tok::comma) {
          bump();
          continue;
        }
        break;
      }
    }
    expect(Tok::semicolon);
    expect(Tok::rbrace);
    if (cur_.kind != Tok::end) fail("trailing input after group definition");
    return p;
  }

  std::vector<Letter> standalone_word(const std::vector<std::string>& names) {
    names_ = &names;
    if (cur_.kind == Tok::ident && cur_.text == "e") {
      bool named_e = std::find(names.begin(), names.end(), "e") != names.end();
      if (!named_e) {
        bump();
        if (cur_.kind != Tok::end) fail("trailing input after identity");
        return {};
      }
    }
    auto w = wordexpr();
    if (cur_.kind != Tok::end) fail("trailing input after word");
    return w;
  }

 private:
  std::vector<Letter> wordexpr() {
    std::vector<Letter> out;
    bool any = false;
    while (cur_.kind == Tok::ident || cur_.kind == Tok::lbracket || cur_.kind == Tok::lparen) {
      auto t = term();
      out.insert(out.end(), t.begin(), t.end());
      any = true;
    }
    if (!any) fail(std::string("expected word, found ") + tok_name(cur_.kind));
    return out;
  }

  std::vector<Letter> term() {
    std::vector<Letter> base;
    if (cur_.kind == Tok::ident) {
      base.push_back(make_letter(lookup(cur_.text)));
      bump();
    } else if (cur_.kind == Tok::lbracket) {
      bump();
      auto x = wordexpr();
      expect(Tok::comma);
      auto y = wordexpr();
      expect(Tok::rbracket);
      base = x;
      base.insert(base.end(), y.begin(), y.end());
      auto xi = inverse_letters(x);
      auto yi = inverse_letters(y);
      base.insert(base.end(), xi.begin(), xi.end());
      base.insert(base.end(), yi.begin(), yi.end());
    } else {
      expect(Tok::lparen);
      base = wordexpr();
      expect(Tok::rparen);
    }
    if (cur_.kind == Tok::caret) {
      bump();
      if (cur_.kind != Tok::integer) fail("expected integer exponent");
      long long n = cur_.value;
      if (n > 1000000 || n < -1000000) fail("exponent out of range");
      bump();
      return power(base, n);
    }
    return base;
  }

  std::size_t lookup(const std::string& name) {
    if (pres_) {
      if (auto i = pres_->find_generator(name)) return *i;
    } else if (names_) {
      auto it = std::find(names_->begin(), names_->end(), name);
      if (it != names_->end()) return static_cast<std::size_t>(it - names_->begin());
    }
    throw Error(ErrorCode::unknown_generator, at() + "unknown generator '" + name + "'");
  }

  std::string at() const {
    return "line " + std::to_string(cur_.line) + ", column " + std::to_string(cur_.column) + ": ";
  }
  [[noreturn]] void fail(const std::string& msg) { throw SyntaxError(cur_.line, cur_.column, msg); }
  void bump() { cur_ = lex_.next(); }
  void expect(Tok k) {
    if (cur_.kind != k) fail(std::string("expected ") + tok_name(k) + ", found " + tok_name(cur_.kind));
    bump();
  }
  void expect_keyword(const char* kw) {
    if (cur_.kind != Tok::ident || cur_.text != kw) fail(std::string("expected '") + kw + "'");
    bump();
  }

  Lexer lex_;
  Token cur_;
  const Presentation* pres_ = nullptr;
  const std::vector<std::string>* names_ = nullptr;
};

}  // namespace

std::vector<Letter> parse_letters(const std::string& text, const std::vector<std::string>& names) {
  Parser parser(text);
  return parser.standalone_word(names);
}

std::optional<std::size_t> Presentation::find_generator(std::string_view n) const {
  for (const auto& g : generators)
    if (g.name == n) return g.index;
  return std::nullopt;
}

std::vector<std::string> Presentation::generator_names() const {
  std::vector<std::string> out;
  for (const auto& g : generators) out.push_back(g.name);
  return out;
}

std::size_t Presentation::max_relator_length() const {
  std::size_t m = 0;
  for (const auto& r : relators) m = std::max(m, r.size());
  return m;
}

Presentation parse_presentation(std::string_view text) { return Parser(text).parse(); }

std::string format_presentation(const Presentation& p) {
  std::ostringstream os;
  auto names = p.generator_names();
  os << "group \"" << p.name << "\" {\n  generators ";
  for (std::size_t i = 0; i < names.size(); ++i) os << (i ? ", " : "") << names[i];
  os << ";\n  relators";
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    os << (i ? ",\n    " : " ");
    // The empty relator has no spelling in the grammar; write x x^-1.
    if (p.relators[i].empty())
      os << names.at(0) << " " << names.at(0) << "^-1";
    else
      os << format_letters(p.relators[i], names);
  }
  os << ";\n}\n";
  return os.str();
}

bool operator==(const GeneratorSymbol& a, const GeneratorSymbol& b) {
  return a.name == b.name && a.index == b.index;
}

bool operator==(const Presentation& a, const Presentation& b) {
  return a.name == b.name && a.generators == b.generators && a.relators == b.relators;
}

}  // namespace l2h
