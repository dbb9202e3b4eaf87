#include "l2h/group_ring.hpp"

#include <algorithm>
#include <cctype>

#include "l2h/errors.hpp"

namespace l2h {

GroupRingElement GroupRingElement::scalar(const Rational& q) { return monomial(Word{}, q); }

GroupRingElement GroupRingElement::monomial(Word w, const Rational& q) {
  GroupRingElement x;
  x.add_term(w, q);
  return x;
}

void GroupRingElement::add_term(const Word& w, const Rational& q) {
  if (sgn(q) == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, q);
  if (!inserted) {
    it->second += q;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Rational GroupRingElement::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::vector<std::pair<Word, Rational>> GroupRingElement::sorted_terms() const {
  std::vector<std::pair<Word, Rational>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return shortlex_less(a.first, b.first); });
  return out;
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& y) {
  for (const auto& [w, q] : y.terms_) add_term(w, q);
  return *this;
}

GroupRingElement& GroupRingElement::operator-=(const GroupRingElement& y) {
  for (const auto& [w, q] : y.terms_) add_term(w, -q);
  return *this;
}

GroupRingElement operator+(GroupRingElement x, const GroupRingElement& y) { return x += y; }
GroupRingElement operator-(GroupRingElement x, const GroupRingElement& y) { return x -= y; }
GroupRingElement operator-(const GroupRingElement& x) { return scale(Rational(-1), x); }

GroupRingElement add(const GroupRingElement& x, const GroupRingElement& y) { return x + y; }

GroupRingElement scale(const Rational& q, const GroupRingElement& x) {
  GroupRingElement out;
  if (sgn(q) == 0) return out;
  for (const auto& [w, c] : x.terms()) out.add_term(w, q * c);
  return out;
}

GroupRingElement mul(const Group& g, const GroupRingElement& x, const GroupRingElement& y,
                     const RingLimits& limits) {
  const std::size_t work = x.support_size() * y.support_size();
  if (x.support_size() != 0 && work / x.support_size() != y.support_size()) throw Error(ErrorCode::support_cap_exceeded, "product work overflow");
  if (work > limits.work_cap)
    throw Error(ErrorCode::support_cap_exceeded,
                "convolution of supports " + std::to_string(x.support_size()) + " x " +
                    std::to_string(y.support_size()) + " exceeds the work cap");
  GroupRingElement::Terms acc;
  acc.reserve(std::min(work, limits.support_cap) + 1);
  Rational prod;
  for (const auto& [u, a] : x.terms()) {
    for (const auto& [v, b] : y.terms()) {
      Word w = g.multiply(u, v);
      mpq_mul(prod.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
      auto [it, inserted] = acc.try_emplace(std::move(w), prod);
      if (!inserted) it->second += prod;
      if (inserted && acc.size() > limits.support_cap)
        throw Error(ErrorCode::support_cap_exceeded,
                    "product support exceeds " + std::to_string(limits.support_cap) + " terms");
    }
  }
  GroupRingElement out;
  for (auto& [w, q] : acc)
    if (sgn(q) != 0) out.add_term(w, q);
  return out;
}

GroupRingElement power(const Group& g, const GroupRingElement& x, unsigned n, const RingLimits& limits) {
  GroupRingElement result = GroupRingElement::scalar(Rational(1));
  for (unsigned i = 0; i < n; ++i) result = mul(g, result, x, limits);
  return result;
}

GroupRingElement star(const Group& g, const GroupRingElement& x) {
  GroupRingElement out;
  for (const auto& [w, q] : x.terms()) out.add_term(g.invert(w), q);
  return out;
}

Rational augmentation(const GroupRingElement& x) {
  Rational s(0);
  for (const auto& [w, q] : x.terms()) s += q;
  return s;
}

Rational coefficient_at(const GroupRingElement& x, const Word& w) { return x.coefficient(w); }

Rational l1_norm(const GroupRingElement& x) {
  Rational s(0);
  for (const auto& [w, q] : x.terms()) s += abs(q);
  return s;
}

Rational l2_norm_squared(const GroupRingElement& x) {
  Rational s(0);
  for (const auto& [w, q] : x.terms()) s += q * q;
  return s;
}

bool is_self_adjoint(const Group& g, const GroupRingElement& x) { return star(g, x) == x; }

Integer common_denominator(const GroupRingElement& x) {
  Integer d(1);
  for (const auto& [w, q] : x.terms()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), q.get_den_mpz_t());
  return d;
}

GroupRingElement parse_element(const Group& g, const std::string& text) {
  std::vector<std::pair<int, std::string>> pieces;
  int sign = 1;
  std::string cur;
  bool seen_content = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    bool exponent_sign = c == '-' && !cur.empty() && cur.back() == '^';
    if ((c == '+' || c == '-') && !exponent_sign) {
      if (seen_content) pieces.emplace_back(sign, cur);
      sign = c == '-' ? -1 : 1;
      cur.clear();
      seen_content = false;
      continue;
    }
    if (!std::isspace(static_cast<unsigned char>(c))) seen_content = true;
    cur += c;
  }
  if (seen_content) pieces.emplace_back(sign, cur);

  GroupRingElement out;
  for (auto& [s, piece] : pieces) {
    std::size_t i = 0;
    while (i < piece.size() && std::isspace(static_cast<unsigned char>(piece[i]))) ++i;
    std::size_t start = i;
    while (i < piece.size() && (std::isdigit(static_cast<unsigned char>(piece[i])) || piece[i] == '/')) ++i;
    Rational coeff(1);
    if (i > start) {
      coeff = Rational(piece.substr(start, i - start));
      coeff.canonicalize();
    }
    std::string rest = piece.substr(i);
    auto first = rest.find_first_not_of(" \t*");
    rest = first == std::string::npos ? "" : rest.substr(first);
    while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.back()))) rest.pop_back();
    Word w = rest.empty() ? Word{} : g.parse_word(rest);
    out.add_term(w, s < 0 ? Rational(-coeff) : coeff);
  }
  return out;
}

std::string format_element(const Group& g, const GroupRingElement& x) {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, q] : x.sorted_terms()) {
    Rational mag = abs(q);
    if (first) {
      if (sgn(q) < 0) out += "-";
    } else {
      out += sgn(q) < 0 ? " - " : " + ";
    }
    first = false;
    if (w.is_identity()) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + " ";
      out += g.format(w);
    }
  }
  return out;
}

// ---------------------------------------------------------------- matrices

GroupRingMatrix GroupRingMatrix::identity(std::size_t n) {
  GroupRingMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = GroupRingElement::scalar(Rational(1));
  return m;
}

bool GroupRingMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.is_zero(); });
}

std::size_t GroupRingMatrix::total_support() const {
  std::size_t s = 0;
  for (const auto& e : entries_) s += e.support_size();
  return s;
}

GroupRingMatrix mat_mul(const Group& g, const GroupRingMatrix& a, const GroupRingMatrix& b,
                        const RingLimits& limits) {
  if (a.cols() != b.rows())
    throw Error(ErrorCode::dimension_mismatch, "mat_mul: inner extents " + std::to_string(a.cols()) +
                                                   " and " + std::to_string(b.rows()) + " differ");
  GroupRingMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t l = 0; l < a.cols(); ++l) {
        if (a.at(i, l).is_zero() || b.at(l, j).is_zero()) continue;
        out.at(i, j) += mul(g, a.at(i, l), b.at(l, j), limits);
      }
  return out;
}

GroupRingMatrix compose(const Group& g, const GroupRingMatrix& outer, const GroupRingMatrix& inner,
                        const RingLimits& limits) {
  if (outer.cols() != inner.rows())
    throw Error(ErrorCode::dimension_mismatch, "compose: extents " + std::to_string(outer.cols()) +
                                                   " and " + std::to_string(inner.rows()) + " differ");
  // The work cap bounds the whole product, not each entry.
  double work = 0;
  for (std::size_t i = 0; i < outer.rows(); ++i)
    for (std::size_t l = 0; l < outer.cols(); ++l) {
      const double a = static_cast<double>(outer.at(i, l).support_size());
      if (a == 0) continue;
      for (std::size_t j = 0; j < inner.cols(); ++j) work += a * static_cast<double>(inner.at(l, j).support_size());
    }
  if (work > static_cast<double>(limits.work_cap))
    throw Error(ErrorCode::support_cap_exceeded,
                "matrix product work exceeds " + std::to_string(limits.work_cap) + " term products");
  GroupRingMatrix out(outer.rows(), inner.cols());
  for (std::size_t i = 0; i < outer.rows(); ++i)
    for (std::size_t j = 0; j < inner.cols(); ++j)
      for (std::size_t l = 0; l < outer.cols(); ++l) {
        if (outer.at(i, l).is_zero() || inner.at(l, j).is_zero()) continue;
        out.at(i, j) += mul(g, inner.at(l, j), outer.at(i, l), limits);
      }
  return out;
}

GroupRingMatrix compose_power(const Group& g, const GroupRingMatrix& a, unsigned n, const RingLimits& limits) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::dimension_mismatch, "power of a non-square matrix");
  GroupRingMatrix result = GroupRingMatrix::identity(a.rows());
  for (unsigned i = 0; i < n; ++i) result = compose(g, result, a, limits);
  return result;
}

GroupRingMatrix mat_star(const Group& g, const GroupRingMatrix& a) {
  GroupRingMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(j, i) = star(g, a.at(i, j));
  return out;
}

GroupRingMatrix mat_add(const GroupRingMatrix& a, const GroupRingMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::dimension_mismatch, "mat_add: extents differ");
  GroupRingMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) += b.at(i, j);
  return out;
}

GroupRingMatrix mat_scale(const Rational& q, const GroupRingMatrix& a) {
  GroupRingMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = scale(q, a.at(i, j));
  return out;
}

bool is_self_adjoint(const Group& g, const GroupRingMatrix& a) {
  return a.rows() == a.cols() && mat_star(g, a) == a;
}

}  // namespace l2h
