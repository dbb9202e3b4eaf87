#pragma once

// Exact arithmetic in the rational group ring Q[G] and matrices over it.

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "l2h/group.hpp"
#include "l2h/rational.hpp"

namespace l2h {

/// Guards against convolution blow-up. `support_cap` bounds the support of a
/// product, `work_cap` the number of term pairs a single product may visit.
struct RingLimits {
  std::size_t support_cap = 5'000'000;
  std::size_t work_cap = 400'000'000;
};

class GroupRingElement {
 public:
  using Terms = std::unordered_map<Word, Rational, WordHash>;

  GroupRingElement() = default;
  static GroupRingElement scalar(const Rational& q);
  static GroupRingElement monomial(Word w, const Rational& q = Rational(1));

  /// Adds q to the coefficient of w (w must be a normal form).
  void add_term(const Word& w, const Rational& q);
  Rational coefficient(const Word& w) const;
  std::size_t support_size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  const Terms& terms() const noexcept { return terms_; }
  /// Terms in shortlex order of their words.
  std::vector<std::pair<Word, Rational>> sorted_terms() const;

  GroupRingElement& operator+=(const GroupRingElement& y);
  GroupRingElement& operator-=(const GroupRingElement& y);

  friend bool operator==(const GroupRingElement& x, const GroupRingElement& y) { return x.terms_ == y.terms_; }

 private:
  Terms terms_;
};

GroupRingElement operator+(GroupRingElement x, const GroupRingElement& y);
GroupRingElement operator-(GroupRingElement x, const GroupRingElement& y);
GroupRingElement operator-(const GroupRingElement& x);

GroupRingElement add(const GroupRingElement& x, const GroupRingElement& y);
GroupRingElement scale(const Rational& q, const GroupRingElement& x);
GroupRingElement mul(const Group& g, const GroupRingElement& x, const GroupRingElement& y,
                     const RingLimits& limits = {});
GroupRingElement star(const Group& g, const GroupRingElement& x);
GroupRingElement power(const Group& g, const GroupRingElement& x, unsigned n, const RingLimits& limits = {});

Rational augmentation(const GroupRingElement& x);
Rational coefficient_at(const GroupRingElement& x, const Word& w);
Rational l1_norm(const GroupRingElement& x);
/// Sum of squared coefficients, i.e. the trace <delta_e, x* x delta_e>.
Rational l2_norm_squared(const GroupRingElement& x);
inline std::size_t support_size(const GroupRingElement& x) { return x.support_size(); }
bool is_self_adjoint(const Group& g, const GroupRingElement& x);
/// Lowest common denominator of the coefficients.
Integer common_denominator(const GroupRingElement& x);

/// Parses sums such as "2 - t - t^-1" or "1/2 a b^-1 + 3".
GroupRingElement parse_element(const Group& g, const std::string& text);
std::string format_element(const Group& g, const GroupRingElement& x);

class GroupRingMatrix {
 public:
  GroupRingMatrix() = default;
  GroupRingMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  static GroupRingMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  GroupRingElement& at(std::size_t i, std::size_t j) { return entries_.at(i * cols_ + j); }
  const GroupRingElement& at(std::size_t i, std::size_t j) const { return entries_.at(i * cols_ + j); }
  bool is_zero() const;
  std::size_t total_support() const;

  friend bool operator==(const GroupRingMatrix&, const GroupRingMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GroupRingElement> entries_;
};

/// Ordinary ring-matrix product (AB)_ij = sum_l A_il B_lj.
GroupRingMatrix mat_mul(const Group& g, const GroupRingMatrix& a, const GroupRingMatrix& b,
                        const RingLimits& limits = {});
/// Transpose with entrywise star.
GroupRingMatrix mat_star(const Group& g, const GroupRingMatrix& a);
GroupRingMatrix mat_add(const GroupRingMatrix& a, const GroupRingMatrix& b);
GroupRingMatrix mat_scale(const Rational& q, const GroupRingMatrix& a);

/// Composition of boundary-type maps `outer o inner` for matrices whose
/// entries act on chains by multiplication from the right of the chain
/// coefficient: (outer o inner)_ij = sum_l inner_lj * outer_il. This is the
/// product in the opposite ring; Fox-calculus boundaries compose to zero
/// under it.
GroupRingMatrix compose(const Group& g, const GroupRingMatrix& outer, const GroupRingMatrix& inner,
                        const RingLimits& limits = {});
GroupRingMatrix compose_power(const Group& g, const GroupRingMatrix& a, unsigned n,
                              const RingLimits& limits = {});

bool is_self_adjoint(const Group& g, const GroupRingMatrix& a);

}  // namespace l2h
