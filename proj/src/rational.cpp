#include "l2h/rational.hpp"

#include <cmath>

#include "l2h/errors.hpp"

namespace l2h {

namespace {

Integer scaled_floor(const Rational& x, unsigned shift) {
  Integer num = x.get_num();
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), shift);
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

Integer scaled_ceil(const Rational& x, unsigned shift) {
  Integer num = x.get_num();
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), shift);
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

// Exact m-th root when numerator and denominator are both perfect powers.
bool exact_root(const Rational& x, unsigned m, Rational* out) {
  Integer n, d;
  if (!mpz_root(n.get_mpz_t(), x.get_num_mpz_t(), m)) return false;
  if (!mpz_root(d.get_mpz_t(), x.get_den_mpz_t(), m)) return false;
  *out = Rational(n, d);
  out->canonicalize();
  return true;
}

Rational from_scaled(const Integer& k, unsigned bits) {
  Rational r(k);
  mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), bits);
  r.canonicalize();
  return r;
}

}  // namespace

Rational root_up(const Rational& x, unsigned m, unsigned bits) {
  if (m == 0) throw Error(ErrorCode::invalid_argument, "root_up: zero exponent");
  if (sgn(x) < 0) throw Error(ErrorCode::invalid_argument, "root_up: negative radicand");
  if (sgn(x) == 0) return Rational(0);
  if (Rational r; exact_root(x, m, &r)) return r;
  // k^m >= x 2^(bits m)  <=>  k^m >= ceil(x 2^(bits m)).
  Integer target = scaled_ceil(x, bits * m);
  Integer k;
  int exact = mpz_root(k.get_mpz_t(), target.get_mpz_t(), m);
  if (!exact) k += 1;
  return from_scaled(k, bits);
}

Rational root_down(const Rational& x, unsigned m, unsigned bits) {
  if (m == 0) throw Error(ErrorCode::invalid_argument, "root_down: zero exponent");
  if (sgn(x) < 0) throw Error(ErrorCode::invalid_argument, "root_down: negative radicand");
  if (sgn(x) == 0) return Rational(0);
  if (Rational r; exact_root(x, m, &r)) return r;
  Integer target = scaled_floor(x, bits * m);
  Integer k;
  mpz_root(k.get_mpz_t(), target.get_mpz_t(), m);
  return from_scaled(k, bits);
}

Rational round_up(const Rational& x, unsigned bits) { return from_scaled(scaled_ceil(x, bits), bits); }

Rational round_down(const Rational& x, unsigned bits) {
  return from_scaled(scaled_floor(x, bits), bits);
}

Rational rational_above(double x, unsigned bits) {
  Rational exact(x);  // doubles are exact dyadic rationals
  return round_up(exact, bits);
}

Rational rational_below(double x, unsigned bits) { return round_down(Rational(x), bits); }

double log_rational(const Rational& x) {
  if (sgn(x) <= 0) throw Error(ErrorCode::invalid_argument, "log of non-positive rational");
  long en = 0;
  long ed = 0;
  double mn = mpz_get_d_2exp(&en, x.get_num_mpz_t());
  double md = mpz_get_d_2exp(&ed, x.get_den_mpz_t());
  return std::log(mn) - std::log(md) + static_cast<double>(en - ed) * std::log(2.0);
}

Rational pow(const Rational& x, unsigned e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), e);
  return r;
}

std::string to_string(const Rational& x) { return x.get_str(); }

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ok: return "Ok";
    case ErrorCode::syntax: return "SyntaxError";
    case ErrorCode::unknown_generator: return "UnknownGenerator";
    case ErrorCode::duplicate_generator: return "DuplicateGenerator";
    case ErrorCode::non_confluent_rewriting: return "NonConfluentRewriting";
    case ErrorCode::relator_not_trivial: return "RelatorNotTrivialInGroup";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::support_cap_exceeded: return "SupportCapExceeded";
    case ErrorCode::ball_too_large: return "BallTooLarge";
    case ErrorCode::degree_out_of_range: return "DegreeOutOfRange";
    case ErrorCode::not_a_cycle: return "NotACycle";
    case ErrorCode::profile_not_applicable: return "ProfileNotApplicable";
    case ErrorCode::relator_violation: return "RelatorViolation";
    case ErrorCode::unsupported_group_for_resolution: return "UnsupportedGroupForResolution";
    case ErrorCode::hypothesis_not_satisfied: return "HypothesisNotSatisfied";
    case ErrorCode::no_candidate_subset: return "NoCandidateSubset";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::unsupported_group: return "UnsupportedGroup";
    case ErrorCode::io: return "IoError";
    case ErrorCode::internal: return "InternalError";
  }
  return "Unknown";
}

}  // namespace l2h
