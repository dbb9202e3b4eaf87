#include <doctest.h>

#include <chrono>
#include <cmath>

#include "l2h/errors.hpp"
#include "l2h/spectral.hpp"

using namespace l2h;

namespace {

struct Fixture {
  Presentation p;
  GroupPtr g;
  ChainComplex c;
  explicit Fixture(const std::string& text)
      : p(parse_presentation(text)), g(infer_group(p)), c(presentation_complex(p, g)) {}
};

const char* kCircle = "group \"Z\" { generators t; relators ; }";
const char* kF2 = "group \"F2\" { generators a, b; relators ; }";
const char* kF2cubed =
    "group \"F2^3\" { generators a1, b1, a2, b2, a3, b3; relators "
    "[a1,a2], [a1,b2], [b1,a2], [b1,b2], [a1,a3], [a1,b3], [b1,a3], [b1,b3], "
    "[a2,a3], [a2,b3], [b2,a3], [b2,b3]; }";

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

double as_double(const Rational& q) { return q.get_d(); }

}  // namespace

TEST_CASE("central binomial traces of the circle Laplacian") {
  Fixture z(kCircle);
  auto delta = parse_element(*z.g, "2 - t - t^-1");
  GroupRingElement p = GroupRingElement::scalar(1);
  GroupRingElement d2 = mul(*z.g, delta, delta);
  for (unsigned n = 1; n <= 5; ++n) {
    p = mul(*z.g, p, d2);
    CHECK(coefficient_at(p, Word{}) == Rational(binomial(4 * n, 2 * n)));
  }
  CHECK(coefficient_at(power(*z.g, delta, 10), Word{}) == 184756);
}

TEST_CASE("power trace lower bounds") {
  Fixture z(kCircle), f(kF2);
  auto delta = parse_element(*z.g, "2 - t - t^-1");
  Rational l1 = power_trace_lower_bound(*z.g, delta, 1);
  CHECK(l1 * l1 <= 6);
  CHECK(as_double(l1) == doctest::Approx(std::sqrt(6.0)).epsilon(1e-9));
  auto a = parse_element(*f.g, "a + a^-1 + b + b^-1");
  CHECK(power_trace_lower_bound(*f.g, a, 1) == 2);
  Rational l2 = power_trace_lower_bound(*f.g, a, 2);
  CHECK(pow(l2, 4) <= 28);
  CHECK(as_double(l2) == doctest::Approx(std::pow(28.0, 0.25)).epsilon(1e-9));
  CHECK(power_trace_lower_bound(*f.g, a, 3) >= l2);
}

TEST_CASE("l1 upper bounds") {
  Fixture z(kCircle), f(kF2);
  CHECK(l1_upper_bound(*z.g, parse_element(*z.g, "2 - t - t^-1"), 1) == 4);
  auto a = parse_element(*f.g, "a + a^-1 + b + b^-1");
  for (unsigned n = 1; n <= 3; ++n) CHECK(l1_upper_bound(*f.g, a, n) == 4);
  CHECK(l1_upper_bound(*f.g, GroupRingElement{}, 2) == 0);
}

TEST_CASE("rd bounds") {
  Fixture f(kF2), k(kF2cubed);
  RDProfile free_profile = rd_profile_for(*f.g);
  CHECK(free_profile.kind == RDKind::free_group);
  CHECK(rd_upper_bound(*f.g, GroupRingElement::scalar(Rational(-7, 3)), 1, free_profile) == Rational(7, 3));
  auto a = parse_element(*f.g, "a + a^-1 + b + b^-1");
  Rational lower = power_trace_lower_bound(*f.g, a, 4);
  for (unsigned n = 1; n <= 4; ++n) CHECK(rd_upper_bound(*f.g, a, n, free_profile) >= lower);
  CHECK_THROWS_AS(rd_upper_bound(*k.g, GroupRingElement::scalar(1), 1, free_profile), Error);
  CHECK(rd_profile_for(*k.g).kind == RDKind::product_of_free);
  CHECK(rd_profile_for(*k.g).empirical);
}

TEST_CASE("radial fast path agrees with convolution") {
  Fixture f(kF2);
  CHECK(radial_power(2, 2)[0] == 4);
  CHECK(radial_power(2, 4)[0] == 28);
  auto a1 = radial_power(2, 1);
  CHECK(a1[0] == 0);
  CHECK(a1[1] == 1);
  auto a = parse_element(*f.g, "a + a^-1 + b + b^-1");
  GroupRingElement p = GroupRingElement::scalar(1);
  for (unsigned n = 1; n <= 12; ++n) {
    p = mul(*f.g, p, a);
    auto levels = radial_power(2, n);
    auto generic = radial_coefficients(*f.g, p);
    REQUIRE(generic.has_value());
    levels.resize(generic->size());
    CHECK(*generic == levels);
  }
}

TEST_CASE("radial multiplication matches convolution for a polynomial in A") {
  Fixture f(kF2);
  auto x = parse_element(*f.g, "3 - a - a^-1 - b - b^-1");
  auto x2 = mul(*f.g, x, x);
  auto levels = radial_coefficients(*f.g, x);
  REQUIRE(levels);
  auto product = radial_multiply(2, *levels, *levels);
  auto generic = radial_coefficients(*f.g, mul(*f.g, x2, x));
  auto cubed = radial_multiply(2, product, *levels);
  REQUIRE(generic);
  CHECK(cubed == *generic);
}

TEST_CASE("soundness sandwich on random self-adjoint elements") {
  Fixture f(kF2), k("group \"K\" { generators a1, b1, a2, b2; relators [a1,a2], [a1,b2], [b1,a2], [b1,b2]; }");
  const char* elements[] = {"1 + a b + b^-1 a^-1", "2 a + 2 a^-1 - b a b^-1 - b a^-1 b^-1", "a^2 + a^-2 + 3"};
  for (const char* text : elements) {
    auto x = parse_element(*f.g, text);
    REQUIRE(is_self_adjoint(*f.g, x));
    Rational lower = power_trace_lower_bound(*f.g, x, 3);
    for (unsigned n = 1; n <= 3; ++n) {
      CHECK(lower <= l1_upper_bound(*f.g, x, n));
      CHECK(lower <= rd_upper_bound(*f.g, x, n, rd_profile_for(*f.g)));
    }
  }
  auto y = parse_element(*k.g, "a1 a2 + a2^-1 a1^-1 + b1 + b1^-1");
  Rational lower = power_trace_lower_bound(*k.g, y, 2);
  for (unsigned n = 1; n <= 2; ++n) CHECK(lower <= rd_upper_bound(*k.g, y, n, rd_profile_for(*k.g)));
}

TEST_CASE("truncations") {
  Fixture z(kCircle), f(kF2);
  auto delta = laplacian(z.c, 0).matrix;
  SpectralBudget budget;
  auto t = truncation_extremes(*z.g, delta, 300, budget);
  const double pi = std::acos(-1.0);
  CHECK(std::abs(t.lambda_min - (2 - 2 * std::cos(pi / 602))) < 1e-4);
  CHECK(as_double(t.lambda_min_upper) >= 2 - 2 * std::cos(pi / 602) - 1e-12);
  CHECK(truncation_extremes(*z.g, delta, 0, budget).lambda_min_upper == 2);
  auto fdelta = laplacian(f.c, 0).matrix;
  double previous = 10;
  for (std::size_t r = 1; r <= 4; ++r) {
    auto tr = truncation_extremes(*f.g, fdelta, r, budget);
    CHECK(tr.lambda_min <= previous + 1e-12);
    CHECK(tr.lambda_min > 4 - 2 * std::sqrt(3.0));
    previous = tr.lambda_min;
  }
}

TEST_CASE("Lanczos and dense solvers agree") {
  Fixture f(kF2);
  auto delta = laplacian(f.c, 0).matrix;
  SpectralBudget dense, sparse;
  dense.dense_dim = 5000;
  sparse.dense_dim = 10;
  auto a = truncation_extremes(*f.g, delta, 5, dense);
  auto b = truncation_extremes(*f.g, delta, 5, sparse);
  CHECK(b.solver == "lanczos");
  CHECK(a.lambda_min == doctest::Approx(b.lambda_min).epsilon(1e-8));
  CHECK(a.lambda_max == doctest::Approx(b.lambda_max).epsilon(1e-8));
}

TEST_CASE("certificates") {
  Fixture z(kCircle), f(kF2);
  auto cz = certify_gap(*z.g, laplacian(z.c, 0).matrix, GapMethod::automatic);
  CHECK(cz.status == CertificateStatus::zero_evidence);
  auto cf = certify_gap(*f.g, laplacian(f.c, 0).matrix, GapMethod::automatic);
  REQUIRE(cf.status == CertificateStatus::certified_invertible);
  CHECK(*cf.gap_lower >= Rational(1, 5));
  CHECK(as_double(*cf.gap_lower) <= 4 - 2 * std::sqrt(3.0));
  CHECK(*cf.gap_lower <= cf.lambda_min_upper);
  auto point = point_complex(f.g);
  auto cp = certify_gap(*f.g, laplacian(point, 0).matrix, GapMethod::automatic);
  CHECK(cp.status == CertificateStatus::zero_evidence);
  auto c1 = certify_gap(*f.g, laplacian(f.c, 1).matrix, GapMethod::automatic, {}, 1);
  CHECK(c1.status == CertificateStatus::zero_evidence);
}

TEST_CASE("subadditive certificate for F2^3") {
  Fixture k(kF2cubed);
  auto cert = certify_gap(*k.g, laplacian(k.c, 0).matrix, GapMethod::subadditive);
  REQUIRE(cert.status == CertificateStatus::certified_invertible);
  CHECK(*cert.gap_lower >= Rational(1, 2));
  CHECK(as_double(*cert.gap_lower) <= 12 - 6 * std::sqrt(3.0));
}

TEST_CASE("finite model equivalence") {
  auto res = finite_model_equivalence_test(7, 200);
  CHECK(res.passed);
  CHECK(res.retained > 100);
  CHECK(res.rejected > 0);
}

