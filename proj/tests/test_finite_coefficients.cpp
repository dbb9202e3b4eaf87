#include <doctest.h>

#include "l2h/errors.hpp"
#include "l2h/finite_coefficients.hpp"

using namespace l2h;

namespace {

struct Fixture {
  Presentation p;
  GroupPtr g;
  ChainComplex c;
  explicit Fixture(const std::string& text)
      : p(parse_presentation(text)), g(infer_group(p)), c(presentation_complex(p, g)) {}
};

Permutation cycle_perm(std::uint32_t m) {
  Permutation p(m);
  for (std::uint32_t i = 0; i < m; ++i) p[i] = (i + 1) % m;
  return p;
}

// Rank of P - I for an m-cycle P, computed by hand: the circulant kernel is
// spanned by the all-ones vector.
std::size_t circulant_rank(std::size_t m) { return m - 1; }

}  // namespace

TEST_CASE("trivial quotient recovers the rational Betti numbers") {
  Fixture circle("group \"Z\" { generators t; relators ; }");
  auto q = make_quotient(circle.p, circle.g, {Permutation{0}}, "trivial");
  CHECK(q.order == 1);
  auto b = betti_numbers(induce(circle.c, q));
  CHECK(b.values == std::vector<std::size_t>{1, 1, 0});
  CHECK(b.rank_method == "exact");
}

TEST_CASE("circle through an m-cycle") {
  Fixture circle("group \"Z\" { generators t; relators ; }");
  for (std::uint32_t m : {2u, 3u, 5u, 8u}) {
    auto q = make_quotient(circle.p, circle.g, {cycle_perm(m)}, "cycle");
    auto fc = induce(circle.c, permutation_module(q));
    CHECK(rank(fc.boundaries[0]).rank == circulant_rank(m));
    auto e = luck_estimate(circle.c, q, 1);
    CHECK(e.value == Rational(1, m));
  }
}

TEST_CASE("wedge of two circles: Lück estimates (1/N, (N+1)/N)") {
  Fixture f2("group \"F2\" { generators a, b; relators ; }");
  for (const auto& q : nested_cyclic_chain(f2.p, f2.g, 4, 2)) {
    auto est = luck_estimates(f2.c, q);
    const long n = static_cast<long>(q.order);
    CHECK(est[0].value == Rational(1, n));
    CHECK(est[1].value == Rational(n + 1, n));
  }
  for (const auto& q : quotient_library(f2.p, f2.g, {4, 7, 1, 4096})) {
    CHECK(q.transitive);
    auto est = luck_estimates(f2.c, q);
    const long n = static_cast<long>(q.order);
    CHECK(est[1].value == Rational(n + 1, n));
  }
}

TEST_CASE("projective plane with the regular Z/2 module") {
  Fixture rp2("group \"P\" { generators a; relators a^2; }");
  auto lib = quotient_library(rp2.p, rp2.g);
  REQUIRE(lib.size() == 1);
  CHECK(lib[0].order == 2);
  // The induced complex is the cellular chain complex of the 2-sphere.
  auto b = betti_numbers(induce(rp2.c, lib[0]));
  CHECK(b.values == std::vector<std::size_t>{1, 0, 1});
}

TEST_CASE("Euler characteristic scales with the quotient order") {
  Fixture t("group \"T\" { generators a, b; relators [a,b], [a,b]; }");
  for (const auto& q : quotient_library(t.p, t.g, {3, 1, 1, 4096})) {
    auto b = betti_numbers(induce(t.c, q));
    long chi = 0;
    for (std::size_t k = 0; k < b.values.size(); ++k) chi += (k % 2 ? -1 : 1) * static_cast<long>(b.values[k]);
    CHECK(chi == static_cast<long>(q.order) * t.c.euler_characteristic());
  }
}

TEST_CASE("induced complexes square to zero") {
  Fixture k("group \"K\" { generators a1, b1, a2, b2; relators [a1,a2], [a1,b2], [b1,a2], [b1,b2]; }");
  for (const auto& q : quotient_library(k.p, k.g, {2, 3, 1, 4096})) {
    auto fc = induce(k.c, q);
    CHECK(fc.boundaries[0].multiply(fc.boundaries[1]).is_zero());
  }
}

TEST_CASE("product quotients have multiplicative order") {
  Fixture k("group \"K\" { generators a1, b1, a2, b2; relators [a1,a2], [a1,b2], [b1,a2], [b1,b2]; }");
  auto lib = quotient_library(k.p, k.g, {2, 3, 1, 4096});
  REQUIRE(!lib.empty());
  CHECK(lib[0].order == 4);
}

TEST_CASE("relator violations are rejected") {
  Fixture rp2("group \"P\" { generators a; relators a^2; }");
  CHECK_THROWS_AS(make_quotient(rp2.p, rp2.g, {cycle_perm(3)}, "bad"), Error);
}

TEST_CASE("Hopf sequence for <a | a^2> and V = Q[Z/2]") {
  Fixture rp2("group \"P\" { generators a; relators a^2; }");
  auto v = regular_module(quotient_library(rp2.p, rp2.g)[0]);
  auto rep = hopf_check(rp2.c, v);
  CHECK(rep.image_dim == 1);
  CHECK(rep.dim_h2_g == 0);
  CHECK(rep.dim_h2_z == 1);
  CHECK(rep.exact);
  CHECK(rep.passed);
}

TEST_CASE("Hopf sequence passes trivially when H_2(Z,V) vanishes") {
  Fixture z("group \"Z\" { generators a, b; relators b; }");
  DenseMatrix a = {{2, 1}, {1, 1}}, id = {{1, 0}, {0, 1}};
  auto rep = hopf_check(z.c, matrix_module(z.p, {a, id}, "b acts trivially"));
  CHECK(rep.dim_h2_z == 0);
  CHECK(rep.passed);
}

TEST_CASE("free presentations with a freely trivial relator: h_2 surjective") {
  Fixture f("group \"F\" { generators a, b; relators [a,b] [b,a]; }");
  CHECK(f.g->kind() == GroupKind::free);
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    auto rep = hopf_check(f.c, random_matrix_module(f.p, 2 + seed % 3, seed));
    CHECK(rep.dim_h2_g == 0);
    CHECK(rep.dim_h2_z == rep.image_dim);
    CHECK(rep.surjective);
    CHECK(rep.passed);
  }
}

TEST_CASE("unsupported group with nonzero H_2") {
  Fixture t("group \"T\" { generators a, b; relators [a,b]; }");
  auto q = make_quotient(t.p, t.g, {Permutation{0}, Permutation{0}}, "trivial");
  CHECK_THROWS_AS(hopf_check(t.c, regular_module(q)), Error);
}
