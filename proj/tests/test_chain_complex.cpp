#include <doctest.h>

#include "l2h/chain_complex.hpp"
#include "l2h/errors.hpp"

using namespace l2h;

namespace {

ChainComplex complex_of(const std::string& text) {
  Presentation p = parse_presentation(text);
  return presentation_complex(p, infer_group(p));
}

}  // namespace

TEST_CASE("fox derivatives of a commutator") {
  Presentation p = parse_presentation("group \"T\" { generators a, b; relators [a,b]; }");
  auto g = infer_group(p);
  auto da = fox_derivative(*g, p.relators[0], 0);
  auto db = fox_derivative(*g, p.relators[0], 1);
  // d/da (a b a^-1 b^-1) = 1 - a b a^-1, which is 1 - b in Z^2.
  CHECK(da == parse_element(*g, "1 - b"));
  CHECK(db == parse_element(*g, "a - 1"));
}

TEST_CASE("fundamental formula sum_x (dr/dx)(x - 1) = r - 1 in the free group") {
  Presentation p = parse_presentation("group \"W\" { generators a, b, c; relators a b^-2 c a^3 b, c^-1 a c b^-1; }");
  FreeGroup f(p.generator_names());
  for (const auto& r : p.relators) {
    GroupRingElement sum;
    for (std::size_t x = 0; x < 3; ++x) {
      GroupRingElement xm1 = GroupRingElement::monomial(f.generator(x), Rational(1)) - GroupRingElement::scalar(1);
      sum += mul(f, fox_derivative(f, r, x), xm1);
    }
    GroupRingElement expected = GroupRingElement::monomial(f.normalize(r), Rational(1)) - GroupRingElement::scalar(1);
    CHECK(sum == expected);
  }
}

TEST_CASE("presentation complexes satisfy b1 b2 = 0") {
  for (const char* text : {"group \"T\" { generators a, b; relators [a,b]; }",
                           "group \"P\" { generators a; relators a^2; }",
                           "group \"K\" { generators a1, b1, a2, b2; relators [a1,a2], [a1,b2], [b1,a2], [b1,b2]; }"}) {
    auto c = complex_of(text);
    CHECK(compose(*c.group, c.boundary(1), c.boundary(2)).is_zero());
  }
}

TEST_CASE("relator not trivial in the supplied group") {
  Presentation p = parse_presentation("group \"T\" { generators a, b; relators [a,b]; }");
  CHECK_THROWS_AS(presentation_complex(p, std::make_shared<FreeGroup>(p.generator_names())), Error);
}

TEST_CASE("circle Laplacian in degree 0") {
  auto c = complex_of("group \"Z\" { generators t; relators ; }");
  auto lap = laplacian(c, 0);
  CHECK(lap.self_adjoint);
  CHECK(lap.matrix.at(0, 0) == parse_element(*c.group, "2 - t - t^-1"));
  auto lap1 = laplacian(c, 1);
  CHECK(lap1.matrix.at(0, 0) == parse_element(*c.group, "2 - t - t^-1"));
}

TEST_CASE("torus Laplacian in degree 1 is diagonal") {
  auto c = complex_of("group \"T\" { generators a, b; relators [a,b]; }");
  auto lap = laplacian(c, 1);
  auto expect = parse_element(*c.group, "4 - a - a^-1 - b - b^-1");
  CHECK(lap.matrix.at(0, 0) == expect);
  CHECK(lap.matrix.at(1, 1) == expect);
  CHECK(lap.matrix.at(0, 1).is_zero());
}

TEST_CASE("integral homology") {
  auto torus = integral_homology(complex_of("group \"T\" { generators a, b; relators [a,b]; }"));
  CHECK(torus[0].to_string() == "Z");
  CHECK(torus[1].to_string() == "Z^2");
  CHECK(torus[2].to_string() == "Z");
  auto rp2 = integral_homology(complex_of("group \"P\" { generators a; relators a^2; }"));
  CHECK(rp2[1].to_string() == "Z/2");
  CHECK(rp2[2].to_string() == "0");
}

TEST_CASE("wedging spheres and attaching cells") {
  auto c = complex_of("group \"F\" { generators a, b; relators ; }");
  auto w = wedge_spheres(c, 2);
  CHECK(w.ranks == std::vector<std::size_t>{1, 2, 2});
  CHECK(c.ranks == std::vector<std::size_t>{1, 2, 0});
  CHECK(w.euler_characteristic() == 1);
  std::vector<GroupRingElement> bad = {GroupRingElement::scalar(1), GroupRingElement{}};
  CHECK_THROWS_AS(attach_cells(c, 2, {bad}), Error);
  auto t = complex_of("group \"T\" { generators a, b; relators [a,b]; }");
  // The torus 2-cell has nonzero boundary, so it cannot bound a 3-cell.
  std::vector<GroupRingElement> z = {GroupRingElement::scalar(1)};
  CHECK_THROWS_AS(attach_cells(t, 3, {z}), Error);
}
