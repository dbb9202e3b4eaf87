#include <doctest.h>

#include "l2h/errors.hpp"
#include "l2h/fw_constructor.hpp"

using namespace l2h;

namespace {

const char* kCube =
    "group \"F2^3\" { generators a1, b1, a2, b2, a3, b3; relators "
    "[a1,a2], [a1,b2], [b1,a2], [b1,b2], [a1,a3], [a1,b3], [b1,a3], [b1,b3], "
    "[a2,a3], [a2,b3], [b2,a3], [b2,b3]; }";

struct Fixture {
  Presentation p;
  GroupPtr g;
  ChainComplex c;
  explicit Fixture(const std::string& text)
      : p(parse_presentation(text)), g(infer_group(p)), c(presentation_complex(p, g)) {}
};

bool is_cycle(const ChainComplex& c, const std::vector<GroupRingElement>& column) {
  GroupRingMatrix z(column.size(), 1);
  for (std::size_t i = 0; i < column.size(); ++i) z.at(i, 0) = column[i];
  return compose(*c.group, c.boundary(c.top_degree()), z).is_zero();
}

}  // namespace

TEST_CASE("kernel of 1 + a in Z/2 is spanned by 1 - a") {
  Fixture f("group \"C2\" { generators a; relators a^2; }");
  auto cycles = find_kernel_cycles(f.c, 1);
  REQUIRE(cycles.size() == 1);
  // (1 - a)(1 + a) = 1 - a^2 = 0 by hand.
  GroupRingElement expected = GroupRingElement::scalar(1);
  expected.add_term(Word{{make_letter(0, false)}}, Rational(-1));
  CHECK(cycles[0].column.size() == 1);
  CHECK(cycles[0].column[0] == expected);
  CHECK(cycles[0].support == 2);
  CHECK(cycles[0].scalar != 0);
}

TEST_CASE("injective top boundary has no kernel cycles") {
  Fixture f("group \"G\" { generators a, b; relators b; }");
  CHECK(find_kernel_cycles(f.c, 1).empty());
  CHECK(find_kernel_cycles(f.c, 3).empty());
}

TEST_CASE("cube boundaries in the product of three free groups") {
  Fixture f(kCube);
  auto cycles = find_kernel_cycles(f.c, 1);
  // One cube per choice of a generator in each factor.
  CHECK(cycles.size() == 8);
  for (const auto& k : cycles) {
    CHECK(k.support == 6);
    CHECK(is_cycle(f.c, k.column));
  }
  CHECK(default_support_radius(f.c, 1500) == 2);
  auto wide = find_kernel_cycles(f.c, 2, 20);
  CHECK(wide.size() == 20);
  for (std::size_t i = 1; i < wide.size(); ++i) CHECK(wide[i - 1].support <= wide[i].support);
}

TEST_CASE("greedy selection keeps seven cubes") {
  Fixture f(kCube);
  auto cycles = find_kernel_cycles(f.c, 1);
  auto chain = nested_cyclic_chain(f.p, f.g, 1, 64);
  REQUIRE(chain.size() == 1);
  Selection s = select_basis_candidates(f.c, cycles, chain);
  CHECK(s.indices.size() == 7);
  REQUIRE(s.diagnostics.size() == 1);
  const auto& d = s.diagnostics[0];
  CHECK(d.order == 64);
  CHECK(d.domain == 7 * 64);
  // The attached cells leave H_2 of dimension 12 and H_3 of dimension 7.
  CHECK(d.cokernel == 12);
  CHECK(d.defect == 7);
  CHECK(d.kernel_dim == d.rank + 12);
}

TEST_CASE("hypothesis verdicts") {
  SUBCASE("free group fails in degree 1") {
    Fixture f("group \"F2\" { generators a, b; relators ; }");
    auto r = check_hypothesis(f.p, f.g);
    CHECK(r.verdict == HypothesisVerdict::violated);
    REQUIRE(r.violating_degree);
    CHECK(*r.violating_degree == 1);
    CHECK(r.degrees[0].verdict == "certified");
  }
  SUBCASE("integers fail in degree 0") {
    Fixture f("group \"Z\" { generators t; relators ; }");
    auto r = check_hypothesis(f.p, f.g);
    CHECK(r.verdict == HypothesisVerdict::violated);
    REQUIRE(r.violating_degree);
    CHECK(*r.violating_degree == 0);
  }
  SUBCASE("finite group fails in degree 0") {
    Fixture f("group \"C2\" { generators a; relators a^2; }");
    auto r = check_hypothesis(f.p, f.g);
    CHECK(r.verdict == HypothesisVerdict::violated);
  }
}

TEST_CASE("construction stops on a violated hypothesis unless forced") {
  Presentation p = parse_presentation("group \"F2\" { generators a, b; relators ; }");
  GroupPtr g = infer_group(p);
  ConstructionRecord r = construct(p, g);
  CHECK(r.status == "FailedHypothesis");
  CHECK(r.notes.size() == 1);
  ConstructionParams forced;
  forced.force = true;
  forced.min_order = 4;
  r = construct(p, g, forced);
  CHECK(r.status == "Constructed");
  CHECK(r.selection.indices.empty());
  CHECK(r.boundary_square_zero);
  CHECK(r.low_degrees_unchanged);
  CHECK_FALSE(r.betti_trend_ok);
}

TEST_CASE("integral homology check") {
  Fixture torus("group \"Z2\" { generators a, b; relators [a,b]; }");
  KervaireReport same = kervaire_integral_check(torus.c, torus.c);
  CHECK(same.agrees_below_two);
  ChainComplex wedged = wedge_spheres(torus.c, 1);
  KervaireReport k = kervaire_integral_check(torus.c, wedged);
  CHECK(k.agrees_below_two);
  CHECK(k.after[2].to_string() == "Z^2");
  CHECK(k.statements[2] == "H_2: Z -> Z^2");
}
