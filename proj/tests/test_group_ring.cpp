#include <doctest.h>

#include <random>

#include "l2h/errors.hpp"
#include "l2h/group.hpp"
#include "l2h/group_ring.hpp"
#include "l2h/presentation.hpp"

using namespace l2h;

namespace {

GroupRingElement random_element(const Group& g, std::mt19937_64& rng, int terms) {
  const char* letters[] = {"a", "a^-1", "b", "b^-1"};
  GroupRingElement x;
  for (int t = 0; t < terms; ++t) {
    std::string w;
    int len = static_cast<int>(rng() % 4);
    for (int i = 0; i < len; ++i) w += std::string(i ? " " : "") + letters[rng() % 4];
    Rational q(static_cast<long>(rng() % 7) - 3, static_cast<unsigned long>(rng() % 3 + 1));
    q.canonicalize();
    x.add_term(w.empty() ? Word{} : g.parse_word(w), q);
  }
  return x;
}

ErrorCode parse_error(const char* text) {
  try {
    parse_presentation(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::ok;
}

}  // namespace

TEST_CASE("presentation round trip") {
  Presentation p = parse_presentation(
      "# comment\ngroup \"T\" { generators a, b; relators [a,b], a^2 (a b)^-1; }");
  CHECK(p.generators.size() == 2);
  CHECK(p.relators.size() == 2);
  CHECK(p.relators[0].size() == 4);
  CHECK(parse_presentation(format_presentation(p)) == p);
}

TEST_CASE("presentation errors") {
  CHECK(parse_error("group \"T\" { generators a, a; relators ; }") == ErrorCode::duplicate_generator);
  CHECK(parse_error("group \"T\" { generators a; relators c; }") == ErrorCode::unknown_generator);
  CHECK(parse_error("group \"T\" { generators a; relators a^; }") == ErrorCode::syntax);
}

TEST_CASE("group inference") {
  CHECK(infer_group(parse_presentation("group \"F\" { generators a, b; relators ; }"))->kind() == GroupKind::free);
  CHECK(infer_group(parse_presentation("group \"T\" { generators a, b; relators [a,b]; }"))->kind() ==
        GroupKind::direct_product);
  CHECK(free_ball_size(2, 2) == 17);
  CHECK(free_sphere_size(2, 3) == 36);
}

TEST_CASE("group ring identities on random elements of F2") {
  GroupPtr g = infer_group(parse_presentation("group \"F\" { generators a, b; relators ; }"));
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    auto x = random_element(*g, rng, 4), y = random_element(*g, rng, 3), z = random_element(*g, rng, 3);
    CHECK(mul(*g, mul(*g, x, y), z) == mul(*g, x, mul(*g, y, z)));
    CHECK(star(*g, mul(*g, x, y)) == mul(*g, star(*g, y), star(*g, x)));
    CHECK(augmentation(mul(*g, x, y)) == augmentation(x) * augmentation(y));
    CHECK(mul(*g, x, y + z) == mul(*g, x, y) + mul(*g, x, z));
    CHECK(coefficient_at(mul(*g, x, star(*g, x)), Word{}) == l2_norm_squared(x));
    CHECK(parse_element(*g, format_element(*g, x)) == x);
  }
}

TEST_CASE("support guard") {
  GroupPtr g = infer_group(parse_presentation("group \"F\" { generators a, b; relators ; }"));
  GroupRingElement x = parse_element(*g, "a + a^-1 + b + b^-1");
  RingLimits tight{10, 1000};
  CHECK_THROWS_AS(power(*g, x, 4, tight), Error);
  CHECK(power(*g, x, 2).support_size() == 1 + free_sphere_size(2, 2));
}
