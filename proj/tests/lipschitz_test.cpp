#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>

#include "cvn/lipschitz.hpp"
#include "support.hpp"

using namespace cvn;
using cvn::testing::random_automorphism;
using cvn::testing::random_point;

namespace {

CVPoint rose(const Rational& a, const Rational& b) { return {identity_rose(2), {a, b}}; }

}  // namespace

TEST_CASE("candidates of the rose") {
  const auto words = candidates_of(identity_rose(2));
  REQUIRE(words.size() == 4);
  std::vector<std::string> names;
  for (const CyclicWord& c : words) names.push_back(to_string(c));
  CHECK(std::find(names.begin(), names.end(), "a") != names.end());
  CHECK(std::find(names.begin(), names.end(), "b") != names.end());
  CHECK(std::find(names.begin(), names.end(), "a b") != names.end());
  for (const Candidate& c : candidate_loops(identity_rose(2))) {
    CHECK(c.word == c.word.unoriented());
    CHECK(c.crossings == crossings(make_rose(2), c.loop));
  }
}

TEST_CASE("stretch between two roses") {
  const CVPoint x = rose(Rational(1, 2), Rational(1, 2));
  const CVPoint y = rose(Rational(3, 5), Rational(2, 5));
  CHECK(stretch(x, y).value == Rational(6, 5));
  CHECK(to_string(stretch(x, y).witness) == "a");
  CHECK(stretch(y, x).value == Rational(5, 4));
  CHECK(stretch(x, x).value == 1);
}

TEST_CASE("stretch from the rose centre to its golden image") {
  const AutoPair golden({Word::generator(2), parse_word("ab", 2)}, {parse_word("bA", 2), Word::generator(1)});
  const CVPoint x = centre(identity_rose(2));
  const StretchResult r = stretch(x, act(x, golden));
  CHECK(r.value == 2);
  CHECK(to_string(r.witness) == "b");
}

TEST_CASE("stretch agrees with the loop search") {
  std::mt19937_64 rng(40);
  for (int i = 0; i < 25; ++i) {
    const CVPoint x = random_point(2, rng), y = random_point(2, rng);
    CHECK(stretch(x, y).value == stretch_bruteforce(x, y, 8));
  }
}

TEST_CASE("multiplicative triangle inequality and invariance") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 40; ++i) {
    const int rank = 2 + i % 2;
    const CVPoint x = random_point(rank, rng), y = random_point(rank, rng), z = random_point(rank, rng);
    const Rational xy = stretch(x, y).value, yz = stretch(y, z).value, xz = stretch(x, z).value;
    CHECK(xz <= xy * yz);
    CHECK(xy >= 1);
    const AutoPair phi = random_automorphism(rank, rng);
    CHECK(stretch(act(x, phi), act(y, phi)).value == xy);
  }
}

TEST_CASE("errors") {
  const CVPoint x = rose(Rational(1, 2), Rational(1, 2));
  const CVPoint z = rose(0, 1);
  CHECK_THROWS_AS(stretch(z, x), std::domain_error);
  CHECK_THROWS_AS(stretch(x, centre(identity_rose(3))), std::invalid_argument);
}

TEST_CASE("ball membership") {
  const CVPoint x = rose(Rational(1, 2), Rational(1, 2));
  const CVPoint y = rose(Rational(3, 5), Rational(2, 5));
  CHECK(ball_membership(y, x, Rational(5, 4), Ball::in));
  CHECK_FALSE(ball_membership(y, x, Rational(6, 5), Ball::in));
  CHECK(ball_membership(y, x, Rational(6, 5), Ball::out));
  CHECK(ball_membership(y, x, Rational(3, 2), Ball::symmetric));
  CHECK_FALSE(ball_membership(y, x, Rational(149, 100), Ball::symmetric));
}
