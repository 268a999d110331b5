#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "centra/matrix.hpp"
#include "centra/rational.hpp"

using namespace centra;

namespace {

QMatrix mat2(Rational a, Rational b, Rational c, Rational d) {
  return QMatrix(2, 2, {a, b, c, d});
}

QMatrix random_matrix(std::mt19937& rng, int rows, int cols) {
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  QMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = Rational(num(rng), den(rng));
  return m;
}

}  // namespace

TEST_CASE("rational parsing accepts canonical forms") {
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("-3") == Rational(-3));
  CHECK(parse_rational("+3") == Rational(3));
  CHECK(parse_rational("3/2") == Rational(3, 2));
  CHECK(parse_rational("-4/6") == Rational(-2, 3));
  CHECK(rational_str(parse_rational("-4/6")) == "-2/3");
  CHECK(rational_str(Rational(5)) == "5");
}

TEST_CASE("rational parsing rejects malformed input") {
  CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("a/2"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/2/3"), ParseError);
  CHECK_THROWS_AS(parse_rational("1e3"), ParseError);
}

TEST_CASE("rational arithmetic is exact") {
  const Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a * b == Rational(1, 18));
  CHECK(rational_floor(Rational(7, 2)) == 3);
  CHECK(rational_floor(Rational(-7, 2)) == -4);
  CHECK(rational_floor(Rational(4)) == 4);
  CHECK(rat_pow(Rational(2, 3), 3) == Rational(8, 27));
  CHECK(rat_pow(Rational(5), 0) == 1);
}

TEST_CASE("rref identity and zero cases") {
  const auto id = rref(QMatrix::identity(2));
  CHECK(id.rank == 2);
  CHECK(id.pivots == std::vector<int>{0, 1});
  CHECK(id.reduced == QMatrix::identity(2));

  const auto zero = rref(QMatrix(2, 2));
  CHECK(zero.rank == 0);
  CHECK(zero.pivots.empty());
}

TEST_CASE("rref of a rank-deficient matrix") {
  const auto r = rref(mat2(1, 2, 2, 4));
  CHECK(r.rank == 1);
  CHECK(r.reduced == mat2(1, 2, 0, 0));
}

TEST_CASE("kernel basis matches hand elimination") {
  CHECK(kernel_basis(QMatrix::identity(3)).empty());

  const auto k = kernel_basis(mat2(1, 2, 2, 4));
  REQUIRE(k.size() == 1);
  // proportional to (-2, 1), normalized to leading entry 1
  CHECK(k[0] == std::vector<Rational>{1, Rational(-1, 2)});

  CHECK(kernel_basis(QMatrix(2, 3)).size() == 3);
}

TEST_CASE("solve returns an exact witness or absence") {
  const auto easy = solve(QMatrix::identity(2), {3, 5});
  REQUIRE(easy.has_value());
  CHECK(*easy == std::vector<Rational>{3, 5});

  CHECK_FALSE(solve(mat2(1, 2, 2, 4), {1, 3}).has_value());

  const auto under = solve(mat2(1, 2, 2, 4), {1, 2});
  REQUIRE(under.has_value());
  CHECK((*under)[0] + 2 * (*under)[1] == 1);
}

TEST_CASE("matrix operations and the commutator") {
  const QMatrix a = mat2(0, 1, 0, 0);
  const QMatrix b = mat2(0, 0, 1, 0);
  CHECK(commutator(a, b) == mat2(1, 0, 0, -1));
  CHECK(commutator(a, a).is_zero());
  CHECK((a * b) == mat2(1, 0, 0, 0));
  CHECK((a + b) == mat2(0, 1, 1, 0));
  CHECK(mat2(1, 0, 0, 2).is_diagonal());
  CHECK(mat2(1, 3, 0, 2).is_upper_triangular());
  CHECK_FALSE(mat2(1, 0, 3, 2).is_upper_triangular());

  const std::vector<Rational> v{2, 3};
  CHECK((a * v) == std::vector<Rational>{3, 0});
}

TEST_CASE("kernel vectors annihilate and dimensions add up", "[property]") {
  std::mt19937 rng(20240517);
  for (int trial = 0; trial < 60; ++trial) {
    const int rows = 1 + trial % 4;
    const int cols = 1 + (trial / 4) % 5;
    const QMatrix m = random_matrix(rng, rows, cols);
    const auto r = rref(m);
    const auto kb = kernel_basis(m);
    CHECK(r.rank + static_cast<int>(kb.size()) == cols);
    for (const auto& v : kb) {
      const auto mv = m * v;
      for (const auto& x : mv) CHECK(x == 0);
    }
    // idempotence
    const auto again = rref(r.reduced);
    CHECK(again.reduced == r.reduced);
    CHECK(again.rank == r.rank);
  }
}

TEST_CASE("RowSpan tracks independence incrementally") {
  RowSpan span(3);
  CHECK(span.add({1, 2, 3}));
  CHECK(span.add({0, 1, 1}));
  CHECK_FALSE(span.add({1, 3, 4}));  // sum of the first two
  CHECK(span.dim() == 2);
  CHECK(span.contains({2, 5, 7}));
  CHECK_FALSE(span.contains({0, 0, 1}));
}
