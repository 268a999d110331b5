#include <catch2/catch_amalgamated.hpp>

#include "centra/lie_algebra.hpp"

using namespace centra;

namespace {

QMatrix diag2(Rational a, Rational b) { return QMatrix(2, 2, {a, 0, 0, b}); }
QMatrix diag3(Rational a, Rational b, Rational c) {
  return QMatrix(3, 3, {a, 0, 0, 0, b, 0, 0, 0, c});
}

const QMatrix sl2_e(2, 2, {0, 1, 0, 0});
const QMatrix sl2_f(2, 2, {0, 0, 1, 0});

}  // namespace

TEST_CASE("closure of a single matrix is abelian of dimension 1") {
  const auto m = bracket_closure({diag2(1, 2)});
  CHECK(m.dim() == 1);
  CHECK(m.is_abelian());
  CHECK(m.ambient_dimension() == 2);
}

TEST_CASE("closure adjoins h to the sl2 raising and lowering pair") {
  const auto m = bracket_closure({sl2_e, sl2_f});
  CHECK(m.dim() == 3);
  CHECK(m.structure_ok());
}

TEST_CASE("closure of the zero matrix is the zero algebra") {
  const auto m = bracket_closure({QMatrix(3, 3)});
  CHECK(m.dim() == 0);
  CHECK(m.ambient_dimension() == 3);
}

TEST_CASE("dependent generators are dropped first-seen") {
  const QMatrix a = diag2(1, 2);
  const auto m = bracket_closure({a, Rational(2) * a, diag2(0, 1)});
  CHECK(m.dim() == 2);
  CHECK(m.basis_element(0) == a);
  CHECK(m.basis_element(1) == diag2(0, 1));
}

TEST_CASE("closure cap carries the partial basis") {
  try {
    bracket_closure({sl2_e, sl2_f}, 2);
    FAIL("expected ClosureCapError");
  } catch (const ClosureCapError& e) {
    CHECK(e.partial_basis.size() == 2);
  }
}

TEST_CASE("closure is idempotent") {
  const auto m = bracket_closure({sl2_e, sl2_f});
  const auto again = bracket_closure(m.basis());
  CHECK(again.dim() == m.dim());
}

TEST_CASE("solvability via the derived series") {
  const auto abelian = bracket_closure({diag2(1, 2), diag2(0, 1)});
  CHECK(is_solvable(abelian));
  CHECK(derived_series_dims(abelian) == std::vector<int>{2, 0});

  // full 2x2 upper-triangular algebra
  const QMatrix e11(2, 2, {1, 0, 0, 0});
  const QMatrix e12(2, 2, {0, 1, 0, 0});
  const QMatrix e22(2, 2, {0, 0, 0, 1});
  const auto tri = bracket_closure({e11, e12, e22});
  CHECK(tri.dim() == 3);
  CHECK(is_solvable(tri));
  CHECK(derived_series_dims(tri) == std::vector<int>{3, 1, 0});

  const auto sl2 = bracket_closure({sl2_e, sl2_f});
  CHECK_FALSE(is_solvable(sl2));
}

TEST_CASE("perfectness") {
  CHECK(is_perfect(bracket_closure({QMatrix(2, 2)})));  // zero algebra
  CHECK_FALSE(is_perfect(bracket_closure({diag2(1, 2)})));
  CHECK(is_perfect(bracket_closure({sl2_e, sl2_f})));
}

TEST_CASE("perfect and solvable exclude each other on nonzero algebras") {
  for (const auto& m :
       {bracket_closure({sl2_e, sl2_f}), bracket_closure({diag2(1, 2)}),
        bracket_closure({diag3(-1, 2, 3), diag3(-1, -1, 0)})}) {
    REQUIRE(m.dim() > 0);
    CHECK_FALSE((is_perfect(m) && is_solvable(m)));
  }
}

TEST_CASE("diagonal profile reads off entries") {
  const auto m = bracket_closure({diag2(1, -1)});
  const auto p = diagonal_profile(m);
  REQUIRE(p.has_value());
  CHECK(p->strictly_diagonal);
  CHECK(p->forms == std::vector<std::vector<Rational>>{{1}, {-1}});
}

TEST_CASE("rotation generator has no diagonal profile") {
  const auto m = bracket_closure({QMatrix(2, 2, {0, -1, 1, 0})});
  CHECK_FALSE(diagonal_profile(m).has_value());
  CHECK_FALSE(triangular_profile(m).has_value());
}

TEST_CASE("profile of the diag(-1,2,3), diag(-1,-1,0) pair") {
  const auto m = bracket_closure({diag3(-1, 2, 3), diag3(-1, -1, 0)});
  REQUIRE(m.dim() == 2);
  const auto p = diagonal_profile(m);
  REQUIRE(p.has_value());
  CHECK(p->forms ==
        std::vector<std::vector<Rational>>{{-1, -1}, {2, -1}, {3, 0}});
}

TEST_CASE("triangular profile keeps the diagonal part only") {
  const QMatrix t(2, 2, {1, 5, 0, 2});
  const auto m = bracket_closure({t});
  CHECK_FALSE(diagonal_profile(m).has_value());
  const auto p = triangular_profile(m);
  REQUIRE(p.has_value());
  CHECK_FALSE(p->strictly_diagonal);
  CHECK(p->forms == std::vector<std::vector<Rational>>{{1}, {2}});
}

TEST_CASE("structure constants verified on constructed algebras") {
  const QMatrix h(2, 2, {1, 0, 0, -1});
  for (const auto& m :
       {bracket_closure({sl2_e, sl2_f, h}),
        bracket_closure({QMatrix(2, 2, {0, -1, 1, 0})}),
        bracket_closure({QMatrix(2, 2, {1, 1, 0, 1}), QMatrix(2, 2, {0, 1, 0, 0})})})
    CHECK(m.structure_ok());
}
