#include <catch2/catch_amalgamated.hpp>

#include "centra/normal_form.hpp"

using namespace centra;

namespace {

QMatrix diag(std::vector<Rational> d) {
  const int n = static_cast<int>(d.size());
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = d[i];
  return m;
}

bool equivariant_under(const QMatrix& a, const VectorField& f) {
  return lie_bracket(VectorField::linear(a), f).is_zero();
}

// B and A of the three-dimensional pair with the lone joint resonance x1 x3 e2
const QMatrix B3 = diag({-1, -1, 0});
const QMatrix A3 = diag({-1, 2, 3});

}  // namespace

TEST_CASE("joint resonant space of the three-dimensional pair") {
  const auto deg2 = resonant_space(B3, 2, A3);
  REQUIRE(deg2.size() == 1);
  CHECK(deg2[0] == VectorField::monomial_field(3, Monomial({1, 0, 1}), 1));
  for (int k = 3; k <= 6; ++k) CHECK(resonant_space(B3, k, A3).empty());
}

TEST_CASE("resonant spaces without a symmetry") {
  const auto deg2 = resonant_space(diag({1, 2}), 2);
  REQUIRE(deg2.size() == 1);
  CHECK(deg2[0] == VectorField::monomial_field(2, Monomial({2, 0}), 1));

  const auto deg3 = resonant_space(diag({1, -1}), 3);
  REQUIRE(deg3.size() == 2);
  CHECK(deg3[0] == VectorField::monomial_field(2, Monomial({2, 1}), 0));
  CHECK(deg3[1] == VectorField::monomial_field(2, Monomial({1, 2}), 1));
}

TEST_CASE("resonant_space rejects non-diagonal input") {
  CHECK_THROWS_AS(resonant_space(QMatrix(2, 2, {0, 1, 0, 0}), 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(resonant_space(diag({1, 2}), 2, QMatrix(2, 2, {1, 1, 0, 1})),
                  std::invalid_argument);
}

TEST_CASE("split_field separates the linear part") {
  VectorField q = VectorField::linear(B3);
  q.component(1) += Poly::monomial(3, Monomial({1, 0, 1}), 7);
  const auto f = split_field(q, 6);
  CHECK(f.linear == B3);
  REQUIRE(f.nonlinear.size() == 1);
  CHECK(f.nonlinear.at(2) ==
        VectorField::monomial_field(3, Monomial({1, 0, 1}), 1, 7));
  CHECK(f.field() == q);

  VectorField off(2);
  off.component(0) = Poly::constant(2, 1);
  CHECK_THROWS_AS(split_field(off, 4), std::invalid_argument);
}

TEST_CASE("push_forward by zero is the identity") {
  VectorField q = VectorField::linear(diag({1, 2}));
  q.component(0) += Poly::monomial(2, Monomial({0, 2}), 1);
  const auto f = split_field(q, 5);
  CHECK(push_forward(f, VectorField(2), 5) == f);
}

TEST_CASE("first-order term of a push_forward is the bracket with Bx") {
  const auto f = split_field(VectorField::linear(diag({1, 2})), 6);
  const auto u = VectorField::monomial_field(2, Monomial({0, 2}), 0);
  const auto moved = push_forward(f, u, 6);
  CHECK(moved.part(2) == lie_bracket(u, VectorField::linear(f.linear)));
  CHECK(moved.part(2) == VectorField::monomial_field(2, Monomial({0, 2}), 0, -3));
}

TEST_CASE("conjugating by u then -u is the identity up to degree 2k-2") {
  VectorField q = VectorField::linear(diag({1, 2}));
  q.component(0) += Poly::monomial(2, Monomial({0, 2}), 1);
  q.component(1) += Poly::monomial(2, Monomial({3, 0}), Rational(1, 2));
  const auto f = split_field(q, 4);

  VectorField u = VectorField::monomial_field(2, Monomial({0, 3}), 0);
  u += VectorField::monomial_field(2, Monomial({3, 0}), 1, 2);
  const auto round_trip = push_forward(push_forward(f, u, 4), -u, 4);
  CHECK(round_trip == f);

  // with more room the agreement still covers degrees <= 2k-2 = 4
  const auto wide = push_forward(push_forward(f, u, 6), -u, 6);
  for (int k = 2; k <= 4; ++k) CHECK(wide.part(k) == f.part(k));
}

TEST_CASE("push_forward validates its generator") {
  const auto f = split_field(VectorField::linear(diag({1, 2})), 4);
  CHECK_THROWS_AS(push_forward(f, VectorField::identity_field(2), 4),
                  std::invalid_argument);
  VectorField mixed = VectorField::monomial_field(2, Monomial({2, 0}), 0);
  mixed += VectorField::monomial_field(2, Monomial({3, 0}), 1);
  CHECK_THROWS_AS(push_forward(f, mixed, 4), std::invalid_argument);
}

TEST_CASE("a field already in normal form passes through unchanged") {
  VectorField q = VectorField::linear(B3);
  q.component(1) += Poly::monomial(3, Monomial({1, 0, 1}), 7);
  const auto f = split_field(q, 6);
  const auto res = normal_form(f, 6, A3);
  CHECK(res.nf == f);
  for (int k = 2; k <= 6; ++k) {
    CHECK(res.generators.at(k).is_zero());
    CHECK(res.steps[k - 2].removed.is_zero());
  }
  CHECK(res.steps[0].resonant_basis.size() == 1);
}

TEST_CASE("three-dimensional pair reduces to its lone resonant term") {
  // a nonresonant padding term that respects the symmetry: x1 x2^2 e3
  VectorField q = VectorField::linear(B3);
  q.component(1) += Poly::monomial(3, Monomial({1, 0, 1}), Rational(5, 3));
  q.component(2) += Poly::monomial(3, Monomial({1, 2, 0}), 1);
  const auto f = split_field(q, 6);
  const auto res = normal_form(f, 6, A3);

  VectorField nf_expected = VectorField::linear(B3);
  nf_expected.component(1) += Poly::monomial(3, Monomial({1, 0, 1}), Rational(5, 3));
  CHECK(res.nf.field() == nf_expected);
  REQUIRE(res.nf.nonlinear.size() == 1);
  CHECK(res.nf.nonlinear.count(2) == 1);

  // removal eigenvalue of x1 x2^2 e3 is -3
  CHECK(res.generators.at(3) ==
        VectorField::monomial_field(3, Monomial({1, 2, 0}), 2, Rational(-1, 3)));

  // every generator respects the symmetry
  for (const auto& step : res.steps)
    CHECK(equivariant_under(A3, step.generator));

  // replaying the recorded generators on the input reproduces nf exactly
  FormalField replay = f;
  for (const auto& step : res.steps)
    replay = push_forward(replay, step.generator, 6);
  CHECK(replay == res.nf);
}

TEST_CASE("simple resonance with a trivial joint kernel linearizes") {
  const QMatrix b = diag({1, 1});
  const QMatrix a = diag({1, -1});
  VectorField q = VectorField::linear(b);
  q.component(0) += Poly::monomial(2, Monomial({2, 1}), 1);
  q.component(1) += Poly::monomial(2, Monomial({1, 2}), 1);
  REQUIRE(equivariant_under(a, q));

  const auto res = normal_form(split_field(q, 6), 6, a);
  CHECK(res.nf.nonlinear.empty());
  CHECK(res.nf.field() == VectorField::linear(b));
  // eigenvalue of both degree-3 monomials is 3 - 1 = 2
  VectorField u3 = VectorField::monomial_field(2, Monomial({2, 1}), 0, Rational(1, 2));
  u3 += VectorField::monomial_field(2, Monomial({1, 2}), 1, Rational(1, 2));
  CHECK(res.generators.at(3) == u3);
}

TEST_CASE("multi-step normalization with frozen generators") {
  VectorField q = VectorField::linear(diag({1, 2}));
  q.component(0) += Poly::monomial(2, Monomial({0, 2}), 1);
  q.component(1) += Poly::monomial(2, Monomial({2, 0}), 1);
  const auto res = normal_form(split_field(q, 3), 3);

  VectorField nf_expected = VectorField::linear(diag({1, 2}));
  nf_expected.component(1) += Poly::monomial(2, Monomial({2, 0}), 1);
  CHECK(res.nf.field() == nf_expected);

  CHECK(res.generators.at(2) ==
        VectorField::monomial_field(2, Monomial({0, 2}), 0, Rational(1, 3)));
  // the degree-2 change pushes -2/3 x1^2 x2 e1 + 2/3 x1 x2^2 e2 into degree 3
  VectorField removed3 = VectorField::monomial_field(2, Monomial({2, 1}), 0, Rational(-2, 3));
  removed3 += VectorField::monomial_field(2, Monomial({1, 2}), 1, Rational(2, 3));
  CHECK(res.steps[1].removed == removed3);
  VectorField u3 = VectorField::monomial_field(2, Monomial({2, 1}), 0, Rational(-2, 9));
  u3 += VectorField::monomial_field(2, Monomial({1, 2}), 1, Rational(2, 9));
  CHECK(res.generators.at(3) == u3);

  CHECK(res.steps[0].removed ==
        VectorField::monomial_field(2, Monomial({0, 2}), 0, 1));
}

TEST_CASE("normal_form validation") {
  const auto f = split_field(VectorField::linear(QMatrix(2, 2, {0, 1, 0, 0})), 4);
  CHECK_THROWS_AS(normal_form(f, 4), std::invalid_argument);

  // symmetry given but the field does not respect it
  VectorField q = VectorField::linear(diag({1, 1}));
  q.component(0) += Poly::monomial(2, Monomial({2, 0}), 1);
  CHECK_THROWS_AS(normal_form(split_field(q, 4), 4, diag({1, -1})),
                  std::invalid_argument);

  FormalField bad;
  bad.linear = diag({1, 2});
  bad.truncation = 4;
  bad.nonlinear[2] = VectorField::monomial_field(2, Monomial({3, 0}), 0);
  CHECK_THROWS_AS(normal_form(bad, 4), std::invalid_argument);
}
