#include <catch_amalgamated.hpp>

#include <jetsegre/expr.hpp>
#include <jetsegre/param_scalar.hpp>
#include <jetsegre/rational.hpp>

#include "support.hpp"

using namespace jetsegre;
using testsupport::P;

TEST_CASE("rationals stay in lowest terms", "[scalars]") {
  const Rational q = make_rational(6, -4);
  CHECK(q.get_num() == -3);
  CHECK(q.get_den() == 2);
  CHECK(to_string(q) == "-3/2");
  CHECK(to_string(Rational(5)) == "5");
  CHECK(parse_rational("10/4") == Rational(5, 2));
  CHECK_THROWS_AS(parse_rational("1/"), DomainError);
  CHECK_THROWS_AS(make_rational(1, 0), DomainError);
}

TEST_CASE("ring arithmetic examples", "[scalars]") {
  const auto r = P(Param::r), d = P(Param::d), chi = P(Param::chi), x = P(Param::x);
  CHECK((r + d) * (r - d) == r.pow(2) - d.pow(2));
  CHECK((2 + x).pow(2) == 4 + 4 * x + x.pow(2));
  CHECK((chi * d.pow(3) - 12 * r * d.pow(2)) + 12 * r * d.pow(2) == chi * d.pow(3));
  CHECK((r - r).is_zero());
  CHECK((r - r).size() == 0);
}

TEST_CASE("arbitrary precision", "[scalars]") {
  const ParamScalar big = ParamScalar(Rational(ipow(10, 40))) * P(Param::d);
  CHECK(big.evaluate({{Param::d, Rational(ipow(10, 40))}}) == Rational(ipow(10, 80)));
  CHECK((ParamScalar(Rational(1, 3)) * 3) == ParamScalar(1));
}

TEST_CASE("canonical rendering is graded-lex in r, d, chi, x, y, z, eps", "[scalars]") {
  const auto s = eval_scalar("5 + x + chi*d^3 - 12*r*d^2 + r*d^3 + 11/3*x*r*d");
  CHECK(s.to_string() == "r*d^3 + d^3*chi - 12*r*d^2 + 11/3*r*d*x + x + 5");
  const auto j = s.to_json();
  REQUIRE(j.is_array());
  CHECK(j[0]["coeff"] == "1");
  CHECK(j[0]["exps"]["r"] == 1);
  CHECK(j[0]["exps"]["d"] == 3);
  CHECK(j[3]["coeff"] == "11/3");
  CHECK(j[2]["coeff"] == "-12");
  CHECK(ParamScalar().to_string() == "0");
}

TEST_CASE("substitute_eps", "[scalars]") {
  const auto r = P(Param::r), d = P(Param::d), x = P(Param::x), eps = P(Param::eps);
  const ParamScalar a = (20 * eps * x * d.pow(2)).substitute_eps(2);
  CHECK(a == ParamScalar(Rational(20, 3)) * x * r * d);
  CHECK(a.is_polynomial());
  const ParamScalar plain = r * d + x;
  CHECK(plain.substitute_eps(2) == plain);
  CHECK((eps.pow(2) * d.pow(2)).substitute_eps(2) == ParamScalar(Rational(1, 9)) * r.pow(2));

  const ParamScalar e = eps.substitute_eps(2);
  CHECK(e.denominator_d_power() == 1);
  CHECK(e.to_string() == "(1/3*r)/d");
  CHECK(e.evaluate({{Param::r, 9}, {Param::d, 3}}) == 1);
  CHECK_THROWS_AS(e.substitute_eps(2), DomainError);
  CHECK_THROWS_AS(eps.substitute_eps(0), DomainError);
}

TEST_CASE("dominant_term grades r and d only", "[scalars]") {
  const auto r = P(Param::r), d = P(Param::d), chi = P(Param::chi);
  const ParamScalar n2 = (d - 4).pow(3) * r + 3 * (d - 4).pow(2) * (r + chi) * d;
  CHECK(n2.dominant_term() == 4 * r * d.pow(3));
  const ParamScalar tie = chi * d.pow(3) - 12 * r * d.pow(2);
  CHECK(tie.dominant_term() == tie);
  CHECK(ParamScalar(5).dominant_term() == ParamScalar(5));
  CHECK(ParamScalar().dominant_term().is_zero());
  // With a d-denominator, grades drop by the denominator power.
  const ParamScalar q = ParamScalar::fraction(r * d.pow(2) + d, 1);
  CHECK(q.dominant_term() == r * d);
}

TEST_CASE("evaluation needs every parameter", "[scalars]") {
  const ParamScalar s = P(Param::r) + P(Param::chi);
  CHECK_THROWS_AS(s.evaluate({{Param::r, 1}}), DomainError);
  CHECK(s.evaluate({{Param::r, 1}, {Param::chi, 2}}) == 3);
}

TEST_CASE("asymptotic sign under r >> d >> 1", "[scalars]") {
  const auto r = P(Param::r), d = P(Param::d), chi = P(Param::chi);
  CHECK((r * d - 100 * d.pow(5)).asymptotic_sign() == Sign::positive);
  CHECK((-4 * chi * d.pow(2) - r).asymptotic_sign() == Sign::negative);
  CHECK((r * chi - r).asymptotic_sign() == Sign::indeterminate);
  CHECK(ParamScalar().asymptotic_sign() == Sign::zero);
}

TEST_CASE("ring axioms on random polynomials", "[scalars][property]") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = testsupport::random_scalar(rng), b = testsupport::random_scalar(rng), c = testsupport::random_scalar(rng);
    REQUIRE(a + b == b + a);
    REQUIRE(a * b == b * a);
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE(a - a == ParamScalar());
    REQUIRE(a.pow(3) == a * a * a);
  }
}

TEST_CASE("substitute_eps is a ring homomorphism", "[scalars][property]") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = testsupport::random_scalar(rng) + testsupport::random_scalar(rng) * P(Param::eps);
    const auto b = testsupport::random_scalar(rng) * P(Param::eps, 2) + testsupport::random_scalar(rng);
    for (int n : {1, 2, 3}) {
      REQUIRE((a * b).substitute_eps(n) == a.substitute_eps(n) * b.substitute_eps(n));
      REQUIRE((a + b).substitute_eps(n) == a.substitute_eps(n) + b.substitute_eps(n));
    }
  }
}

TEST_CASE("dominant_term is multiplicative without leading cancellation", "[scalars][property]") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = testsupport::random_scalar(rng, 4, true), b = testsupport::random_scalar(rng, 4, true);
    REQUIRE((a * b).dominant_term() == (a.dominant_term() * b.dominant_term()).dominant_term());
  }
}

TEST_CASE("coefficient extraction", "[scalars]") {
  const auto s = eval_scalar("(3 + y)*chi*d^3 - 12*r*d^2 + 7*chi*d");
  const ParamMonomial chi_d3 = ParamMonomial::of(Param::chi) * ParamMonomial::of(Param::d, 3);
  CHECK(s.coefficient(chi_d3, {Param::r, Param::d, Param::chi}) == 3 + P(Param::y));
  CHECK(s.degree(Param::d) == 3);
  CHECK(s.rd_degree() == 3);
}
