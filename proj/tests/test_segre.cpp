#include <catch_amalgamated.hpp>

#include <map>
#include <utility>

#include <jetsegre/expr.hpp>
#include <jetsegre/segre.hpp>
#include <jetsegre/tower.hpp>

#include "support.hpp"

using namespace jetsegre;
using testsupport::P;

TEST_CASE("binom", "[segre]") {
  CHECK(binom(5, 2) == 10);
  CHECK(binom(4, 3) == 4);
  CHECK(binom(7, 0) == 1);
  CHECK(binom(3, 5) == 0);
  CHECK(binom(3, -1) == 0);
  CHECK(binom(60, 30) == Integer("118264581564861424"));
}

TEST_CASE("l_number", "[segre]") {
  CHECK(l_number(2, 4) == 4);
  CHECK(l_number(3, 6) == -13);
  CHECK(l_number(0, 9) == 0);
  for (long e = 0; e < 15; ++e) CHECK(l_number(e, e) == 1);
  CHECK_THROWS_AS(l_number(3, 2), DomainError);
  CHECK_THROWS_AS(l_number(-1, 2), DomainError);
}

TEST_CASE("Pascal table agrees with the definition and the recurrence", "[segre][property]") {
  const LTable t(13);
  for (long f = 0; f <= 13; ++f)
    for (long e = 0; e <= f; ++e) REQUIRE(t(e, f) == l_number(e, f));
  for (long f = 1; f <= 12; ++f)
    for (long e = 0; e < f; ++e) REQUIRE(t(e, f) - t(e + 1, f) == t(e + 1, f + 1));
  CHECK(LTable(9).entry_count() == 55);
  CHECK_THROWS_AS(t(0, 14), DomainError);
}

TEST_CASE("LTable renderings", "[segre]") {
  const LTable t(2);
  CHECK(t.to_string() == "f\\e\t0\t1\t2\n0\t1\n1\t0\t1\n2\t1\t-1\t1\n");
  CHECK(t.to_json()["2"]["1"] == "-1");
}

namespace {

// Independent expansion of (1 + chi b)(1 + a)^{-(n+2)}(1 + d a + r b) on
// pairs (alpha exponent, beta exponent) with b^2 = 0 and a^{n+2} = 0.
using Series = std::map<std::pair<int, int>, ParamScalar>;

Series series_mul(const Series& u, const Series& v, int n) {
  Series out;
  for (const auto& [ku, cu] : u)
    for (const auto& [kv, cv] : v) {
      const int a = ku.first + kv.first, b = ku.second + kv.second;
      if (b > 1 || a > n + 1 || a + b > n + 1) continue;
      out[{a, b}] += cu * cv;
    }
  return out;
}

Series f0_oracle(int n) {
  Series base{{{0, 0}, ParamScalar(1)}, {{0, 1}, P(Param::chi)}};
  Series inverse;
  // (1 + a)^{-1} = 1 - a + a^2 - ..., raised to the (n+2)-th power by repeated multiplication.
  Series geometric;
  for (int p = 0; p <= n + 1; ++p) geometric[{p, 0}] = ParamScalar(p % 2 ? -1 : 1);
  inverse = {{{0, 0}, ParamScalar(1)}};
  for (int i = 0; i < n + 2; ++i) inverse = series_mul(inverse, geometric, n);
  Series defining{{{0, 0}, ParamScalar(1)}, {{1, 0}, P(Param::d)}, {{0, 1}, P(Param::r)}};
  return series_mul(series_mul(base, inverse, n), defining, n);
}

ChowClass component_of(const Series& s, int n, int degree) {
  ChowClass out(n, 0);
  for (const auto& [k, c] : s) {
    if (k.first + k.second != degree) continue;
    ChowMonomial m = ChowMonomial::of(Generator::alpha(), static_cast<unsigned>(k.first));
    m.set(Generator::beta(), static_cast<unsigned>(k.second));
    out.add_term(m, c);
  }
  return out;
}

}  // namespace

TEST_CASE("segre_F0 against a direct series expansion", "[segre]") {
  for (int n = 1; n <= 5; ++n) {
    const GradedList s = segre_F0(n);
    const Series oracle = f0_oracle(n);
    REQUIRE(static_cast<int>(s.size()) == n + 2);
    for (int i = 0; i <= n + 1; ++i) REQUIRE(s[static_cast<std::size_t>(i)] == component_of(oracle, n, i));
  }
}

TEST_CASE("segre_F0 closed forms", "[segre]") {
  for (int n = 1; n <= 5; ++n) {
    const TowerContext ctx(n, 0);
    const ChowClass expected = (P(Param::d) - (n + 2)) * ctx.alpha(0) + (P(Param::r) + P(Param::chi)) * ctx.beta(0);
    CHECK(ctx.s(1, 0) == expected);
    CHECK(ctx.s(0, 0) == ctx.one(0));
  }
  const TowerContext ctx(2, 0);
  CHECK(ctx.s(2, 0) == eval("(10 - 4*d)*a^2 + (chi*d - 4*r - 4*chi)*a*b", ctx));
  CHECK(ctx.s(3, 0) == eval("(10*d - 20)*a^3 + (-4*chi*d + 10*chi + 10*r)*a^2*b", ctx));
  CHECK(ctx.s(4, 0).is_zero());
  CHECK(ctx.s(-1, 0).is_zero());
}

TEST_CASE("coefficients of s(F_0) are linear in r and chi", "[segre][property]") {
  for (int n = 1; n <= 5; ++n)
    for (const auto& cls : segre_F0(n))
      for (const auto& [m, c] : cls.terms()) {
        REQUIRE(c.degree(Param::r) <= 1);
        REQUIRE(c.degree(Param::chi) <= 1);
      }
}

TEST_CASE("segre_twist", "[segre]") {
  const TowerContext ctx(2, 1);
  const ChowClass c1 = ctx.alpha_k(1, 1) + 2 * ctx.alpha(1);
  GradedList s;
  for (int i = 0; i <= ctx.dimension(1); ++i) s.push_back(ctx.s(i, 0).pullback(1));
  const GradedList t = segre_twist(s, 3, c1);
  CHECK(t[1] == s[1] + 3 * c1);
  const GradedList same = segre_twist(s, 3, ctx.zero(1));
  CHECK(same == s);
  const GradedList line = segre_twist({ctx.one(1), ctx.zero(1)}, 1, c1);
  CHECK(line[1] == c1);
  CHECK_THROWS_AS(segre_twist(s, 3, ctx.alpha(0)), DomainError);
  CHECK_THROWS_AS(segre_twist(s, 0, c1), DomainError);
}

TEST_CASE("segre_next basic rows", "[segre]") {
  const int n = 2;
  const TowerContext ctx(n, 3);
  for (int k = 1; k <= 3; ++k) {
    CHECK(ctx.s(0, k) == ctx.one(k));
    ChowClass expected = ctx.s(1, 0).pullback(k);
    for (int j = 1; j <= k; ++j) expected -= n * ctx.alpha_k(j, k);
    CHECK(ctx.s(1, k) == expected);
  }
  const ChowClass a1 = ctx.alpha_k(1, 1);
  CHECK(ctx.s(2, 1) == 4 * a1.pow(2) - 3 * ctx.s(1, 0).pullback(1) * a1 + ctx.s(2, 0).pullback(1));
}

TEST_CASE("segre_next errors", "[segre]") {
  SegreTable t(2);
  CHECK_THROWS_AS(segre_next(t, 2), DomainError);
  CHECK_THROWS_AS(segre_next(t, 0), DomainError);
  t = segre_next(t, 1);
  CHECK(t.depth() == 1);
  CHECK_THROWS_AS(TowerContext(2, 10), DomainError);
  CHECK_THROWS_AS(TowerContext(0, 1), DomainError);
}

TEST_CASE("every s_l is homogeneous of degree l", "[segre][property]") {
  for (int n = 1; n <= 3; ++n) {
    const TowerContext ctx(n, 3);
    for (int k = 0; k <= 3; ++k)
      for (int l = 0; l <= ctx.dimension(k); ++l) {
        const ChowClass s = ctx.s(l, k);
        if (!s.is_zero()) REQUIRE(s.is_homogeneous_of_degree(l));
      }
  }
}

// Oracle from the defining exact sequences, read multiplicatively:
// s(F_k) = s(O(1)) * s(pi^* F_{k-1} (x) O(-1)), with s(O(1)) = sum alpha_k^i
// and the twist expanded by segre_twist.
TEST_CASE("segre_next agrees with the exact-sequence oracle", "[segre][oracle]") {
  for (int n = 1; n <= 2; ++n) {
    const TowerContext ctx(n, 2);
    for (int k = 1; k <= 2; ++k) {
      const int dim = ctx.dimension(k);
      const ChowClass ak = ctx.alpha_k(k, k);
      GradedList pulled;
      for (int i = 0; i <= dim; ++i) pulled.push_back(ctx.s(i, k - 1).pullback(k));
      const GradedList twisted = segre_twist(pulled, n + 1, -ak);
      GradedList tautological;
      for (int i = 0; i <= dim; ++i) tautological.push_back(ak.pow(static_cast<unsigned>(i)));
      const GradedList oracle = graded_product(tautological, twisted);
      for (int l = 0; l <= dim; ++l) REQUIRE(ctx.s(l, k) == oracle[static_cast<std::size_t>(l)]);
    }
  }
}
