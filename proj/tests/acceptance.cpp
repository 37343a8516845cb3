// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <string>

#include <jetsegre/appendix.hpp>
#include <jetsegre/expr.hpp>
#include <jetsegre/jetdiff.hpp>
#include <jetsegre/positivity.hpp>
#include <jetsegre/segre.hpp>
#include <jetsegre/tower.hpp>

#include "support.hpp"

using namespace jetsegre;
using testsupport::P;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

Outcome c1_ltable() {
  const auto t0 = std::chrono::steady_clock::now();
  const LTable t(9);
  std::size_t good = 0;
  for (long f = 0; f <= 9; ++f)
    for (long e = 0; e <= f; ++e) good += t(e, f) == fixtures::kLTable[static_cast<std::size_t>(f)][static_cast<std::size_t>(e)];
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {good == 55 && t.entry_count() == 55 && s < 1.0, std::to_string(good) + "/55 entries, " + std::to_string(s) + " s"};
}

Outcome c2_s1() {
  for (int n = 1; n <= 5; ++n) {
    const TowerContext ctx(n, 0);
    if (ctx.s(1, 0) != (P(Param::d) - (n + 2)) * ctx.alpha(0) + (P(Param::r) + P(Param::chi)) * ctx.beta(0))
      return {false, "n = " + std::to_string(n)};
  }
  return {true, "n = 1..5"};
}

Outcome c3_top_power() {
  const auto r = P(Param::r), d = P(Param::d), chi = P(Param::chi);
  for (int n = 1; n <= 3; ++n) {
    const TowerContext ctx(n, 0);
    const ParamScalar v = ctx.top_intersection(ctx.s(1, 0).pow(static_cast<unsigned>(n + 1)));
    if (v.dominant_term() != (n + 2) * r * d.pow(static_cast<unsigned>(n + 1))) return {false, "dominant at n = " + std::to_string(n)};
  }
  const TowerContext ctx(2, 0);
  const ParamScalar hand = (d - 4).pow(3) * r + 3 * (d - 4).pow(2) * (r + chi) * d;
  if (ctx.top_intersection(ctx.s(1, 0).pow(3)) != hand) return {false, "hand expansion at n = 2"};
  return {true, "(n+2) r d^(n+1) for n = 1..3, full polynomial at n = 2"};
}

Outcome c4_x1() {
  const TowerContext ctx(2, 1);
  const ChowClass A = ctx.class_of(nef_Lk(1)) + P(Param::x) * (ctx.alpha(1) - P(Param::eps) * ctx.beta(1));
  const ChowClass B = (2 + P(Param::x)) * ctx.alpha(1);
  const MorseReport m = morse_certificate(A, B, ctx);
  if (m.dominant != eval_scalar(fixtures::kX1Dominant)) return {false, "dominant " + m.dominant.to_string()};
  std::size_t samples = 0;
  for (long d : {1, 2, 5, 30, 400})
    for (long mult : {1, 2, 10, 1000})
      for (long chi : {2, 3, 17})
        for (const Rational& x : {Rational(1, 7), Rational(1), Rational(5), Rational(100)}) {
          const Rational v = m.difference.evaluate({{Param::r, d * mult}, {Param::d, d}, {Param::chi, chi}, {Param::x, x}});
          if (v >= 0) return {false, "nonnegative at a sample"};
          ++samples;
        }
  return {m.asymptotic == Sign::negative, "dominant matches, negative at " + std::to_string(samples) + " samples"};
}

Outcome report_outcome(const AppendixReport& rep, double limit = 0) {
  std::string detail = std::to_string(rep.entries.size() - rep.mismatches()) + "/" + std::to_string(rep.entries.size()) + " match";
  detail += rep.internal_ok() ? ", internal ok" : ", internal FAILED";
  bool ok = rep.all_match();
  if (limit > 0) {
    detail += ", " + std::to_string(rep.seconds) + " s";
    ok = ok && rep.seconds < limit;
  }
  return {ok, detail};
}

Outcome c5_x2() { return report_outcome(run_appendix("x2")); }

Outcome c6_x3() { return report_outcome(run_appendix("x3"), 60.0); }

Outcome c7_wronskian() {
  for (int kappa = 1; kappa <= 5; ++kappa)
    if (!wronskian_det(kappa).matches) return {false, "kappa = " + std::to_string(kappa)};
  return {true, "kappa = 1..5"};
}

Outcome c8_oracle() {
  std::size_t compared = 0;
  for (int n = 1; n <= 2; ++n) {
    const TowerContext ctx(n, 2);
    for (int k = 1; k <= 2; ++k) {
      const int dim = ctx.dimension(k);
      const ChowClass ak = ctx.alpha_k(k, k);
      GradedList pulled, tautological;
      for (int i = 0; i <= dim; ++i) {
        pulled.push_back(ctx.s(i, k - 1).pullback(k));
        tautological.push_back(ak.pow(static_cast<unsigned>(i)));
      }
      const GradedList oracle = graded_product(tautological, segre_twist(pulled, n + 1, -ak));
      for (int l = 0; l <= dim; ++l, ++compared)
        if (ctx.s(l, k) != oracle[static_cast<std::size_t>(l)]) return {false, "s_" + std::to_string(l) + " at (n, k) = (" + std::to_string(n) + ", " + std::to_string(k) + ")"};
    }
  }
  return {true, std::to_string(compared) + " classes"};
}

Outcome c9_projection() {
  std::mt19937 rng(9);
  int checked = 0;
  for (int n = 1; n <= 2; ++n) {
    const TowerContext ctx(n, 3);
    for (int trial = 0; trial < 50; ++trial) {
      const int j = 1 + trial % 3;
      std::uniform_int_distribution<int> pick_i(0, ctx.dimension(j - 1));
      const int i = pick_i(rng);
      const ChowClass c = testsupport::random_class(rng, n, j - 1, ctx.dimension(j - 1) - i);
      const ParamScalar lhs = ctx.top_intersection(c.pullback(j) * ctx.alpha_k(j, j).pow(static_cast<unsigned>(n + i)));
      if (lhs != ctx.top_intersection(c * ctx.s(i, j - 1))) return {false, "instance " + std::to_string(checked)};
      ++checked;
    }
  }
  return {checked == 100, std::to_string(checked) + " instances"};
}

Outcome c10_final() {
  const auto small = final_argument(2, 1, 1, 1);
  const auto large = final_argument(2, Rational(ipow(10, 18)), Rational(ipow(10, 6)), 1);
  const bool ok = small.verdict() == Sign::negative && large.verdict() == Sign::positive && small.threshold_factor == 13 &&
                  large.eps_bound == Rational(ipow(10, 12), 3);
  return {ok, "r=d=1: " + std::string(to_string(small.verdict())) + ", r=1e18 d=1e6: " + std::string(to_string(large.verdict())) +
                  ", side condition " + to_string(small.threshold_factor) + " * ratio < r/(3d)"};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"L table", c1_ltable},          {"s_1(F_0) closed form", c2_s1},  {"top s_1^{n+1} dominant term", c3_top_power},
      {"X_1 Morse certificate", c4_x1}, {"X_2 degree-3 part", c5_x2},    {"X_3 d^3 polynomials", c6_x3},
      {"Wronskian", c7_wronskian},      {"segre_next oracle", c8_oracle}, {"projection formula", c9_projection},
      {"final argument", c10_final},
  };
  int failures = 0, idx = 0;
  for (const auto& [name, fn] : criteria) {
    ++idx;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2d %s: %s (%.2f s)\n", o.ok ? "PASS" : "FAIL", idx, name, o.detail.c_str(), s);
    failures += o.ok ? 0 : 1;
  }
  std::printf("%d/%d criteria passed\n", idx - failures, idx);
  return failures == 0 ? 0 : 1;
}
