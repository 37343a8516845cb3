#include <catch_amalgamated.hpp>

#include <jetsegre/appendix.hpp>
#include <jetsegre/expr.hpp>

using namespace jetsegre;

TEST_CASE("L table", "[appendix]") {
  const auto rep = appendix_ltable();
  CHECK(rep.mismatches() == 0);
  CHECK(rep.internal_ok());
  CHECK(rep.entries.size() == 10);
  const LTable t(9);
  for (long f = 0; f <= 9; ++f)
    for (long e = 0; e <= f; ++e)
      REQUIRE(t(e, f) == fixtures::kLTable[static_cast<std::size_t>(f)][static_cast<std::size_t>(e)]);
}

TEST_CASE("X_1", "[appendix]") {
  const auto rep = appendix_x1();
  CHECK(rep.all_match());
  CHECK(rep.to_text().find("MISMATCH") == std::string::npos);
}

TEST_CASE("X_2", "[appendix]") {
  const auto rep = appendix_x2();
  CHECK(rep.all_match());
  CHECK(eval_scalar(fixtures::kX2Ladder) == eval_scalar(fixtures::kX2Poly));
  CHECK(eval_scalar(fixtures::kX2EpsLadder) == eval_scalar(fixtures::kX2EpsPoly));
}

TEST_CASE("X_3", "[appendix][slow]") {
  const auto rep = appendix_x3();
  CHECK(rep.mismatches() == 0);
  CHECK(rep.internal_ok());
  CHECK(rep.entries.size() >= 50);

  const ParamScalar rd3 = eval_scalar(fixtures::kX3Rd3), chid3 = eval_scalar(fixtures::kX3ChiD3);
  auto coeff = [](const ParamScalar& s, const char* mono) {
    const ParamScalar m = eval_scalar(mono);
    return s.coefficient(m.terms().begin()->first, {Param::y, Param::z});
  };
  CHECK(coeff(rd3, "1") == 1332648);
  CHECK(coeff(rd3, "z^3") == 3304896);
  CHECK(coeff(rd3, "z^6") == 17136);
  CHECK(coeff(rd3, "y^3*z") == 34272);
  CHECK(coeff(chid3, "1") == 16542612);
  CHECK(coeff(chid3, "z^3") == 44108988);
  CHECK(coeff(chid3, "z^7") == 30564);
  CHECK(coeff(chid3, "y^4") == 19278);
  CHECK(coeff(chid3, "y^4*z^3") == 3780);
}

TEST_CASE("run_appendix dispatch", "[appendix]") {
  CHECK(run_appendix("ltable").case_id == "ltable");
  CHECK(run_appendix("x1").all_match());
  CHECK_THROWS_AS(run_appendix("x4"), DomainError);
  const auto j = run_appendix("x2").to_json();
  CHECK(j["mismatches"] == 0);
  CHECK(j["internal_ok"] == true);
}
