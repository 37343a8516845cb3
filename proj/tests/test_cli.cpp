#include <catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(JETSEGRE_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe)) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("intersect", "[cli]") {
  auto r = run("intersect --n 2 --k 0 --expr 'a^3'");
  CHECK(r.code == 0);
  CHECK(r.out == "r\n");
  r = run("--format json intersect --n 2 --k 0 --expr 'a^2*b'");
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["text"] == "d");
}

TEST_CASE("exit codes", "[cli]") {
  CHECK(run("").code == 1);
  CHECK(run("--help").code == 0);
  CHECK(run("intersect --n 2").code == 1);
  CHECK(run("bogus").code == 1);
  CHECK(run("intersect --n 2 --k 0 --expr 'a^-1'").code == 2);
  CHECK(run("intersect --n 2 --k 1 --expr 'a5'").code == 3);
  CHECK(run("intersect --n 2 --k 0 --expr 'a^2'").code == 3);
  CHECK(run("height --n 2 --x 0 --ratio 1").code == 3);
  CHECK(run("final-argument --n 2 --x 1 --sample r=0,d=1").code == 3);
}

TEST_CASE("lnumbers and segre", "[cli]") {
  auto r = run("lnumbers --max-f 2");
  CHECK(r.code == 0);
  CHECK(r.out.find("-1") != std::string::npos);
  r = run("--format json lnumbers --max-f 9");
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["3"]["1"] == "2");
  r = run("segre --n 2 --k 0");
  CHECK(r.code == 0);
  CHECK(r.out.find("(d - 4)*a") != std::string::npos);
}

TEST_CASE("morse and final-argument", "[cli]") {
  auto r = run("morse --n 2 --k 1 --A 'a1 + (2+x)*a - x*eps*b' --B '(2+x)*a' --sample r=100,d=3,chi=2,x=1");
  CHECK(r.code == 0);
  CHECK(r.out.find("negative") != std::string::npos);
  r = run("--format json final-argument --n 2 --x 1 --sample r=1,d=1");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"] == "negative");
  CHECK(j["schwarz_threshold_factor"] == "13");
  r = run("--format json final-argument --n 2 --x 1 --sample r=1000000000000000000,d=1000000 --ratio 1/100");
  CHECK(nlohmann::json::parse(r.out)["verdict"] == "positive");
}

TEST_CASE("scalar bounds", "[cli]") {
  CHECK(run("schwarz --weight 39 --ratio 1").out == "deg lambda > 39\n");
  CHECK(run("height --n 2 --x 1 --ratio 1").out == "h(s(B)) <= 13\n");
  CHECK(run("h0-bound --deg-lambda 6 --g 2 --d 2 --d0 2 --deg-lambda0 6 --n 2").out == "h0 >= 51\n");
  const auto r = run("nef-cone --n 2 --deg-lambda0 6 --d0 2");
  CHECK(r.code == 0);
  CHECK(r.out.find("-1*d") != std::string::npos);
}

TEST_CASE("jet subcommands", "[cli]") {
  auto r = run("wronskian --kappa 3");
  CHECK(r.code == 0);
  CHECK(r.out.find("12*z'^6") != std::string::npos);
  r = run("commutator --p 'z^2' --kappa 2 --alphas 0,1");
  CHECK(r.code == 0);
  CHECK(run("commutator --p \"z'\" --kappa 2").code == 3);
}

TEST_CASE("appendix", "[cli]") {
  CHECK(run("appendix --case ltable").code == 0);
  CHECK(run("appendix --case x1").code == 0);
  CHECK(run("appendix --case x3").code == 0);
  CHECK(run("appendix --case x9").code == 1);
}
