// Command-line front end.
//
// Exit codes: 0 ok, 1 usage, 2 parse error, 3 domain error, 4 fixture mismatch.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <jetsegre/appendix.hpp>
#include <jetsegre/expr.hpp>
#include <jetsegre/jetdiff.hpp>
#include <jetsegre/positivity.hpp>
#include <jetsegre/segre.hpp>
#include <jetsegre/tower.hpp>

namespace {

using namespace jetsegre;

enum Exit { kOk = 0, kUsage = 1, kParse = 2, kDomain = 3, kMismatch = 4 };

Rational rational_arg(const std::string& text, const std::string& what) {
  try {
    return parse_rational(text);
  } catch (const DomainError&) {
    throw jetsegre::ParseError("--" + what + ": malformed rational '" + text + "'", 0);
  }
}

// "r=10,d=2,chi=2" -> assignment.
ParamAssignment parse_sample(const std::string& text) {
  ParamAssignment out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(start, end - start);
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw jetsegre::ParseError("--sample: expected name=value in '" + item + "'", start);
    const auto p = param_from_name(item.substr(0, eq));
    if (!p) throw jetsegre::ParseError("--sample: unknown parameter '" + item.substr(0, eq) + "'", start);
    try {
      out[*p] = parse_rational(item.substr(eq + 1));
    } catch (const DomainError&) {
      throw jetsegre::ParseError("--sample: malformed value in '" + item + "'", start + eq + 1);
    }
    start = end + 1;
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw jetsegre::ParseError("--" + what + ": malformed integer '" + item + "'", 0);
    }
  }
  return out;
}

struct Output {
  bool json = false;
  void emit(const nlohmann::json& j, const std::string& text) const {
    if (json)
      std::cout << j.dump(2) << "\n";
    else
      std::cout << text;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact intersection numbers on jet towers of hypersurface families"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  int n = 2, k = 1, max_f = 9, kappa = 1;
  std::optional<int> level;
  std::string expr, a_expr, b_expr, sample, x_text = "1", ratio_text, weight_text, d0_text, lam0_text, p_text = "0", alphas_text = "0,1",
                                                case_id;
  std::optional<std::string> ratio_opt;
  std::string chi_text = "2";
  bool no_subst = false, expand = false;
  long deg_lambda = 0, g = 0, dd = 1, d0 = 1, deg_lambda0 = 0;

  auto* lnum = app.add_subcommand("lnumbers", "Table of L_e^f for f <= F");
  lnum->add_option("--max-f", max_f, "Largest f")->check(CLI::Range(0, 200));

  auto* seg = app.add_subcommand("segre", "Segre classes s_i(F_j) on the tower");
  seg->add_option("--n", n, "Relative dimension")->required();
  seg->add_option("--k", k, "Tower depth");
  seg->add_option("--level", level, "Only this level");

  auto* inter = app.add_subcommand("intersect", "Top intersection number of an expression on level k");
  inter->add_option("--n", n)->required();
  inter->add_option("--k", k)->required();
  inter->add_option("--expr", expr)->required();

  auto* morse = app.add_subcommand("morse", "A^D - D A^(D-1) B on level k");
  morse->add_option("--n", n)->required();
  morse->add_option("--k", k)->required();
  morse->add_option("--A", a_expr, "Degree-1 class A")->required();
  morse->add_option("--B", b_expr, "Degree-1 class B")->required();
  morse->add_flag("--no-subst-eps", no_subst, "Keep eps symbolic");
  morse->add_option("--sample", sample, "Evaluation point, e.g. r=100,d=3,chi=2,x=1");

  auto* fin = app.add_subcommand("final-argument", "Bigness certificate on X_{n+1}");
  fin->add_option("--n", n);
  fin->add_option("--x", x_text, "Positive rational x");
  fin->add_option("--sample", sample, "r=..,d=..[,chi=..]")->required();
  fin->add_option("--ratio", ratio_opt, "chi_rho/deg_rho for the Schwarz side condition");

  auto* sch = app.add_subcommand("schwarz", "Strict lower bound for deg lambda");
  sch->add_option("--weight", weight_text, "|m|")->required();
  sch->add_option("--ratio", ratio_text, "chi_rho/deg_rho")->required();

  auto* hgt = app.add_subcommand("height", "Height bound (3^{n+1}-1)/(2x) * ratio");
  hgt->add_option("--n", n)->required();
  hgt->add_option("--x", x_text)->required();
  hgt->add_option("--ratio", ratio_text)->required();

  auto* cone = app.add_subcommand("nef-cone", "Nef cone sandwich");
  cone->add_option("--n", n)->required();
  cone->add_option("--deg-lambda0", lam0_text)->required();
  cone->add_option("--d0", d0_text)->required();

  auto* h0 = app.add_subcommand("h0-bound", "Lower bound for h^0");
  h0->add_option("--deg-lambda", deg_lambda)->required();
  h0->add_option("--g", g)->required();
  h0->add_option("--d", dd)->required();
  h0->add_option("--d0", d0)->required();
  h0->add_option("--deg-lambda0", deg_lambda0)->required();
  h0->add_option("--n", n)->required();

  auto* wr = app.add_subcommand("wronskian", "det D^l(z^j) against 1!2!...k! z'^(k(k+1)/2)");
  wr->add_option("--kappa", kappa)->required()->check(CLI::Range(1, 8));
  wr->add_flag("--expand", expand, "Also print the matrix");

  auto* com = app.add_subcommand("commutator", "Check the commutator formula for T = sum A d/da + sum P^(l) d/dz^(l)");
  com->add_option("--p", p_text, "P as a jet expression in z, aN, AN")->required();
  com->add_option("--kappa", kappa)->required()->check(CLI::Range(1, 8));
  com->add_option("--alphas", alphas_text, "Indices alpha with A_alpha the opaque symbol A<alpha>");

  auto* apx = app.add_subcommand("appendix", "Recompute the surface-case reference tables");
  apx->add_option("--case", case_id)->required()->check(CLI::IsMember({"ltable", "x1", "x2", "x3"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  const Output out{format == "json"};
  try {
    if (lnum->parsed()) {
      const LTable t(max_f);
      out.emit(t.to_json(), t.to_string());
    } else if (seg->parsed()) {
      const TowerContext ctx(n, k);
      nlohmann::json j = nlohmann::json::object();
      std::string text;
      const int lo = level.value_or(0), hi = level.value_or(k);
      if (lo < 0 || hi > k) throw DomainError("--level must be in 0..k");
      for (int lv = lo; lv <= hi; ++lv) {
        nlohmann::json row = nlohmann::json::array();
        for (int i = 0; i <= ctx.dimension(lv); ++i) {
          const ChowClass s = ctx.s(i, lv);
          row.push_back(s.to_json());
          text += "s_" + std::to_string(i) + "(F_" + std::to_string(lv) + ") = " + s.to_string() + "\n";
        }
        j[std::to_string(lv)] = row;
      }
      out.emit(j, text);
    } else if (inter->parsed()) {
      const TowerContext ctx(n, k);
      const ParamScalar v = ctx.top_intersection(eval(*parse(expr, Dialect::chow), ctx));
      out.emit(nlohmann::json{{"n", n}, {"k", k}, {"value", v.to_json()}, {"text", v.to_string()}}, v.to_string() + "\n");
    } else if (morse->parsed()) {
      const TowerContext ctx(n, k);
      MorseOptions opts;
      opts.substitute_eps = !no_subst;
      if (!sample.empty()) opts.sample = parse_sample(sample);
      const MorseReport rep = morse_certificate(eval(*parse(a_expr), ctx), eval(*parse(b_expr), ctx), ctx, opts);
      out.emit(rep.to_json(), rep.to_text());
    } else if (fin->parsed()) {
      const ParamAssignment at = parse_sample(sample);
      if (!at.count(Param::r) || !at.count(Param::d)) throw DomainError("--sample must give r and d");
      const Rational chi = at.count(Param::chi) ? at.at(Param::chi) : rational_arg(chi_text, "chi");
      std::optional<Rational> ratio;
      if (ratio_opt) ratio = rational_arg(*ratio_opt, "ratio");
      const FinalArgumentReport rep = final_argument(n, at.at(Param::r), at.at(Param::d), rational_arg(x_text, "x"), chi, ratio);
      out.emit(rep.to_json(), rep.to_text());
    } else if (sch->parsed()) {
      const Rational v = schwarz_min_lambda(rational_arg(weight_text, "weight"), rational_arg(ratio_text, "ratio"));
      out.emit(nlohmann::json{{"min_deg_lambda", to_string(v)}}, "deg lambda > " + to_string(v) + "\n");
    } else if (hgt->parsed()) {
      const Rational v = height_bound(n, rational_arg(x_text, "x"), rational_arg(ratio_text, "ratio"));
      out.emit(nlohmann::json{{"height_bound", to_string(v)}}, "h(s(B)) <= " + to_string(v) + "\n");
    } else if (cone->parsed()) {
      const ConeBounds c = nef_cone_bounds(n, rational_arg(lam0_text, "deg-lambda0"), rational_arg(d0_text, "d0"));
      std::string text = "slope = " + to_string(c.nef_lower_slope) + "\n";
      for (const auto& line : c.description()) text += line + "\n";
      out.emit(c.to_json(), text);
    } else if (h0->parsed()) {
      const Integer v = h0_lower_bound(deg_lambda, g, dd, d0, deg_lambda0, n);
      out.emit(nlohmann::json{{"h0_lower_bound", v.get_str()}}, "h0 >= " + v.get_str() + "\n");
    } else if (wr->parsed()) {
      const WronskianResult w = wronskian_det(kappa);
      nlohmann::json j{{"kappa", kappa}, {"determinant", w.determinant.to_string()}, {"closed_form", w.closed_form.to_string()}, {"matches", w.matches}};
      std::string text;
      if (expand) {
        const auto M = wronskian_matrix(kappa, default_cap(kappa));
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t l = 0; l < M.size(); ++l) {
          nlohmann::json row = nlohmann::json::array();
          text += "row " + std::to_string(l) + ":";
          for (const auto& e : M[l]) {
            row.push_back(e.to_string());
            text += "  " + e.to_string();
          }
          text += "\n";
          rows.push_back(row);
        }
        j["matrix"] = rows;
      }
      text += "det = " + w.determinant.to_string() + "\n";
      text += "1!2!...k! z'^(k(k+1)/2) = " + w.closed_form.to_string() + (w.matches ? "  (equal)\n" : "  (DIFFERENT)\n");
      out.emit(j, text);
      return w.matches ? kOk : kMismatch;
    } else if (com->parsed()) {
      SpecialField T;
      T.P = eval_jet(*parse(p_text, Dialect::jet));
      T.kappa = kappa;
      for (int a : parse_int_list(alphas_text, "alphas")) T.A.emplace_back(a, JetPoly(JetVar::coeff(a)));
      const CommutatorResult r = commutator_check(T);
      nlohmann::json cases = nlohmann::json::array();
      std::string text;
      for (const auto& c : r.cases) {
        cases.push_back({{"f", c.test.to_string()}, {"lhs", c.lhs.to_string()}, {"rhs", c.rhs.to_string()}, {"ok", c.ok}});
        text += std::string(c.ok ? "ok    " : "FAIL  ") + "f = " + c.test.to_string() + "   [T,D]f = " + c.lhs.to_string() + "\n";
      }
      text += r.all_ok() ? "commutator formula holds on all test polynomials\n" : "commutator formula FAILS\n";
      out.emit(nlohmann::json{{"kappa", kappa}, {"cases", cases}, {"all_ok", r.all_ok()}}, text);
      return r.all_ok() ? kOk : kMismatch;
    } else if (apx->parsed()) {
      const AppendixReport rep = run_appendix(case_id);
      out.emit(rep.to_json(), rep.to_text());
      return rep.all_match() ? kOk : kMismatch;
    }
  } catch (const jetsegre::ParseError& e) {
    std::cerr << "parse error at offset " << e.offset() << ": " << e.what() << "\n";
    return kParse;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kDomain;
  }
  return kOk;
}
