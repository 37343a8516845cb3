#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "chow_class.hpp"
#include "errors.hpp"
#include "param_scalar.hpp"
#include "rational.hpp"
#include "segre.hpp"
#include "tower.hpp"

namespace jetsegre {

/// L_k = O_{X_k}(0, 2*3^{k-1}; 2*3^{k-2}, ..., 6, 2, 1), total degree 3^k.
inline BundleWeights nef_Lk(int k) {
  if (k < 1) throw DomainError("nef_Lk: k must be >= 1");
  if (k > kMaxDepth) throw DomainError("nef_Lk: k must be <= " + std::to_string(kMaxDepth));
  BundleWeights w;
  w.lambda_part = ParamScalar(0);
  w.d_part = ParamScalar(Rational(2 * ipow(3, static_cast<unsigned>(k - 1))));
  for (int j = 1; j < k; ++j) w.m.emplace_back(Rational(2 * ipow(3, static_cast<unsigned>(k - 1 - j))));
  w.m.emplace_back(1);
  if (w.total() != ParamScalar(Rational(ipow(3, static_cast<unsigned>(k))))) throw DomainError("nef_Lk: total degree is not 3^k");
  return w;
}

namespace detail {

// (d, m_1, ..., m_{k-1}): the weights of L_k without the trailing 1.
inline std::vector<ParamScalar> nef_prefix(const BundleWeights& w) {
  std::vector<ParamScalar> v{w.d_part};
  for (std::size_t i = 0; i + 1 < w.m.size(); ++i) v.push_back(w.m[i]);
  return v;
}

}  // namespace detail

/// Checks L_k = (m_{k-1}, 1) with m_k = (3 m_{k-1}, 2) = 2(m_{k-1}, 1) + (m_{k-1}, 0)
/// and m_0 = (2), for an arbitrary weight vector.
inline bool nef_recursion_check(const BundleWeights& w) {
  const int k = w.level();
  if (k < 1 || !w.lambda_part.is_zero() || w.m.back() != ParamScalar(1)) return false;
  const auto v = detail::nef_prefix(w);
  if (k == 1) return v == std::vector<ParamScalar>{ParamScalar(2)};
  BundleWeights prev;
  prev.d_part = v.front() * ParamScalar(Rational(1, 3));
  for (std::size_t i = 1; i + 1 < v.size(); ++i) prev.m.push_back(v[i] * ParamScalar(Rational(1, 3)));
  prev.m.emplace_back(1);
  if (!nef_recursion_check(prev)) return false;

  auto m_prev = detail::nef_prefix(prev);
  std::vector<ParamScalar> tripled, combo;
  for (const auto& e : m_prev) tripled.push_back(3 * e);
  tripled.emplace_back(2);
  for (const auto& e : m_prev) combo.push_back(2 * e + e);
  combo.push_back(ParamScalar(2 * 1 + 0));
  return v == tripled && v == combo;
}

inline bool nef_recursion_check(int k) {
  if (k < 2) throw DomainError("nef_recursion_check: k must be >= 2");
  return nef_recursion_check(nef_Lk(k));
}

/// Coefficients of pi_* l_k^{n+1} - pi^* s_1(F_0) on level k-1.
struct LkExpansion {
  int n = 0, k = 0;
  /// Ordered alpha_{k-1}, ..., alpha_1, alpha.
  std::vector<Rational> coefficients;
  std::vector<Rational> expected;
  bool beta_free = false;
  bool matches = false;
  bool nonnegative = false;
};

/// Expected: (n+1)2*3^{j-1} - n on alpha_{k-j}, (n+1)2*3^{k-1} on alpha.
inline LkExpansion pushforward_lk_expansion(int k, const TowerContext& ctx) {
  if (k < 1 || k > ctx.depth()) throw DomainError("pushforward_lk_expansion: k must be in 1..depth");
  const int n = ctx.n();
  const ChowClass lk = ctx.class_of(nef_Lk(k));
  const ChowClass pushed = ctx.pushforward_once(lk.pow(static_cast<unsigned>(n + 1)));
  const ChowClass rest = pushed - ctx.s(1, 0).pullback(k - 1);

  LkExpansion out;
  out.n = n;
  out.k = k;
  auto read = [&](Generator g) {
    const ParamScalar c = rest.coefficient(ChowMonomial::of(g));
    if (!c.is_constant()) throw DomainError("pushforward_lk_expansion: non-numeric coefficient");
    return c.constant_value();
  };
  for (int j = 1; j < k; ++j) {
    out.coefficients.push_back(read(Generator::alpha_k(k - j)));
    out.expected.push_back(Rational((n + 1) * 2 * ipow(3, static_cast<unsigned>(j - 1)) - n));
  }
  out.coefficients.push_back(read(Generator::alpha()));
  out.expected.push_back(Rational((n + 1) * 2 * ipow(3, static_cast<unsigned>(k - 1))));
  out.beta_free = rest.coefficient(ChowMonomial::of(Generator::beta())).is_zero();

  // Everything else must vanish: rest is exactly the degree-1 combination read above.
  ChowClass rebuilt(n, k - 1);
  for (int j = 1; j < k; ++j)
    rebuilt.add_term(ChowMonomial::of(Generator::alpha_k(k - j)), out.coefficients[static_cast<std::size_t>(j - 1)]);
  rebuilt.add_term(ChowMonomial::of(Generator::alpha()), out.coefficients.back());
  out.matches = out.beta_free && rebuilt == rest && out.coefficients == out.expected;
  out.nonnegative = true;
  for (const auto& c : out.coefficients) out.nonnegative = out.nonnegative && c >= 0;
  return out;
}

inline Sign sign_of(const Rational& q) {
  const int s = sgn(q);
  return s > 0 ? Sign::positive : (s < 0 ? Sign::negative : Sign::zero);
}

struct MorseOptions {
  /// Replace eps by r/((n+1)d) in the result.
  bool substitute_eps = true;
  std::optional<ParamAssignment> sample;
};

struct MorseReport {
  int n = 0, level = 0, dimension = 0;
  ParamScalar a_top;         // A^D
  ParamScalar a_b;           // A^{D-1} B
  ParamScalar difference;    // A^D - D A^{D-1} B
  ParamScalar dominant;
  Sign asymptotic = Sign::zero;
  std::optional<Rational> sample_value;
  std::optional<Sign> sample_sign;

  nlohmann::json to_json() const {
    nlohmann::json j{{"n", n},
                     {"level", level},
                     {"dimension", dimension},
                     {"difference", difference.to_json()},
                     {"difference_text", difference.to_string()},
                     {"dominant", dominant.to_json()},
                     {"dominant_text", dominant.to_string()},
                     {"asymptotic_sign", std::string(to_string(asymptotic))}};
    if (sample_value) {
      j["sample_value"] = jetsegre::to_string(*sample_value);
      j["sample_sign"] = std::string(to_string(*sample_sign));
    }
    return j;
  }

  std::string to_text() const {
    std::string out;
    out += "level " + std::to_string(level) + ", D = " + std::to_string(dimension) + "\n";
    out += "A^D - D*A^(D-1)*B = " + difference.to_string() + "\n";
    out += "dominant = " + dominant.to_string() + "\n";
    out += "asymptotic sign (r >> d >> 1) = " + std::string(to_string(asymptotic)) + "\n";
    if (sample_value) out += "sample value = " + jetsegre::to_string(*sample_value) + " (" + std::string(to_string(*sample_sign)) + ")\n";
    return out;
  }
};

/// A^D - D A^{D-1} B on the level of A and B, D = dim of that level.
inline MorseReport morse_certificate(const ChowClass& A, const ChowClass& B, const TowerContext& ctx, const MorseOptions& opts = {}) {
  if (A.level() != B.level() || A.n() != B.n()) throw DomainError("morse_certificate: A and B live on different levels");
  if (!A.is_homogeneous_of_degree(1) || !B.is_homogeneous_of_degree(1))
    throw DomainError("morse_certificate: A and B must be degree-1 classes");
  MorseReport rep;
  rep.n = ctx.n();
  rep.level = A.level();
  rep.dimension = ctx.dimension(rep.level);
  const unsigned D = static_cast<unsigned>(rep.dimension);
  const ChowClass lower = A.pow(D - 1);
  rep.a_top = ctx.top_intersection(lower * A);
  rep.a_b = ctx.top_intersection(lower * B);
  rep.difference = rep.a_top - ParamScalar(static_cast<long>(D)) * rep.a_b;
  if (opts.substitute_eps) {
    rep.a_top = rep.a_top.substitute_eps(rep.n);
    rep.a_b = rep.a_b.substitute_eps(rep.n);
    rep.difference = rep.difference.substitute_eps(rep.n);
  }
  rep.dominant = rep.difference.dominant_term();
  rep.asymptotic = rep.difference.asymptotic_sign();
  if (opts.sample) {
    rep.sample_value = rep.difference.evaluate(*opts.sample);
    rep.sample_sign = sign_of(*rep.sample_value);
  }
  return rep;
}

/// sum_{j=1}^{n+1} (3^j - 2*3^{j-1}); equals (3^{n+1}-1)/2.
inline Rational schwarz_weight_sum(int n) {
  if (n < 1) throw DomainError("schwarz_weight_sum: n must be >= 1");
  Integer s = 0;
  for (int j = 1; j <= n + 1; ++j) s += ipow(3, static_cast<unsigned>(j)) - 2 * ipow(3, static_cast<unsigned>(j - 1));
  return Rational(s);
}

struct FinalArgumentReport {
  int n = 0;
  Rational r, d, x, chi;
  MorseReport morse;
  /// (3^{n+1}-1)/2; the side condition is threshold_factor * ratio < r/((n+1)d).
  Rational threshold_factor;
  Rational eps_bound;  // r/((n+1)d)
  std::optional<Rational> ratio;
  std::optional<bool> schwarz_ok;

  Sign verdict() const { return *morse.sample_sign; }

  nlohmann::json to_json() const {
    nlohmann::json j{{"n", n},
                     {"r", jetsegre::to_string(r)},
                     {"d", jetsegre::to_string(d)},
                     {"x", jetsegre::to_string(x)},
                     {"chi", jetsegre::to_string(chi)},
                     {"verdict", std::string(to_string(verdict()))},
                     {"morse", morse.to_json()},
                     {"schwarz_threshold_factor", jetsegre::to_string(threshold_factor)},
                     {"eps_bound", jetsegre::to_string(eps_bound)}};
    if (ratio) {
      j["ratio"] = jetsegre::to_string(*ratio);
      j["schwarz_lhs"] = jetsegre::to_string(threshold_factor * *ratio);
      j["schwarz_ok"] = *schwarz_ok;
    }
    return j;
  }

  std::string to_text() const {
    std::string out = morse.to_text();
    out += "verdict at (r, d, chi, x) = (" + jetsegre::to_string(r) + ", " + jetsegre::to_string(d) + ", " + jetsegre::to_string(chi) + ", " +
           jetsegre::to_string(x) + "): " + std::string(to_string(verdict())) + "\n";
    const std::string f = jetsegre::to_string(threshold_factor);
    out += "schwarz side condition: " + f + " * chi_rho/deg_rho < r/(" + std::to_string(n + 1) + "d) = " + jetsegre::to_string(eps_bound) + "\n";
    if (ratio)
      out += "  with chi_rho/deg_rho = " + jetsegre::to_string(*ratio) + ": " + jetsegre::to_string(threshold_factor * *ratio) + " < " +
             jetsegre::to_string(eps_bound) + " is " + (*schwarz_ok ? "true" : "false") + "\n";
    return out;
  }
};

/// A = L_{n+1} + ... + L_1 + (alpha - eps beta), B = (3^{n+1} + x) alpha on
/// level n+1, eps = r/((n+1)d); x stays symbolic in the difference.
inline ChowClass final_argument_A(const TowerContext& ctx) {
  const int kappa = ctx.n() + 1;
  ChowClass A = ctx.alpha(kappa) - ParamScalar::var(Param::eps) * ctx.beta(kappa);
  for (int j = 1; j <= kappa; ++j) A += ctx.class_of(nef_Lk(j)).pullback(kappa);
  return A;
}

inline ChowClass final_argument_B(const TowerContext& ctx) {
  const int kappa = ctx.n() + 1;
  return (ParamScalar(Rational(ipow(3, static_cast<unsigned>(kappa)))) + ParamScalar::var(Param::x)) * ctx.alpha(kappa);
}

inline FinalArgumentReport final_argument(int n, const Rational& r, const Rational& d, const Rational& x, const Rational& chi = 2,
                                          std::optional<Rational> ratio = std::nullopt) {
  if (n < 1) throw DomainError("final_argument: n must be >= 1");
  if (n + 1 > kMaxDepth) throw DomainError("final_argument: n + 1 exceeds the maximal tower depth");
  if (r <= 0 || d <= 0 || x <= 0) throw DomainError("final_argument: r, d, x must be positive");
  if (ratio && *ratio < 0) throw DomainError("final_argument: ratio must be >= 0");
  const TowerContext ctx(n, n + 1);
  FinalArgumentReport rep;
  rep.n = n;
  rep.r = r;
  rep.d = d;
  rep.x = x;
  rep.chi = chi;
  MorseOptions opts;
  opts.sample = ParamAssignment{{Param::r, r}, {Param::d, d}, {Param::x, x}, {Param::chi, chi}};
  rep.morse = morse_certificate(final_argument_A(ctx), final_argument_B(ctx), ctx, opts);
  rep.threshold_factor = schwarz_weight_sum(n);
  rep.eps_bound = r / (Rational(n + 1) * d);
  rep.ratio = ratio;
  if (ratio) rep.schwarz_ok = rep.threshold_factor * *ratio < rep.eps_bound;
  return rep;
}

/// Strict lower bound ratio * |m| for deg lambda.
inline Rational schwarz_min_lambda(const Rational& total_weight, const Rational& ratio) {
  if (total_weight < 0 || ratio < 0) throw DomainError("schwarz_min_lambda: arguments must be >= 0");
  return ratio * total_weight;
}

/// (3^{n+1}-1)/(2x) * ratio.
inline Rational height_bound(int n, const Rational& x, const Rational& ratio) {
  if (n < 1) throw DomainError("height_bound: n must be >= 1");
  if (x <= 0) throw DomainError("height_bound: x must be positive");
  return Rational(ipow(3, static_cast<unsigned>(n + 1)) - 1) / (2 * x) * ratio;
}

struct ConeBounds {
  int n = 0;
  Rational deg_lambda0, d0;
  Rational nef_lower_slope;

  std::vector<std::string> description() const {
    const std::string s = jetsegre::to_string(nef_lower_slope);
    return {"{(l, d) : l >= 0, d >= 0} is contained in Nef(X)",
            "Nef(X) is contained in {(l, d) : d >= 0, l >= " + s + "*d}",
            "{(l, d) : d >= 0, l >= " + s + "*d} is contained in Eff(X)"};
  }

  nlohmann::json to_json() const {
    return {{"n", n},
            {"deg_lambda0", jetsegre::to_string(deg_lambda0)},
            {"d0", jetsegre::to_string(d0)},
            {"nef_lower_slope", jetsegre::to_string(nef_lower_slope)},
            {"cones", description()}};
  }
};

inline ConeBounds nef_cone_bounds(int n, const Rational& deg_lambda0, const Rational& d0) {
  if (n < 1) throw DomainError("nef_cone_bounds: n must be >= 1");
  if (d0 <= 0) throw DomainError("nef_cone_bounds: d0 must be positive");
  if (deg_lambda0 < 0) throw DomainError("nef_cone_bounds: deg lambda0 must be >= 0");
  ConeBounds c;
  c.n = n;
  c.deg_lambda0 = deg_lambda0;
  c.d0 = d0;
  c.nef_lower_slope = -deg_lambda0 / (Rational(n + 1) * d0);
  return c;
}

/// [deg l + 1 - g] C(d+n+1, n+1) - [deg l - deg l0 + 1 - g] C(d-d0+n+1, n+1).
inline Integer h0_lower_bound(long deg_lambda, long g, long d, long d0, long deg_lambda0, int n) {
  if (n < 1) throw DomainError("h0_lower_bound: n must be >= 1");
  if (d0 < 1 || d < d0) throw DomainError("h0_lower_bound: requires d >= d0 >= 1");
  return Integer(deg_lambda + 1 - g) * binom(d + n + 1, n + 1) - Integer(deg_lambda - deg_lambda0 + 1 - g) * binom(d - d0 + n + 1, n + 1);
}

}  // namespace jetsegre
