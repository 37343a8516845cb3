#pragma once

// Exact sparse polynomials in the fixed parameter set {r, d, chi, x, y, z, eps}
// with rational coefficients. A scalar may carry a denominator d^k, which is
// the only kind of division the tower computations ever produce
// (eps = r / ((n+1) d)).

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "rational.hpp"

namespace jetsegre {

enum class Param : std::uint8_t { r = 0, d, chi, x, y, z, eps };

inline constexpr std::size_t kParamCount = 7;
inline constexpr std::array<Param, kParamCount> kAllParams{Param::r, Param::d,   Param::chi, Param::x,
                                                           Param::y, Param::z,   Param::eps};
inline constexpr std::array<std::string_view, kParamCount> kParamNames{"r", "d", "chi", "x", "y", "z", "eps"};

inline std::string_view name_of(Param p) { return kParamNames[static_cast<std::size_t>(p)]; }

inline std::optional<Param> param_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kParamCount; ++i)
    if (kParamNames[i] == name) return static_cast<Param>(i);
  return std::nullopt;
}

/// Exponent vector over the seven parameters, packed one byte per variable with
/// r in the most significant byte, so numeric comparison is lexicographic in
/// the canonical variable order.
class ParamMonomial {
 public:
  ParamMonomial() = default;

  static ParamMonomial of(Param p, unsigned exponent = 1) {
    ParamMonomial m;
    m.set(p, exponent);
    return m;
  }

  unsigned exponent(Param p) const { return static_cast<unsigned>((bits_ >> shift(p)) & 0xffu); }

  void set(Param p, unsigned exponent) {
    if (exponent > 0xffu) throw DomainError("parameter exponent overflow");
    bits_ &= ~(std::uint64_t{0xff} << shift(p));
    bits_ |= std::uint64_t{exponent} << shift(p);
  }

  unsigned total_degree() const {
    unsigned t = 0;
    for (Param p : kAllParams) t += exponent(p);
    return t;
  }

  /// Grading used for dominant terms: deg r = deg d = 1, everything else 0.
  unsigned rd_degree() const { return exponent(Param::r) + exponent(Param::d); }

  bool is_one() const { return bits_ == 0; }

  ParamMonomial operator*(const ParamMonomial& o) const {
    ParamMonomial m;
    for (Param p : kAllParams) m.set(p, exponent(p) + o.exponent(p));
    return m;
  }

  std::uint64_t bits() const { return bits_; }

  friend bool operator==(const ParamMonomial&, const ParamMonomial&) = default;

 private:
  static unsigned shift(Param p) { return 8u * (6u - static_cast<unsigned>(p)); }

  std::uint64_t bits_ = 0;
};

/// Graded-lexicographic order, largest monomial first.
struct GradedLexDesc {
  bool operator()(const ParamMonomial& a, const ParamMonomial& b) const {
    const unsigned da = a.total_degree(), db = b.total_degree();
    if (da != db) return da > db;
    return a.bits() > b.bits();
  }
};

enum class Sign { negative = -1, zero = 0, positive = 1, indeterminate = 2 };

inline std::string_view to_string(Sign s) {
  switch (s) {
    case Sign::negative: return "negative";
    case Sign::zero: return "zero";
    case Sign::positive: return "positive";
    case Sign::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

/// Values for some of the parameters; used for exact evaluation.
using ParamAssignment = std::map<Param, Rational>;

class ParamScalar {
 public:
  using TermMap = std::map<ParamMonomial, Rational, GradedLexDesc>;

  ParamScalar() = default;
  ParamScalar(long value) : ParamScalar(Rational(value)) {}  // NOLINT(google-explicit-constructor)
  ParamScalar(const Rational& value) {                        // NOLINT(google-explicit-constructor)
    if (value != 0) terms_.emplace(ParamMonomial{}, value);
  }

  static ParamScalar var(Param p, unsigned exponent = 1) {
    ParamScalar s;
    s.terms_.emplace(ParamMonomial::of(p, exponent), Rational(1));
    return s;
  }

  static ParamScalar monomial(const ParamMonomial& m, const Rational& c) {
    ParamScalar s;
    if (c != 0) s.terms_.emplace(m, c);
    return s;
  }

  /// numerator / d^k, normalised.
  static ParamScalar fraction(ParamScalar numerator, unsigned d_power) {
    if (numerator.den_d_ != 0) throw DomainError("fraction: numerator must be a polynomial");
    numerator.den_d_ = d_power;
    numerator.normalize();
    return numerator;
  }

  const TermMap& terms() const { return terms_; }
  unsigned denominator_d_power() const { return den_d_; }
  bool is_polynomial() const { return den_d_ == 0; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  bool is_constant() const { return den_d_ == 0 && (terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one())); }

  Rational constant_value() const {
    if (!is_constant()) throw DomainError("scalar is not a constant");
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
  }

  /// The numerator polynomial (denominator dropped).
  ParamScalar numerator() const {
    ParamScalar s = *this;
    s.den_d_ = 0;
    return s;
  }

  ParamScalar& operator+=(const ParamScalar& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return *this = o;
    if (den_d_ == o.den_d_) {
      accumulate(terms_, o.terms_, ParamMonomial{});
    } else if (den_d_ > o.den_d_) {
      accumulate(terms_, o.terms_, ParamMonomial::of(Param::d, den_d_ - o.den_d_));
    } else {
      TermMap lifted;
      accumulate(lifted, terms_, ParamMonomial::of(Param::d, o.den_d_ - den_d_));
      accumulate(lifted, o.terms_, ParamMonomial{});
      terms_ = std::move(lifted);
      den_d_ = o.den_d_;
    }
    normalize();
    return *this;
  }

  ParamScalar& operator-=(const ParamScalar& o) { return *this += -o; }

  ParamScalar operator-() const {
    ParamScalar s = *this;
    for (auto& [m, c] : s.terms_) c = -c;
    return s;
  }

  friend ParamScalar operator+(ParamScalar a, const ParamScalar& b) { return a += b; }
  friend ParamScalar operator-(ParamScalar a, const ParamScalar& b) { return a -= b; }

  friend ParamScalar operator*(const ParamScalar& a, const ParamScalar& b) {
    ParamScalar out;
    if (a.terms_.empty() || b.terms_.empty()) return out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        auto [it, inserted] = out.terms_.try_emplace(ma * mb, ca * cb);
        if (!inserted) it->second += ca * cb;
      }
    out.den_d_ = a.den_d_ + b.den_d_;
    out.normalize();
    return out;
  }

  ParamScalar& operator*=(const ParamScalar& o) { return *this = *this * o; }

  friend bool operator==(const ParamScalar& a, const ParamScalar& b) {
    return a.den_d_ == b.den_d_ && a.terms_ == b.terms_;
  }

  ParamScalar pow(unsigned k) const {
    ParamScalar result(1), base = *this;
    while (k) {
      if (k & 1u) result *= base;
      k >>= 1u;
      if (k) base *= base;
    }
    return result;
  }

  /// Highest exponent of p among the numerator terms.
  unsigned degree(Param p) const {
    unsigned deg = 0;
    for (const auto& [m, c] : terms_) deg = std::max(deg, m.exponent(p));
    return deg;
  }

  /// Largest (r,d)-grade, numerator grade minus the d-power of the denominator.
  std::optional<int> rd_degree() const {
    std::optional<int> best;
    for (const auto& [m, c] : terms_) {
      const int g = static_cast<int>(m.rd_degree()) - static_cast<int>(den_d_);
      if (!best || g > *best) best = g;
    }
    return best;
  }

  /// Sum of all terms of maximal (r,d)-grade; ties are all kept.
  ParamScalar dominant_term() const {
    ParamScalar out;
    const auto top = rd_degree();
    if (!top) return out;
    for (const auto& [m, c] : terms_)
      if (static_cast<int>(m.rd_degree()) - static_cast<int>(den_d_) == *top) out.terms_.emplace(m, c);
    out.den_d_ = den_d_;
    out.normalize();
    return out;
  }

  /// Replace eps by r / ((n+1) d).
  ParamScalar substitute_eps(int n) const {
    if (n < 1) throw DomainError("substitute_eps: n must be >= 1");
    if (den_d_ != 0) throw DomainError("substitute_eps: expects a polynomial");
    const unsigned max_e = degree(Param::eps);
    ParamScalar out;
    out.den_d_ = max_e;
    for (const auto& [m, c] : terms_) {
      const unsigned e = m.exponent(Param::eps);
      ParamMonomial mm = m;
      mm.set(Param::eps, 0);
      mm.set(Param::r, mm.exponent(Param::r) + e);
      mm.set(Param::d, mm.exponent(Param::d) + (max_e - e));
      const Rational coeff = c / jetsegre::pow(Rational(n + 1), e);
      auto [it, inserted] = out.terms_.try_emplace(mm, coeff);
      if (!inserted) it->second += coeff;
    }
    out.normalize();
    return out;
  }

  /// Polynomial substitution p := value. Substituting d requires a polynomial scalar.
  ParamScalar substitute(Param p, const ParamScalar& value) const {
    if (!value.is_polynomial()) throw DomainError("substitute: value must be a polynomial");
    if (p == Param::d && den_d_ != 0) throw DomainError("substitute: cannot substitute d under a d-denominator");
    ParamScalar out;
    std::vector<ParamScalar> powers{ParamScalar(1)};
    for (const auto& [m, c] : terms_) {
      const unsigned e = m.exponent(p);
      while (powers.size() <= e) powers.push_back(powers.back() * value);
      ParamMonomial rest = m;
      rest.set(p, 0);
      out += monomial(rest, c) * powers[e];
    }
    out.den_d_ += den_d_;
    out.normalize();
    return out;
  }

  /// Exact value at a point. Every parameter occurring must be assigned.
  Rational evaluate(const ParamAssignment& at) const {
    Rational total = 0;
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (Param p : kAllParams) {
        const unsigned e = m.exponent(p);
        if (e == 0) continue;
        auto it = at.find(p);
        if (it == at.end()) throw DomainError("evaluate: no value for parameter '" + std::string(name_of(p)) + "'");
        t *= jetsegre::pow(it->second, e);
      }
      total += t;
    }
    if (den_d_ != 0) {
      auto it = at.find(Param::d);
      if (it == at.end()) throw DomainError("evaluate: no value for parameter 'd'");
      if (it->second == 0) throw DomainError("evaluate: d = 0 in denominator");
      total /= jetsegre::pow(it->second, den_d_);
    }
    return total;
  }

  /// Coefficient of the monomial `pattern` restricted to the variables in
  /// `over`: collects the terms whose exponents on `over` equal the pattern's,
  /// with those variables removed.
  ParamScalar coefficient(const ParamMonomial& pattern, std::initializer_list<Param> over) const {
    ParamScalar out;
    for (const auto& [m, c] : terms_) {
      bool match = true;
      ParamMonomial rest = m;
      for (Param p : over) {
        if (m.exponent(p) != pattern.exponent(p)) {
          match = false;
          break;
        }
        rest.set(p, 0);
      }
      if (match) out.terms_.emplace(rest, c);
    }
    out.den_d_ = den_d_;
    out.normalize();
    return out;
  }

  /// Sign of the leading part under r >> d >> 1 (lexicographic in (deg r, deg d -
  /// den)), assuming every other parameter is positive. Indeterminate when the
  /// leading coefficient polynomial has mixed signs.
  Sign asymptotic_sign() const {
    if (terms_.empty()) return Sign::zero;
    std::optional<std::pair<int, int>> lead;
    for (const auto& [m, c] : terms_) {
      std::pair<int, int> key{static_cast<int>(m.exponent(Param::r)),
                              static_cast<int>(m.exponent(Param::d)) - static_cast<int>(den_d_)};
      if (!lead || key > *lead) lead = key;
    }
    int pos = 0, neg = 0;
    for (const auto& [m, c] : terms_) {
      std::pair<int, int> key{static_cast<int>(m.exponent(Param::r)),
                              static_cast<int>(m.exponent(Param::d)) - static_cast<int>(den_d_)};
      if (key != *lead) continue;
      (sgn(c) > 0 ? pos : neg)++;
    }
    if (pos && !neg) return Sign::positive;
    if (neg && !pos) return Sign::negative;
    return Sign::indeterminate;
  }

  std::string to_string() const;
  nlohmann::json to_json() const;

 private:
  static void accumulate(TermMap& into, const TermMap& from, const ParamMonomial& shift) {
    for (const auto& [m, c] : from) {
      auto [it, inserted] = into.try_emplace(m * shift, c);
      if (!inserted) it->second += c;
    }
  }

  void normalize() {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (it->second == 0)
        it = terms_.erase(it);
      else
        ++it;
    }
    if (terms_.empty()) {
      den_d_ = 0;
      return;
    }
    if (den_d_ == 0) return;
    unsigned common = den_d_;
    for (const auto& [m, c] : terms_) common = std::min(common, m.exponent(Param::d));
    if (common == 0) return;
    TermMap reduced;
    for (auto& [m, c] : terms_) {
      ParamMonomial mm = m;
      mm.set(Param::d, m.exponent(Param::d) - common);
      reduced.emplace(mm, std::move(c));
    }
    terms_ = std::move(reduced);
    den_d_ -= common;
  }

  TermMap terms_;
  unsigned den_d_ = 0;
};

namespace detail {

inline std::string monomial_text(const ParamMonomial& m) {
  std::string out;
  for (Param p : kAllParams) {
    const unsigned e = m.exponent(p);
    if (e == 0) continue;
    if (!out.empty()) out += '*';
    out += name_of(p);
    if (e > 1) out += '^' + std::to_string(e);
  }
  return out;
}

inline std::string polynomial_text(const ParamScalar::TermMap& terms) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms) {
    const bool negative = sgn(c) < 0;
    const Rational mag = abs(c);
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    if (m.is_one()) {
      out += jetsegre::to_string(mag);
    } else if (mag == 1) {
      out += monomial_text(m);
    } else {
      out += jetsegre::to_string(mag) + "*" + monomial_text(m);
    }
  }
  return out;
}

inline nlohmann::json terms_json(const ParamScalar::TermMap& terms) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [m, c] : terms) {
    nlohmann::json exps = nlohmann::json::object();
    for (Param p : kAllParams)
      if (m.exponent(p)) exps[std::string(name_of(p))] = m.exponent(p);
    arr.push_back({{"coeff", jetsegre::to_string(c)}, {"exps", exps}});
  }
  return arr;
}

}  // namespace detail

/// Canonical text: graded-lex term order, fixed variable order inside a term,
/// rationals as p/q. A d-denominator renders as "(num)/d^k".
inline std::string ParamScalar::to_string() const {
  const std::string num = detail::polynomial_text(terms_);
  if (den_d_ == 0) return num;
  return "(" + num + ")/d" + (den_d_ > 1 ? "^" + std::to_string(den_d_) : std::string());
}

/// Polynomials render as [{coeff, exps}, ...]; rational scalars as
/// {"numerator": [...], "denominator": [...]}.
inline nlohmann::json ParamScalar::to_json() const {
  if (den_d_ == 0) return detail::terms_json(terms_);
  ParamScalar::TermMap den;
  den.emplace(ParamMonomial::of(Param::d, den_d_), Rational(1));
  return {{"numerator", detail::terms_json(terms_)}, {"denominator", detail::terms_json(den)}};
}

inline std::string to_string(const ParamScalar& s) { return s.to_string(); }

}  // namespace jetsegre
