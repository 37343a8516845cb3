#pragma once

// Differential algebra in jet variables. D = sum z_j^{(l+1)} d/dz_j^{(l)} acts
// on z_j^{(l)} by raising l, kills the parameters a_k, and raises the order of
// the opaque coefficient symbols A_k^{(i)}.

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "rational.hpp"
#include "segre.hpp"

namespace jetsegre {

struct JetVar {
  enum class Kind : int { z = 0, param = 1, coeff = 2 };
  Kind kind = Kind::z;
  int index = 0;  // j for z_j (0 is the plain z), alpha for a_alpha / A_alpha
  int order = 0;  // lambda for z, i for A; 0 for parameters

  static JetVar z(int order, int j = 0) { return {Kind::z, j, order}; }
  static JetVar param(int alpha) { return {Kind::param, alpha, 0}; }
  static JetVar coeff(int alpha, int order = 0) { return {Kind::coeff, alpha, order}; }

  bool differentiable() const { return kind != Kind::param; }
  JetVar raised() const { return {kind, index, order + 1}; }

  friend auto operator<=>(const JetVar&, const JetVar&) = default;

  std::string name() const {
    std::string base;
    switch (kind) {
      case Kind::z: base = index == 0 ? "z" : "z" + std::to_string(index); break;
      case Kind::param: return "a" + std::to_string(index);
      case Kind::coeff: base = "A" + std::to_string(index); break;
    }
    if (order <= 3) return base + std::string(static_cast<std::size_t>(order), '\'');
    return base + "[" + std::to_string(order) + "]";
  }
};

/// Sorted (variable, exponent) pairs with positive exponents.
using JetMonomial = std::vector<std::pair<JetVar, unsigned>>;

inline JetMonomial jet_monomial_mul(const JetMonomial& a, const JetMonomial& b) {
  JetMonomial out;
  out.reserve(a.size() + b.size());
  auto i = a.begin(), j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      out.push_back(*j++);
    } else {
      out.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return out;
}

class JetPoly {
 public:
  using TermMap = std::map<JetMonomial, Rational>;

  JetPoly() = default;
  JetPoly(long c) : JetPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  JetPoly(const Rational& c) {               // NOLINT(google-explicit-constructor)
    if (c != 0) terms_.emplace(JetMonomial{}, c);
  }
  JetPoly(const JetVar& v) { terms_.emplace(JetMonomial{{v, 1u}}, Rational(1)); }  // NOLINT(google-explicit-constructor)

  static JetPoly monomial(JetMonomial m, const Rational& c) {
    JetPoly p;
    if (c != 0) p.terms_.emplace(std::move(m), c);
    return p;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Highest derivative order among the differentiable variables; -1 if none.
  int max_order() const {
    int best = -1;
    for (const auto& [m, c] : terms_)
      for (const auto& [v, e] : m)
        if (v.differentiable()) best = std::max(best, v.order);
    return best;
  }

  bool contains(const JetVar& v) const {
    for (const auto& [m, c] : terms_)
      for (const auto& [w, e] : m)
        if (w == v) return true;
    return false;
  }

  std::vector<JetVar> variables() const {
    std::vector<JetVar> out;
    for (const auto& [m, c] : terms_)
      for (const auto& [v, e] : m) out.push_back(v);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  JetPoly& operator+=(const JetPoly& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  JetPoly& operator-=(const JetPoly& o) {
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  friend JetPoly operator+(JetPoly a, const JetPoly& b) { return a += b; }
  friend JetPoly operator-(JetPoly a, const JetPoly& b) { return a -= b; }
  JetPoly operator-() const {
    JetPoly out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
  }

  friend JetPoly operator*(const JetPoly& a, const JetPoly& b) {
    JetPoly out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add(jet_monomial_mul(ma, mb), ca * cb);
    return out;
  }
  JetPoly& operator*=(const JetPoly& o) { return *this = *this * o; }

  JetPoly pow(unsigned k) const {
    JetPoly out(1), base = *this;
    while (k) {
      if (k & 1u) out *= base;
      k >>= 1u;
      if (k) base *= base;
    }
    return out;
  }

  friend bool operator==(const JetPoly&, const JetPoly&) = default;

  /// Partial derivative with respect to one variable.
  JetPoly partial(const JetVar& v) const {
    JetPoly out;
    for (const auto& [m, c] : terms_) {
      auto it = std::find_if(m.begin(), m.end(), [&](const auto& p) { return p.first == v; });
      if (it == m.end()) continue;
      JetMonomial rest = m;
      auto& slot = rest[static_cast<std::size_t>(it - m.begin())];
      const unsigned e = slot.second;
      if (--slot.second == 0) rest.erase(rest.begin() + (it - m.begin()));
      out.add(rest, c * e);
    }
    return out;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    // Highest total degree first, then the map order.
    std::vector<std::pair<const JetMonomial*, const Rational*>> order;
    for (const auto& [m, c] : terms_) order.emplace_back(&m, &c);
    auto degree = [](const JetMonomial& m) {
      unsigned s = 0;
      for (const auto& [v, e] : m) s += e;
      return s;
    };
    std::stable_sort(order.begin(), order.end(), [&](const auto& a, const auto& b) { return degree(*a.first) > degree(*b.first); });
    for (const auto& [mp, cp] : order) {
      const Rational& c = *cp;
      const bool neg = c < 0;
      const Rational mag = neg ? Rational(-c) : c;
      if (first)
        out += neg ? "-" : "";
      else
        out += neg ? " - " : " + ";
      first = false;
      std::string mono;
      for (const auto& [v, e] : *mp) {
        if (!mono.empty()) mono += "*";
        mono += v.name();
        if (e > 1) mono += "^" + std::to_string(e);
      }
      if (mono.empty())
        out += jetsegre::to_string(mag);
      else if (mag == 1)
        out += mono;
      else
        out += jetsegre::to_string(mag) + "*" + mono;
    }
    return out;
  }

 private:
  void add(const JetMonomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }

  TermMap terms_;
};

/// The total-derivative operator with truncation cap: derivatives of order
/// above `cap` do not exist, so D cannot act on a variable of order `cap`.
class DerivationOp {
 public:
  explicit DerivationOp(int cap) : cap_(cap) {
    if (cap < 1) throw DomainError("DerivationOp: cap must be >= 1");
  }

  int cap() const { return cap_; }

  JetPoly operator()(const JetPoly& p) const {
    JetPoly out;
    for (const auto& [m, c] : p.terms()) {
      for (std::size_t i = 0; i < m.size(); ++i) {
        const auto& [v, e] = m[i];
        if (!v.differentiable()) continue;
        if (v.order >= cap_)
          throw DomainError("D: truncation overflow, " + v.name() + " has order " + std::to_string(v.order) + " = cap " + std::to_string(cap_));
        JetMonomial rest = m;
        if (--rest[i].second == 0) rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
        out += JetPoly::monomial(jet_monomial_mul(rest, JetMonomial{{v.raised(), 1u}}), c * e);
      }
    }
    return out;
  }

  /// D^k.
  JetPoly power(const JetPoly& p, int k) const {
    if (k < 0) throw DomainError("D^k: k must be >= 0");
    JetPoly out = p;
    for (int i = 0; i < k; ++i) out = (*this)(out);
    return out;
  }

 private:
  int cap_;
};

inline int default_cap(int kappa) { return kappa + 2; }

inline JetPoly apply_D(const JetPoly& p, int cap) { return DerivationOp(cap)(p); }

/// z^j as a JetPoly in the plain variable z.
inline JetPoly z_power(unsigned j) { return JetPoly(JetVar::z(0)).pow(j); }

/// Determinant by expansion along rows with memoised column subsets.
inline JetPoly determinant(const std::vector<std::vector<JetPoly>>& M) {
  const std::size_t n = M.size();
  if (n == 0) return JetPoly(1);
  for (const auto& row : M)
    if (row.size() != n) throw DomainError("determinant: matrix is not square");
  if (n > 20) throw DomainError("determinant: matrix too large");
  std::map<unsigned long, JetPoly> memo;
  // minor(mask): determinant of rows n - popcount(mask) .. n-1 against the columns in mask.
  auto minor = [&](auto&& self, unsigned long mask) -> JetPoly {
    if (mask == 0) return JetPoly(1);
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    const std::size_t row = n - static_cast<std::size_t>(__builtin_popcountl(mask));
    JetPoly sum;
    int sign = 1;
    for (std::size_t col = 0; col < n; ++col) {
      if (!(mask >> col & 1ul)) continue;
      const JetPoly& entry = M[row][col];
      if (!entry.is_zero()) {
        JetPoly term = entry * self(self, mask & ~(1ul << col));
        if (sign > 0)
          sum += term;
        else
          sum -= term;
      }
      sign = -sign;
    }
    memo.emplace(mask, sum);
    return sum;
  };
  return minor(minor, (1ul << n) - 1ul);
}

/// M[l][j] = D^l(z^j), 0 <= l, j <= kappa.
inline std::vector<std::vector<JetPoly>> wronskian_matrix(int kappa, int cap) {
  if (kappa < 1) throw DomainError("wronskian: kappa must be >= 1");
  if (kappa > cap) throw DomainError("wronskian: kappa exceeds truncation cap " + std::to_string(cap));
  const DerivationOp D(cap);
  std::vector<std::vector<JetPoly>> M(static_cast<std::size_t>(kappa + 1));
  for (int j = 0; j <= kappa; ++j) {
    JetPoly entry = z_power(static_cast<unsigned>(j));
    for (int l = 0; l <= kappa; ++l) {
      M[static_cast<std::size_t>(l)].push_back(entry);
      if (l < kappa) entry = D(entry);
    }
  }
  return M;
}

/// 1! 2! ... kappa! (z')^{kappa(kappa+1)/2}.
inline JetPoly wronskian_closed_form(int kappa) {
  Integer c = 1, f = 1;
  for (int i = 1; i <= kappa; ++i) {
    f *= i;
    c *= f;
  }
  return JetPoly(Rational(c)) * JetPoly(JetVar::z(1)).pow(static_cast<unsigned>(kappa * (kappa + 1) / 2));
}

struct WronskianResult {
  int kappa = 0;
  JetPoly determinant, closed_form;
  bool matches = false;
};

inline WronskianResult wronskian_det(int kappa, std::optional<int> cap = std::nullopt) {
  WronskianResult r;
  r.kappa = kappa;
  r.determinant = determinant(wronskian_matrix(kappa, cap.value_or(default_cap(kappa))));
  r.closed_form = wronskian_closed_form(kappa);
  r.matches = r.determinant == r.closed_form;
  return r;
}

/// T = sum_alpha A_alpha d/da_alpha + sum_{l <= kappa} P^{(l)} d/dz^{(l)} (plain z).
struct SpecialField {
  JetPoly P;
  std::vector<std::pair<int, JetPoly>> A;  // (alpha, A_alpha)
  int kappa = 1;
};

inline JetPoly apply_field(const SpecialField& T, const JetPoly& f, const DerivationOp& D) {
  JetPoly out;
  for (const auto& [alpha, A] : T.A) out += A * f.partial(JetVar::param(alpha));
  JetPoly P_l = T.P;
  for (int l = 0; l <= T.kappa; ++l) {
    out += P_l * f.partial(JetVar::z(l));
    if (l < T.kappa) P_l = D(P_l);
  }
  return out;
}

struct CommutatorCase {
  JetPoly test, lhs, rhs;
  bool ok = false;
};

struct CommutatorResult {
  int kappa = 0;
  std::vector<CommutatorCase> cases;
  bool all_ok() const {
    return std::all_of(cases.begin(), cases.end(), [](const CommutatorCase& c) { return c.ok; });
  }
};

/// Compares [T, D] f = T(Df) - D(Tf) with
/// -sum_alpha A_alpha' df/da_alpha - P^{(kappa+1)} df/dz^{(kappa)}
/// on every generator and on a few pseudo-random quadratics in them.
inline CommutatorResult commutator_check(const SpecialField& T, unsigned seed = 20240611u, int quadratics = 6) {
  if (T.kappa < 1) throw DomainError("commutator_check: kappa must be >= 1");
  const int cap = default_cap(T.kappa);
  auto check_shape = [&](const JetPoly& p, const char* what) {
    for (const auto& v : p.variables()) {
      const bool ok = (v.kind == JetVar::Kind::z && v.index == 0 && v.order == 0) || v.kind == JetVar::Kind::param ||
                      (v.kind == JetVar::Kind::coeff && v.order == 0);
      if (!ok) throw DomainError(std::string("commutator_check: ") + what + " may only involve z, a_k and A_k, found " + v.name());
    }
  };
  check_shape(T.P, "P");
  for (std::size_t i = 0; i < T.A.size(); ++i) {
    check_shape(T.A[i].second, "A_alpha");
    for (std::size_t j = 0; j < i; ++j)
      if (T.A[j].first == T.A[i].first) throw DomainError("commutator_check: repeated alpha index");
  }

  const DerivationOp D(cap);
  JetPoly P_top = D.power(T.P, T.kappa + 1);
  auto rhs_of = [&](const JetPoly& f) {
    JetPoly out;
    for (const auto& [alpha, A] : T.A) out -= D(A) * f.partial(JetVar::param(alpha));
    out -= P_top * f.partial(JetVar::z(T.kappa));
    return out;
  };

  std::vector<JetPoly> gens;
  for (int l = 0; l <= T.kappa; ++l) gens.emplace_back(JetVar::z(l));
  for (const auto& [alpha, A] : T.A) gens.emplace_back(JetVar::param(alpha));

  std::vector<JetPoly> tests = gens;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int q = 0; q < quadratics; ++q) {
    JetPoly f = gens[pick(rng)] * gens[pick(rng)];
    f += JetPoly(coef(rng)) * gens[pick(rng)];
    f += JetPoly(coef(rng));
    tests.push_back(f);
  }

  CommutatorResult res;
  res.kappa = T.kappa;
  for (const auto& f : tests) {
    CommutatorCase c;
    c.test = f;
    c.lhs = apply_field(T, D(f), D) - D(apply_field(T, f, D));
    c.rhs = rhs_of(f);
    c.ok = c.lhs == c.rhs;
    res.cases.push_back(std::move(c));
  }
  return res;
}

/// sum_alpha A_alpha^{(i)} D^l(z^alpha) over the exponents in `alphas`.
inline JetPoly coefficient_sum(const std::vector<int>& alphas, int i, int l, const DerivationOp& D) {
  JetPoly out;
  for (int a : alphas) out += JetPoly(JetVar::coeff(a, i)) * D.power(z_power(static_cast<unsigned>(a)), l);
  return out;
}

struct IdentityCheck {
  JetPoly lhs, rhs;
  bool ok = false;
};

/// D^{l+1}(sum A z^a) = sum A (z^a)^{(l+1)} + sum A' (z^a)^{(l)} + sum_{k<l} D^{l-k}(sum A' (z^a)^{(k)}).
inline IdentityCheck leibniz_check(const std::vector<int>& alphas, int l) {
  if (l < 0 || l > 3) throw DomainError("leibniz_check: l must be in 0..3");
  if (alphas.empty()) throw DomainError("leibniz_check: empty exponent list");
  for (int a : alphas)
    if (a < 0) throw DomainError("leibniz_check: exponents must be >= 0");
  const DerivationOp D(l + 2);
  IdentityCheck c;
  c.lhs = D.power(coefficient_sum(alphas, 0, 0, D), l + 1);
  c.rhs = coefficient_sum(alphas, 0, l + 1, D) + coefficient_sum(alphas, 1, l, D);
  for (int k = 0; k < l; ++k) c.rhs += D.power(coefficient_sum(alphas, 1, k, D), l - k);
  c.ok = c.lhs == c.rhs;
  return c;
}

struct SystemsEquivalence {
  int max_l = 0;
  /// R_l: equations of the first system, E_i: of the second.
  std::vector<JetPoly> first, second;
  bool forward_ok = false;  // each R_l is a combination of D^m E_i
  bool reverse_ok = false;  // each E_l is recovered from the R's
};

/// First system: R_l = sum A (z^a)^{(l)} + D^l(P G), G = sum a_alpha d z^a / dz.
/// Second system: E_0 = sum A z^a + P G, E_i = sum A^{(i)} z^a.
/// Uses R_l = D^l E_0 - sum_{k=1}^{l} C(l,k) S(k, l-k) with
/// S(k, m) = sum_i (-1)^i C(m, i) D^{m-i} E_{k+i}.
inline SystemsEquivalence systems_equivalence_check(const JetPoly& P, const std::vector<int>& alphas, int max_l) {
  if (max_l < 0 || max_l > 3) throw DomainError("systems_equivalence_check: l must be in 0..3");
  if (alphas.empty()) throw DomainError("systems_equivalence_check: empty exponent list");
  if (P.max_order() > 0) throw DomainError("systems_equivalence_check: P must not involve derivatives");
  const DerivationOp D(max_l + 2);
  JetPoly G;
  for (int a : alphas)
    if (a > 0) G += JetPoly(Rational(a)) * JetPoly(JetVar::param(a)) * z_power(static_cast<unsigned>(a - 1));
  const JetPoly PG = P * G;

  SystemsEquivalence out;
  out.max_l = max_l;
  for (int l = 0; l <= max_l; ++l) out.first.push_back(coefficient_sum(alphas, 0, l, D) + D.power(PG, l));
  out.second.push_back(coefficient_sum(alphas, 0, 0, D) + PG);
  for (int i = 1; i <= max_l; ++i) out.second.push_back(coefficient_sum(alphas, i, 0, D));

  auto S = [&](const std::vector<JetPoly>& E, int k, int m) {
    JetPoly s;
    for (int i = 0; i <= m; ++i) {
      JetPoly t = JetPoly(Rational(binom(m, i))) * D.power(E[static_cast<std::size_t>(k + i)], m - i);
      if (i % 2) s -= t;
      else s += t;
    }
    return s;
  };

  out.forward_ok = true;
  for (int l = 0; l <= max_l; ++l) {
    JetPoly combo = D.power(out.second[0], l);
    for (int k = 1; k <= l; ++k) combo -= JetPoly(Rational(binom(l, k))) * S(out.second, k, l - k);
    out.forward_ok = out.forward_ok && combo == out.first[static_cast<std::size_t>(l)];
  }

  // Triangular inversion. E_l enters R_l with coefficient (-1)^l; solve for it
  // using only R's and the E_j (j < l) already recovered.
  std::vector<JetPoly> rec{out.first[0]};
  out.reverse_ok = rec[0] == out.second[0];
  for (int l = 1; l <= max_l; ++l) {
    std::vector<JetPoly> E = rec;
    E.emplace_back();  // E_l placeholder, contributes zero below
    JetPoly others = D.power(rec[0], l);
    for (int k = 1; k <= l; ++k) others -= JetPoly(Rational(binom(l, k))) * S(E, k, l - k);
    // R_l = others + (-1)^l E_l
    JetPoly El = out.first[static_cast<std::size_t>(l)] - others;
    if (l % 2) El = -El;
    rec.push_back(El);
    out.reverse_ok = out.reverse_ok && El == out.second[static_cast<std::size_t>(l)];
  }
  return out;
}

/// Pole-order constants for the vector fields on the universal family:
/// horizontal fields have poles of order <= kappa^2 + 2 kappa, the others are
/// holomorphic with values in O(kappa).
struct PoleOrders {
  int horizontal;
  int twist;
};

inline PoleOrders pole_orders(int kappa) {
  if (kappa < 1) throw DomainError("pole_orders: kappa must be >= 1");
  return {kappa * kappa + 2 * kappa, kappa};
}

}  // namespace jetsegre
