#pragma once

// Graded classes on a level of the jet tower X_0 = X, X_1, ..., X_k.
//
// Generators: beta (pullback of the point class of the base curve), alpha
// (pullback of the hyperplane class of P^{n+1}) and alpha_1..alpha_level
// (tautological classes O_{X_j}(1)). A class is a sparse sum of monomials in
// these generators with ParamScalar coefficients.
//
// Relations applied eagerly:
//   beta^2 = 0;
//   a monomial whose degree in the generators pulled back from level i
//   (beta, alpha, alpha_1..alpha_i) exceeds dim X_i = (i+1)n+1 vanishes.
// The i = 0 case gives alpha^{n+2} = 0, the i = level case is the usual
// truncation above the dimension. Powers of alpha_j are otherwise left alone:
// they are only reduced by pushing forward.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "param_scalar.hpp"

namespace jetsegre {

inline constexpr int kMaxDepth = 9;
inline constexpr std::size_t kMaxGenerators = kMaxDepth + 2;

/// Index of a generator inside a monomial: 0 = beta, 1 = alpha, 1 + j = alpha_j.
struct Generator {
  int index;

  static constexpr Generator beta() { return {0}; }
  static constexpr Generator alpha() { return {1}; }
  static constexpr Generator alpha_k(int j) { return {1 + j}; }

  /// Lowest tower level on which the generator lives.
  int level() const { return index <= 1 ? 0 : index - 1; }

  std::string name() const {
    if (index == 0) return "b";
    if (index == 1) return "a";
    return "a" + std::to_string(index - 1);
  }

  friend bool operator==(Generator, Generator) = default;
};

inline int tower_dimension(int n, int level) { return (level + 1) * n + 1; }

class ChowMonomial {
 public:
  ChowMonomial() = default;

  static ChowMonomial of(Generator g, unsigned exponent = 1) {
    ChowMonomial m;
    m.set(g, exponent);
    return m;
  }

  unsigned exponent(Generator g) const { return e_[static_cast<std::size_t>(g.index)]; }
  unsigned exponent(int index) const { return e_[static_cast<std::size_t>(index)]; }

  void set(Generator g, unsigned exponent) {
    if (exponent > 0xffu) throw DomainError("generator exponent overflow");
    e_[static_cast<std::size_t>(g.index)] = static_cast<std::uint8_t>(exponent);
  }

  unsigned degree() const {
    unsigned t = 0;
    for (auto v : e_) t += v;
    return t;
  }

  /// Highest generator index with a nonzero exponent plus one.
  int support() const {
    for (int i = static_cast<int>(kMaxGenerators) - 1; i >= 0; --i)
      if (e_[static_cast<std::size_t>(i)]) return i + 1;
    return 0;
  }

  ChowMonomial operator*(const ChowMonomial& o) const {
    ChowMonomial m;
    for (std::size_t i = 0; i < kMaxGenerators; ++i) {
      const unsigned v = unsigned{e_[i]} + o.e_[i];
      if (v > 0xffu) throw DomainError("generator exponent overflow");
      m.e_[i] = static_cast<std::uint8_t>(v);
    }
    return m;
  }

  /// True when the monomial is zero in the Chow ring of the given level.
  bool vanishes(int n, int level) const {
    if (e_[0] > 1) return true;
    unsigned prefix = unsigned{e_[0]} + e_[1];
    if (prefix > static_cast<unsigned>(tower_dimension(n, 0))) return true;
    for (int i = 1; i <= level; ++i) {
      prefix += e_[static_cast<std::size_t>(1 + i)];
      if (prefix > static_cast<unsigned>(tower_dimension(n, i))) return true;
    }
    return false;
  }

  std::string to_string() const {
    std::string out;
    // alpha_k first (top of the tower), then down to alpha and beta
    for (int i = static_cast<int>(kMaxGenerators) - 1; i >= 0; --i) {
      const unsigned e = e_[static_cast<std::size_t>(i)];
      if (!e) continue;
      if (!out.empty()) out += '*';
      out += Generator{i}.name();
      if (e > 1) out += '^' + std::to_string(e);
    }
    return out;
  }

  /// Graded, then lexicographic from the top generator down.
  friend bool operator<(const ChowMonomial& a, const ChowMonomial& b) {
    const unsigned da = a.degree(), db = b.degree();
    if (da != db) return da > db;
    for (int i = static_cast<int>(kMaxGenerators) - 1; i >= 0; --i) {
      const auto ea = a.e_[static_cast<std::size_t>(i)], eb = b.e_[static_cast<std::size_t>(i)];
      if (ea != eb) return ea > eb;
    }
    return false;
  }
  friend bool operator==(const ChowMonomial&, const ChowMonomial&) = default;

 private:
  std::array<std::uint8_t, kMaxGenerators> e_{};
};

class ChowClass {
 public:
  using TermMap = std::map<ChowMonomial, ParamScalar>;

  ChowClass(int n, int level) : n_(n), level_(level) {
    if (n < 1) throw DomainError("relative dimension n must be >= 1");
    if (level < 0 || level > kMaxDepth) throw DomainError("tower level out of range 0.." + std::to_string(kMaxDepth));
  }

  static ChowClass zero(int n, int level) { return ChowClass(n, level); }

  static ChowClass constant(int n, int level, const ParamScalar& c) {
    ChowClass out(n, level);
    if (!c.is_zero()) out.terms_.emplace(ChowMonomial{}, c);
    return out;
  }

  static ChowClass one(int n, int level) { return constant(n, level, ParamScalar(1)); }

  static ChowClass generator(int n, int level, Generator g, const ParamScalar& c = ParamScalar(1)) {
    if (g.level() > level || g.index < 0) throw DomainError("generator " + g.name() + " does not exist on level " + std::to_string(level));
    ChowClass out(n, level);
    out.add_term(ChowMonomial::of(g), c);
    return out;
  }

  static ChowClass monomial(int n, int level, const ChowMonomial& m, const ParamScalar& c) {
    if (m.support() > level + 2) throw DomainError("monomial uses generators above level " + std::to_string(level));
    ChowClass out(n, level);
    out.add_term(m, c);
    return out;
  }

  int n() const { return n_; }
  int level() const { return level_; }
  int dimension() const { return tower_dimension(n_, level_); }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Adds c * m, applying the vanishing relations.
  void add_term(const ChowMonomial& m, const ParamScalar& c) {
    if (c.is_zero() || m.vanishes(n_, level_)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  ChowClass& operator+=(const ChowClass& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  ChowClass& operator-=(const ChowClass& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  ChowClass operator-() const {
    ChowClass out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
  }
  friend ChowClass operator+(ChowClass a, const ChowClass& b) { return a += b; }
  friend ChowClass operator-(ChowClass a, const ChowClass& b) { return a -= b; }

  friend ChowClass operator*(const ChowClass& a, const ChowClass& b) {
    a.check_compatible(b);
    ChowClass out(a.n_, a.level_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        const ChowMonomial m = ma * mb;
        if (m.vanishes(a.n_, a.level_)) continue;
        out.add_term(m, ca * cb);
      }
    return out;
  }
  ChowClass& operator*=(const ChowClass& o) { return *this = *this * o; }

  friend ChowClass operator*(const ParamScalar& s, const ChowClass& a) {
    ChowClass out(a.n_, a.level_);
    if (s.is_zero()) return out;
    for (const auto& [m, c] : a.terms_) out.add_term(m, s * c);
    return out;
  }

  ChowClass pow(unsigned k) const {
    ChowClass result = one(n_, level_);
    for (unsigned i = 0; i < k; ++i) {
      result *= *this;
      if (result.is_zero()) break;
    }
    return result;
  }

  /// The same class viewed on a higher level (pullback along the tower).
  ChowClass pullback(int to_level) const {
    if (to_level < level_) throw DomainError("pullback: target level below source level");
    ChowClass out(n_, to_level);
    for (const auto& [m, c] : terms_) out.add_term(m, c);
    return out;
  }

  /// Degree of the class when homogeneous; -1 for zero; throws otherwise.
  int homogeneous_degree() const {
    int deg = -1;
    for (const auto& [m, c] : terms_) {
      const int dm = static_cast<int>(m.degree());
      if (deg == -1)
        deg = dm;
      else if (deg != dm)
        throw DomainError("class is not homogeneous");
    }
    return deg;
  }

  bool is_homogeneous_of_degree(int deg) const {
    for (const auto& [m, c] : terms_)
      if (static_cast<int>(m.degree()) != deg) return false;
    return true;
  }

  /// Degree-`deg` component.
  ChowClass component(int deg) const {
    ChowClass out(n_, level_);
    for (const auto& [m, c] : terms_)
      if (static_cast<int>(m.degree()) == deg) out.terms_.emplace(m, c);
    return out;
  }

  /// Coefficient of a generator monomial.
  ParamScalar coefficient(const ChowMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? ParamScalar() : it->second;
  }

  /// Applies f to every coefficient.
  template <class F>
  ChowClass map_coefficients(F&& f) const {
    ChowClass out(n_, level_);
    for (const auto& [m, c] : terms_) out.add_term(m, f(c));
    return out;
  }

  friend bool operator==(const ChowClass& a, const ChowClass& b) {
    return a.n_ == b.n_ && a.level_ == b.level_ && a.terms_ == b.terms_;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      std::string coeff = c.to_string();
      const bool single = c.size() == 1 && c.is_polynomial();
      bool negative = false;
      if (single && coeff.front() == '-') {
        negative = true;
        coeff.erase(0, 1);
      }
      out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
      first = false;
      if (m.degree() == 0) {
        out += single ? coeff : "(" + coeff + ")";
      } else if (coeff == "1") {
        out += m.to_string();
      } else {
        out += (single ? coeff : "(" + coeff + ")") + "*" + m.to_string();
      }
    }
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [m, c] : terms_) {
      nlohmann::json gens = nlohmann::json::object();
      for (int i = 0; i < static_cast<int>(kMaxGenerators); ++i)
        if (m.exponent(i)) gens[Generator{i}.name()] = m.exponent(i);
      arr.push_back({{"coeff", c.to_json()}, {"gens", gens}});
    }
    return {{"n", n_}, {"level", level_}, {"terms", arr}};
  }

 private:
  void check_compatible(const ChowClass& o) const {
    if (o.n_ != n_) throw DomainError("classes belong to towers with different n");
    if (o.level_ != level_)
      throw DomainError("level mismatch: " + std::to_string(level_) + " vs " + std::to_string(o.level_));
  }

  int n_;
  int level_;
  TermMap terms_;
};

/// Line bundle O_{X_k}(lambda, d; m_1, ..., m_k). Weights may be symbolic
/// (e.g. lambda = -eps*x).
struct BundleWeights {
  ParamScalar lambda_part;
  ParamScalar d_part;
  std::vector<ParamScalar> m;

  int level() const { return static_cast<int>(m.size()); }

  /// lambda + d + sum m_j.
  ParamScalar total() const {
    ParamScalar t = lambda_part + d_part;
    for (const auto& v : m) t += v;
    return t;
  }

  friend bool operator==(const BundleWeights&, const BundleWeights&) = default;

  std::string to_string() const {
    std::string out = "(" + lambda_part.to_string() + ", " + d_part.to_string() + ";";
    for (std::size_t i = 0; i < m.size(); ++i) out += (i ? ", " : " ") + m[i].to_string();
    return out + ")";
  }
};

/// First Chern class lambda*beta + d*alpha + sum m_j alpha_j on level |m|.
inline ChowClass first_chern_class(const BundleWeights& w, int n) {
  const int level = w.level();
  ChowClass c(n, level);
  c.add_term(ChowMonomial::of(Generator::beta()), w.lambda_part);
  c.add_term(ChowMonomial::of(Generator::alpha()), w.d_part);
  for (int j = 1; j <= level; ++j) c.add_term(ChowMonomial::of(Generator::alpha_k(j)), w.m[static_cast<std::size_t>(j - 1)]);
  return c;
}

}  // namespace jetsegre
