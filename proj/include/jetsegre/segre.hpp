#pragma once

// Segre classes along the jet tower.
//
//   s(F_0) = (1 + chi b)(1 + a)^{-(n+2)}(1 + d a + r b)
//   s_l(F_k) = sum_{a+b=l} L_{n+a}^{n+l} pi^* s_a(F_{k-1}) alpha_k^b
//
// with the alternating binomial sums L_e^f = sum_{i=0}^{f-e} (-1)^i C(e+i, e).

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "chow_class.hpp"
#include "errors.hpp"
#include "rational.hpp"

namespace jetsegre {

/// Exact binomial coefficient; 0 when b < 0 or b > a.
inline Integer binom(long a, long b) {
  if (b < 0 || a < 0 || b > a) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
  return out;
}

/// L_e^f straight from the alternating-sum definition.
inline Integer l_number(long e, long f) {
  if (e < 0 || f < 0 || e > f) throw DomainError("l_number: requires 0 <= e <= f");
  Integer sum = 0;
  for (long i = 0; i <= f - e; ++i) {
    if (i % 2 == 0)
      sum += binom(e + i, e);
    else
      sum -= binom(e + i, e);
  }
  return sum;
}

/// Table of L_e^f for 0 <= e <= f <= max_f, filled column by column with
/// L_{e+1}^{f+1} = L_e^f - L_{e+1}^f from L_e^e = 1 and L_0^f = (f+1) mod 2.
class LTable {
 public:
  explicit LTable(long max_f) : max_f_(max_f) {
    if (max_f < 0) throw DomainError("LTable: max_f must be >= 0");
    rows_.resize(static_cast<std::size_t>(max_f + 1));
    for (long f = 0; f <= max_f; ++f) {
      rows_[static_cast<std::size_t>(f)].resize(static_cast<std::size_t>(f + 1));
      rows_[static_cast<std::size_t>(f)][0] = (f % 2 == 0) ? 1 : 0;
      rows_[static_cast<std::size_t>(f)][static_cast<std::size_t>(f)] = 1;
    }
    for (long e = 0; e < max_f; ++e)
      for (long f = e + 1; f < max_f; ++f) at(e + 1, f + 1) = at(e, f) - at(e + 1, f);
  }

  long max_f() const { return max_f_; }

  const Integer& operator()(long e, long f) const {
    if (e < 0 || f < 0 || e > f || f > max_f_) throw DomainError("LTable: index out of range");
    return rows_[static_cast<std::size_t>(f)][static_cast<std::size_t>(e)];
  }

  std::size_t entry_count() const { return static_cast<std::size_t>((max_f_ + 1) * (max_f_ + 2) / 2); }

  /// Rows f = 0..max_f, row f listing e = 0..f.
  const std::vector<std::vector<Integer>>& rows() const { return rows_; }

  std::string to_string() const {
    std::string out = "f\\e";
    for (long e = 0; e <= max_f_; ++e) out += "\t" + std::to_string(e);
    out += "\n";
    for (long f = 0; f <= max_f_; ++f) {
      out += std::to_string(f);
      for (const auto& v : rows_[static_cast<std::size_t>(f)]) out += "\t" + v.get_str();
      out += "\n";
    }
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (long f = 0; f <= max_f_; ++f) {
      nlohmann::json row = nlohmann::json::object();
      for (long e = 0; e <= f; ++e) row[std::to_string(e)] = (*this)(e, f).get_str();
      j[std::to_string(f)] = row;
    }
    return j;
  }

 private:
  Integer& at(long e, long f) { return rows_[static_cast<std::size_t>(f)][static_cast<std::size_t>(e)]; }

  long max_f_;
  std::vector<std::vector<Integer>> rows_;
};

/// A total class 1 + c_1 + c_2 + ... stored by degree.
using GradedList = std::vector<ChowClass>;

/// Product of two graded lists truncated at the dimension of their level.
inline GradedList graded_product(const GradedList& a, const GradedList& b) {
  if (a.empty() || b.empty()) throw DomainError("graded_product: empty list");
  const int n = a.front().n(), level = a.front().level();
  const int dim = tower_dimension(n, level);
  GradedList out;
  out.reserve(static_cast<std::size_t>(dim + 1));
  for (int i = 0; i <= dim; ++i) {
    ChowClass sum(n, level);
    for (int j = 0; j <= i; ++j) {
      if (j >= static_cast<int>(a.size()) || i - j >= static_cast<int>(b.size())) continue;
      sum += a[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(i - j)];
    }
    out.push_back(std::move(sum));
  }
  return out;
}

/// s_i(E (x) L) = sum_j C(rank-1+i, i-j) s_j(E) c_1(L)^{i-j}.
inline GradedList segre_twist(const GradedList& s, int rank, const ChowClass& c1) {
  if (rank < 1) throw DomainError("segre_twist: rank must be >= 1");
  if (s.empty()) throw DomainError("segre_twist: empty Segre list");
  for (const auto& cls : s)
    if (cls.level() != c1.level() || cls.n() != c1.n()) throw DomainError("segre_twist: classes live on different levels");
  const int n = c1.n(), level = c1.level();
  std::vector<ChowClass> c1_powers{ChowClass::one(n, level)};
  GradedList out;
  for (int i = 0; i < static_cast<int>(s.size()); ++i) {
    while (static_cast<int>(c1_powers.size()) <= i) c1_powers.push_back(c1_powers.back() * c1);
    ChowClass si(n, level);
    for (int j = 0; j <= i; ++j) {
      const Integer coeff = binom(rank - 1 + i, i - j);
      if (coeff == 0) continue;
      si += ParamScalar(Rational(coeff)) * (s[static_cast<std::size_t>(j)] * c1_powers[static_cast<std::size_t>(i - j)]);
    }
    out.push_back(std::move(si));
  }
  return out;
}

/// Segre classes s_0..s_{n+1} of F_0 = Omega_X on level 0.
inline GradedList segre_F0(int n) {
  if (n < 1) throw DomainError("segre_F0: n must be >= 1");
  const int dim = tower_dimension(n, 0);
  const auto alpha = ChowClass::generator(n, 0, Generator::alpha());
  const auto beta = ChowClass::generator(n, 0, Generator::beta());
  const auto r = ParamScalar::var(Param::r), d = ParamScalar::var(Param::d), chi = ParamScalar::var(Param::chi);

  GradedList base_factor(static_cast<std::size_t>(dim + 1), ChowClass(n, 0));
  base_factor[0] = ChowClass::one(n, 0);
  base_factor[1] = chi * beta;

  // (1 + a)^{-(n+2)} = sum_p (-1)^p C(n+1+p, p) a^p
  GradedList hyperplane_factor;
  ChowClass alpha_power = ChowClass::one(n, 0);
  for (int p = 0; p <= dim; ++p) {
    Integer c = binom(n + 1 + p, p);
    if (p % 2) c = -c;
    hyperplane_factor.push_back(ParamScalar(Rational(c)) * alpha_power);
    alpha_power *= alpha;
  }

  GradedList defining_factor(static_cast<std::size_t>(dim + 1), ChowClass(n, 0));
  defining_factor[0] = ChowClass::one(n, 0);
  defining_factor[1] = d * alpha + r * beta;

  return graded_product(graded_product(base_factor, hyperplane_factor), defining_factor);
}

/// s(F_j) for j = 0..depth, row j living on level j.
class SegreTable {
 public:
  explicit SegreTable(int n) : n_(n) { rows_.push_back(segre_F0(n)); }

  int n() const { return n_; }
  /// Highest level with a populated row.
  int depth() const { return static_cast<int>(rows_.size()) - 1; }

  const GradedList& row(int level) const {
    if (level < 0 || level > depth()) throw DomainError("SegreTable: level " + std::to_string(level) + " not populated");
    return rows_[static_cast<std::size_t>(level)];
  }

  /// s_i(F_level); zero for i < 0 or i > dim X_level.
  ChowClass s(int i, int level) const {
    const auto& r = row(level);
    if (i < 0 || i >= static_cast<int>(r.size())) return ChowClass::zero(n_, level);
    return r[static_cast<std::size_t>(i)];
  }

  void append_row(GradedList row) {
    if (row.empty() || row.front().level() != depth() + 1) throw DomainError("SegreTable: row level mismatch");
    rows_.push_back(std::move(row));
  }

 private:
  int n_;
  std::vector<GradedList> rows_;
};

/// Row k of the table from row k-1 via the L-number recursion.
inline GradedList segre_row_next(const SegreTable& table, int k) {
  if (k < 1 || k > kMaxDepth) throw DomainError("segre_next: level " + std::to_string(k) + " outside 1.." + std::to_string(kMaxDepth));
  if (k != table.depth() + 1) throw DomainError("segre_next: table must hold rows 0..k-1");
  const int n = table.n();
  const int dim = tower_dimension(n, k);
  const GradedList& prev = table.row(k - 1);
  const LTable lnum(n + dim);

  std::vector<ChowClass> pulled;
  pulled.reserve(prev.size());
  for (const auto& c : prev) pulled.push_back(c.pullback(k));

  const auto alpha_k = ChowClass::generator(n, k, Generator::alpha_k(k));
  std::vector<ChowClass> alpha_powers{ChowClass::one(n, k)};
  for (int b = 1; b <= dim; ++b) alpha_powers.push_back(alpha_powers.back() * alpha_k);

  GradedList row;
  for (int l = 0; l <= dim; ++l) {
    ChowClass sl(n, k);
    for (int a = 0; a <= l && a < static_cast<int>(pulled.size()); ++a) {
      const Integer& coeff = lnum(n + a, n + l);
      if (coeff == 0) continue;
      sl += ParamScalar(Rational(coeff)) * (pulled[static_cast<std::size_t>(a)] * alpha_powers[static_cast<std::size_t>(l - a)]);
    }
    row.push_back(std::move(sl));
  }
  return row;
}

/// Returns a copy of the table with row k appended.
inline SegreTable segre_next(SegreTable table, int k) {
  table.append_row(segre_row_next(table, k));
  return table;
}

}  // namespace jetsegre
