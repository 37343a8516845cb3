#pragma once

#include <string>
#include <vector>

#include "chow_class.hpp"
#include "errors.hpp"
#include "param_scalar.hpp"
#include "segre.hpp"

namespace jetsegre {

/// The jet tower X_0 <- X_1 <- ... <- X_depth over a family of hypersurfaces
/// of relative dimension n, with its Segre table built at construction.
/// Immutable afterwards; safe to query from several threads.
class TowerContext {
 public:
  TowerContext(int n, int depth) : n_(n), depth_(depth), segre_(check_args(n, depth)) {
    for (int k = 1; k <= depth; ++k) segre_.append_row(segre_row_next(segre_, k));
  }

  int n() const { return n_; }
  int depth() const { return depth_; }
  int dimension(int level) const { return tower_dimension(n_, level); }
  const SegreTable& segre() const { return segre_; }

  /// s_i(F_level).
  ChowClass s(int i, int level) const { return segre_.s(i, level); }

  ChowClass zero(int level) const { return ChowClass::zero(n_, checked(level)); }
  ChowClass one(int level) const { return ChowClass::one(n_, checked(level)); }
  ChowClass beta(int level) const { return ChowClass::generator(n_, checked(level), Generator::beta()); }
  ChowClass alpha(int level) const { return ChowClass::generator(n_, checked(level), Generator::alpha()); }
  ChowClass alpha_k(int j, int level) const {
    if (j < 1 || j > level) throw DomainError("alpha_" + std::to_string(j) + " does not exist on level " + std::to_string(level));
    return ChowClass::generator(n_, checked(level), Generator::alpha_k(j));
  }

  /// c_1 of O_{X_k}(lambda, d; m_1..m_k), k = |m|.
  ChowClass class_of(const BundleWeights& w) const {
    if (w.level() > depth_)
      throw DomainError("class_of: weight vector of length " + std::to_string(w.level()) + " exceeds tower depth " + std::to_string(depth_));
    return first_chern_class(w, n_);
  }

  /// pi_* from level j to level j-1: (pullback part) * alpha_j^e maps to
  /// (pullback part) * s_{e-n}(F_{j-1}).
  ChowClass pushforward_once(const ChowClass& c) const {
    check_owned(c);
    const int j = c.level();
    if (j == 0) throw DomainError("pushforward_once: level 0 has nothing below it");
    const Generator top = Generator::alpha_k(j);
    ChowClass out(n_, j - 1);
    for (const auto& [m, coeff] : c.terms()) {
      const int i = static_cast<int>(m.exponent(top)) - n_;
      if (i < 0 || i > dimension(j - 1)) continue;
      ChowMonomial base = m;
      base.set(top, 0);
      const ChowClass& seg = segre_.row(j - 1)[static_cast<std::size_t>(i)];
      for (const auto& [sm, sc] : seg.terms()) {
        const ChowMonomial prod = base * sm;
        if (prod.vanishes(n_, j - 1)) continue;
        out.add_term(prod, coeff * sc);
      }
    }
    return out;
  }

  /// Pushes c all the way down to level 0.
  ChowClass pushforward_to_base(ChowClass c) const {
    while (c.level() > 0) c = pushforward_once(c);
    return c;
  }

  /// Degree of a top-dimensional class: push to X and use
  /// alpha^{n+1} = r, alpha^n beta = d.
  ParamScalar top_intersection(const ChowClass& c) const {
    check_owned(c);
    if (!c.is_homogeneous_of_degree(dimension(c.level())))
      throw DomainError("top_intersection: class is not homogeneous of degree dim X_" + std::to_string(c.level()) + " = " +
                        std::to_string(dimension(c.level())));
    const ChowClass base = pushforward_to_base(c);
    ParamScalar out;
    out += base.coefficient(ChowMonomial::of(Generator::alpha(), static_cast<unsigned>(n_ + 1))) * ParamScalar::var(Param::r);
    ChowMonomial ab = ChowMonomial::of(Generator::alpha(), static_cast<unsigned>(n_));
    ab.set(Generator::beta(), 1);
    out += base.coefficient(ab) * ParamScalar::var(Param::d);
    return out;
  }

  /// Class of the forbidden divisor D_k on level k: alpha_1 - chi*beta for
  /// k = 1 (c_1(pi^* T_B) = -chi*beta), alpha_k - alpha_{k-1} above.
  ChowClass divisor_class(int k) const {
    if (k < 1 || k > depth_) throw DomainError("divisor_class: k must be in 1.." + std::to_string(depth_));
    if (k == 1) return alpha_k(1, 1) - ParamScalar::var(Param::chi) * beta(1);
    return alpha_k(k, k) - alpha_k(k - 1, k);
  }

 private:
  static int check_args(int n, int depth) {
    if (n < 1) throw DomainError("TowerContext: n must be >= 1");
    if (depth < 0 || depth > kMaxDepth) throw DomainError("TowerContext: depth must be in 0.." + std::to_string(kMaxDepth));
    return n;
  }

  int checked(int level) const {
    if (level < 0 || level > depth_) throw DomainError("level " + std::to_string(level) + " outside tower 0.." + std::to_string(depth_));
    return level;
  }

  void check_owned(const ChowClass& c) const {
    if (c.n() != n_) throw DomainError("class belongs to a tower with different n");
    checked(c.level());
  }

  int n_;
  int depth_;
  SegreTable segre_;
};

}  // namespace jetsegre
