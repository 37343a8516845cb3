#pragma once

#include <random>

#include <jetsegre/chow_class.hpp>
#include <jetsegre/param_scalar.hpp>

namespace testsupport {

using namespace jetsegre;

inline ParamScalar P(Param p, unsigned e = 1) { return ParamScalar::var(p, e); }

/// Small random polynomial in r, d, chi, x.
inline ParamScalar random_scalar(std::mt19937& rng, int terms = 3, bool positive = false) {
  std::uniform_int_distribution<int> coef(positive ? 1 : -5, 5), ex(0, 2), var(0, 3);
  const Param vars[] = {Param::r, Param::d, Param::chi, Param::x};
  ParamScalar out;
  for (int t = 0; t < terms; ++t) {
    int c = coef(rng);
    if (c == 0) c = 1;
    ParamMonomial m;
    for (int v = 0; v < 2; ++v) {
      const Param p = vars[var(rng)];
      m.set(p, m.exponent(p) + static_cast<unsigned>(ex(rng)));
    }
    out += ParamScalar::monomial(m, Rational(c));
  }
  return out;
}

/// Random homogeneous class of degree `deg` on `level`, built from products of generators.
inline ChowClass random_class(std::mt19937& rng, int n, int level, int deg, int terms = 3) {
  std::uniform_int_distribution<int> gen(0, level + 1), coef(-4, 4);
  ChowClass out(n, level);
  for (int t = 0; t < terms; ++t) {
    ChowClass m = ChowClass::constant(n, level, ParamScalar(coef(rng)) + (t % 2 ? P(Param::d) : P(Param::r)));
    for (int i = 0; i < deg; ++i) m *= ChowClass::generator(n, level, Generator{gen(rng)});
    out += m;
  }
  return out;
}

}  // namespace testsupport
