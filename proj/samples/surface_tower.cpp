// Walks through the surface case: Segre classes on X, one top intersection,
// and the Morse difference on X_1 with eps = r/(3d).

#include <iostream>

#include <jetsegre/expr.hpp>
#include <jetsegre/positivity.hpp>
#include <jetsegre/tower.hpp>

int main() {
  using namespace jetsegre;
  const TowerContext ctx(2, 1);

  for (int i = 0; i <= ctx.dimension(0); ++i) std::cout << "s_" << i << "(F_0) = " << ctx.s(i, 0).to_string() << "\n";

  const TowerContext base(2, 0);
  std::cout << "s_1(F_0)^3 = " << base.top_intersection(base.s(1, 0).pow(3)).to_string() << "\n";

  const ChowClass A = eval("a1 + (2+x)*a - eps*x*b", ctx);
  const ChowClass B = eval("(2+x)*a", ctx);
  MorseOptions opts;
  opts.sample = ParamAssignment{{Param::r, 1000}, {Param::d, 10}, {Param::chi, 2}, {Param::x, 1}};
  std::cout << morse_certificate(A, B, ctx, opts).to_text();
}
