// Evaluate the Au permittivity on both frequency axes and print a short
// table: the real-axis loss peaks at the interband resonances while the
// imaginary-axis response decays monotonically.

#include <cstdio>

#include "casimir/models.hpp"

int main() {
  using namespace casimir;
  const auto gold = models::gold_default();

  std::printf("%10s %14s %14s %14s\n", "omega/eV", "eps'", "eps''", "eps(i xi)");
  for (double w = 0.5; w <= 64.0; w *= 2.0) {
    const auto e = models::eval_complex(gold, w);
    std::printf("%10.3f %14.6f %14.6f %14.6f\n", w, e.real(), e.imag(),
                models::eval_imag_axis(gold, w));
  }
  return 0;
}
