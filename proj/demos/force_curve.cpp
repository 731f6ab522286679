// Sphere-plate Casimir force for an Au-coated sphere of R = 95.65 um above
// an Au plate at room temperature, for two permittivity models.

#include <cstdio>

#include "casimir/lifshitz.hpp"

int main() {
  using namespace casimir;
  const auto gen = lifshitz::response_from_model(models::gold_default());
  const auto plasma = lifshitz::response_from_model(models::PurePlasma{9.0});
  const double R = 95650.0;

  std::printf("%8s %18s %18s\n", "a/nm", "generalized/pN", "plasma/pN");
  for (double a : {60.0, 100.0, 150.0, 200.0, 300.0}) {
    std::printf("%8.0f %18.4f %18.4f\n", a,
                lifshitz::force_sphere_plate(gen, a, 300.0, R),
                lifshitz::force_sphere_plate(plasma, a, 300.0, R));
  }
  return 0;
}
