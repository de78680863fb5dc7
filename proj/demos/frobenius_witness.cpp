// Detect the Frobenius structure of the Suzuki Borel subgroup and print the
// witness data.

#include <cstdio>

#include "vanish/constructors.hpp"

int main() {
  vanish::Group g = vanish::sz8_borel();
  vanish::Subgroup q = vanish::sylow_subgroup(g, 2);
  auto w = vanish::is_frobenius_with_kernel(g, q);
  if (!w) {
    std::printf("no witness\n");
    return 1;
  }
  std::printf("order %zu = kernel %zu * complement %zu, fixed point free: %s\n",
              g->order(), w->kernel.order(), w->complement.order(),
              w->fixed_point_free ? "yes" : "no");
  return 0;
}
