// Minimal library walkthrough: build a group from an expression, compute its
// exact character table, and print the vanishing class sizes.

#include <cstdio>

#include "vanish/dsl.hpp"
#include "vanish/vanishing.hpp"

int main(int argc, char** argv) {
  const char* expr = argc > 1 ? argv[1] : "sdp(3^3,ES(2,-),maxker)";
  vanish::Group g = vanish::build_group(expr);
  vanish::VanishingProfile prof = vanish::vanishing_profile(g);
  std::printf("%s: order %zu, %zu classes\n", expr, g->order(),
              prof.classes->count());
  std::printf("cs  =");
  for (auto s : prof.cs) std::printf(" %llu", (unsigned long long)s);
  std::printf("\nvcs =");
  for (auto s : prof.vcs) std::printf(" %llu", (unsigned long long)s);
  std::printf("\n");
  vanish::ClassificationResult cls = vanish::classify_single_vcs(g);
  std::printf("classification: %s\n", vanish::vcs_case_name(cls.case_label));
  return 0;
}
