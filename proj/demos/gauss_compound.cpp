// Gauss's arithmetic-geometric mean as the compound mean of (A, G), and the
// arithmetic-harmonic mean, which collapses to the geometric mean.

#include <cstdio>
#include <vector>

#include <meanmap/meanmap.hpp>

int main() {
  using namespace meanmap;
  const std::vector<double> start = {1.0, 2.0};

  const auto agm = compound_mean(agm_mapping(), start);
  std::printf("AGM(1, 2) = %.17g after %zu steps\n", agm.value, agm.iterations);

  const std::vector<double> ahm_start = {2.0, 8.0};
  const auto ahm = compound_mean(ahm_mapping(), ahm_start);
  std::printf("AHM(2, 8) = %.17g after %zu steps (sqrt(2*8) = 4)\n", ahm.value, ahm.iterations);

  const auto trace = orbit(agm_mapping(), start, {1e-15, 50});
  for (const auto& step : trace.steps) {
    std::printf("n=%zu  [%.17g, %.17g]\n", step.n, step.min, step.max);
  }
  return 0;
}
