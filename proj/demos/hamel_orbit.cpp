// Exact orbit of the state-weighted pair (M, N) on Q(sqrt 2), starting at
// (sqrt 2, 0). The weight lambda depends on an additive, non-continuous
// functional, yet the pair still contracts to the arithmetic mean.

#include <cmath>
#include <iostream>

#include <meanmap/meanmap.hpp>

int main() {
  using namespace meanmap;
  const auto params = LambdaParams::example2();
  const AdditiveFunctional alpha;
  const auto orbit = mn_orbit(params, alpha, ExactHamel::surd(), ExactHamel(), 8);
  for (std::size_t k = 0; k < orbit.size(); ++k) {
    const auto& [m, n] = orbit[k];
    std::cout << "k=" << k << "  M=" << m.to_string() << "  N=" << n.to_string() << "  M-N~" << (m - n).value()
              << '\n';
  }
  const auto image = compound_mean(hamel_mn<HamelImage>(params, alpha), std::vector<HamelImage>{HamelImage::surd(), {}});
  std::cout << "compound mean ~ " << image.value.value() << " (sqrt(2)/2 = " << std::sqrt(2.0) / 2 << ")\n";
  return 0;
}
