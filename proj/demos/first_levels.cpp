// Prints the lowest eigenpolynomials of the B_N model for N = 2,
// lambda = lambda1 = 1 and checks them against the physical Hamiltonian at a
// few sample points.
#include <bncsm/bncsm.hpp>

#include <iostream>

int main() {
  using namespace bncsm;
  const ModelParams params(2, Rational(1), Rational(1));
  const auto points = sample_safe_points(params.n_particles, 5);

  for (int n = 0; n <= 3; ++n) {
    for (const auto& ef : level_basis(params, n)) {
      double worst = 0;
      for (const auto& x : points) worst = std::max(worst, fd_residual(ef, x));
      std::cout << "n=" << n << " label=" << ef.label.to_string()
                << " E=" << to_string(ef.energy) << "  poly = " << ef.poly.to_string()
                << "  max fd residual = " << worst << "\n";
    }
  }
}
