#pragma once

#include <cstdint>
#include <random>

#include "qec3/linalg.hpp"
#include "qec3/qec.hpp"

namespace qec3 {

/// Deterministic sample source for verification suites and noise models.
/// Gaussian draws use Box-Muller so a seed fixes every output bit-for-bit.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform();                    // [0, 1)
  double gaussian();                   // standard normal
  BlochVector unit_vector();           // uniform on the sphere
  BlochVector bloch_in_ball();         // uniform direction, uniform radius
  DensityMatrix density_matrix(int n_qubits);  // Ginibre ensemble
  ErrorChannel channel();              // uniform on the simplex

 private:
  std::mt19937_64 rng_;
};

}  // namespace qec3
