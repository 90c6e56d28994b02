#include "qec3/random.hpp"

#include <cmath>
#include <numbers>

namespace qec3 {

double Sampler::uniform() {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
}

double Sampler::gaussian() {
  double u = 0.0;
  while (u <= 0.0) u = uniform();
  const double v = uniform();
  return std::sqrt(-2.0 * std::log(u)) *
         std::cos(2.0 * std::numbers::pi * v);
}

BlochVector Sampler::unit_vector() {
  BlochVector n;
  double r = 0.0;
  while (r < 1e-12) {
    n = {gaussian(), gaussian(), gaussian()};
    r = n.norm();
  }
  return {n.x / r, n.y / r, n.z / r};
}

BlochVector Sampler::bloch_in_ball() {
  const BlochVector n = unit_vector();
  const double r = uniform();
  return {r * n.x, r * n.y, r * n.z};
}

DensityMatrix Sampler::density_matrix(int n_qubits) {
  const Eigen::Index d = Eigen::Index(1) << n_qubits;
  Operator g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = Complex(gaussian(), gaussian());
  Operator m = g * g.adjoint();
  return DensityMatrix(m / m.trace().real());
}

ErrorChannel Sampler::channel() {
  std::array<double, 4> p{};
  double sum = 0.0;
  for (double& v : p) {
    v = -std::log(1.0 - uniform());
    sum += v;
  }
  for (double& v : p) v /= sum;
  // Exact renormalization so the channel validator's 1e-12 gate holds.
  const double total = p[0] + p[1] + p[2] + p[3];
  p[3] += 1.0 - total;
  return ErrorChannel(p);
}

}  // namespace qec3
