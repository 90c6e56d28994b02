#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qec3 {

using Complex = std::complex<double>;

/// Dense complex matrix of dimension 2, 4 or 8. Everything in this library
/// is small enough that dense storage wins over any structured representation.
using Operator = Eigen::MatrixXcd;

// Validation tolerances shared across the library.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kEigenvalueFloor = -1e-10;
inline constexpr double kUnitNormTol = 1e-12;
inline constexpr double kDegenerateBranchProb = 1e-14;

/// Pauli matrices sigma_0..sigma_3 (identity, x, y, z).
const Operator& sigma(int i);

/// Number of qubits for a dim-2^k operator; throws if dim is not 2, 4 or 8.
int qubit_count_for_dim(Eigen::Index dim);

/// Kronecker product. Throws if either factor has an unsupported dimension
/// or the result would exceed dimension 8.
Operator tensor_product(const Operator& a, const Operator& b);

/// Ascending real eigenvalues of a Hermitian matrix.
/// Throws if the input deviates from Hermiticity by more than 1e-10.
std::vector<double> hermitian_eigenvalues(const Operator& m);

/// Real 3-vector n with |n| <= 1 parameterizing a single-qubit state
/// rho = (sigma_0 + n . sigma) / 2.
struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
  double dot(const BlochVector& o) const { return x * o.x + y * o.y + z * o.z; }
  BlochVector operator-() const { return {-x, -y, -z}; }

  /// Unit vector (sin t cos p, sin t sin p, cos t).
  static BlochVector spherical(double theta, double phi);
};

/// Hermitian, unit-trace, positive-semidefinite matrix. The constructor
/// validates all three invariants (Hermiticity and trace within 1e-12,
/// minimum eigenvalue >= -1e-10) and throws std::invalid_argument otherwise.
class DensityMatrix {
 public:
  explicit DensityMatrix(Operator m);

  static DensityMatrix maximally_mixed(int n_qubits);
  static DensityMatrix pure(const Eigen::VectorXcd& psi);

  const Operator& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }
  int num_qubits() const { return qubit_count_for_dim(mat_.rows()); }

 private:
  Operator mat_;
};

/// Reduced matrix on the kept qubits. Qubits are numbered 1..n with qubit 1
/// the leftmost tensor factor; `keep` must be a nonempty proper subset.
Operator partial_trace_matrix(const Operator& m, int n_qubits,
                              const std::vector<int>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep);

/// -sum p log2 p with p clamped at zero and 0 log 0 := 0.
double shannon_bits(const std::vector<double>& p);

/// Von Neumann entropy in bits.
double von_neumann_entropy(const DensityMatrix& rho);

/// (sigma_0 + n . sigma) / 2. Throws if |n| > 1 + 1e-12.
DensityMatrix bloch_to_density(const BlochVector& n);
BlochVector density_to_bloch(const DensityMatrix& rho);

/// Pure state |n> with Bloch vector n, |n| = 1:
/// (cos(t/2), e^{i p} sin(t/2)) for n = (sin t cos p, sin t sin p, cos t).
Eigen::Vector2cd bloch_state(const BlochVector& n);

/// The four-term product-state mixture
/// (1/4) sum over (+,+), (-,-), (-,+), (+,-) of |s n2, t n2'><s n2, t n2'|.
/// Both inputs must be unit vectors. Equals sigma_0^{x2}/4 for any pair.
DensityMatrix uniform_mixture_check(const BlochVector& n2,
                                    const BlochVector& n2p);

/// (1/2) sum |eig(a - b)|.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace qec3
