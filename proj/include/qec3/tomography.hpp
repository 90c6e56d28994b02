#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qec3/linalg.hpp"
#include "qec3/qec.hpp"

namespace qec3 {

/// R[i][j] = Tr(sigma_i M(sigma_j)) / 2 over (sigma_0, sigma_x, sigma_y,
/// sigma_z). Trace-preserving maps have first row (1, 0, 0, 0); the Bloch
/// action is n -> t + B n with t_i = R[i][0] and B the lower-right block.
struct PauliTransferMatrix {
  Eigen::Matrix4d r = Eigen::Matrix4d::Identity();
};

/// Process matrix in the Pauli operator basis: M(rho) = sum_{mn} chi_mn
/// sigma_m rho sigma_n. Hermitian, trace 1 for trace-preserving maps.
struct ChiMatrix {
  Eigen::Matrix4cd chi = Eigen::Matrix4cd::Zero();
};

/// Gate-level noise surrogate: two-qubit depolarizing with the given
/// probability after each CNOT, plus a Gaussian over-rotation of each CNOT
/// angle. Fully determined by the seed.
struct NoiseModel {
  double depolarizing = 0.0;
  double angle_std = 0.0;
  std::uint64_t seed = 0;
};

/// The informationally complete single-qubit input set with Bloch vectors
/// z, -z, x, y.
std::vector<DensityMatrix> prepare_input_states();

/// encode (noisy gates) -> error channel -> recover (noisy gates) -> data
/// qubit, with ancillae fixed at sigma_0^{x2}/4. A given NoiseModel yields
/// one fixed noisy map: the over-rotation angles are drawn once from the
/// seed, so repeated calls see the same map.
DensityMatrix run_pipeline(const DensityMatrix& rho1, const ErrorChannel& ch,
                           const NoiseModel& noise);

/// Linear-inversion process tomography from informationally complete
/// input/output pairs. Throws when the design matrix is singular.
PauliTransferMatrix reconstruct_ptm(
    const std::vector<std::pair<DensityMatrix, DensityMatrix>>& pairs);

ChiMatrix ptm_to_chi(const PauliTransferMatrix& r);
PauliTransferMatrix chi_to_ptm(const ChiMatrix& chi);

/// Kraus operators from the chi eigendecomposition. Eigenvalues in
/// [-1e-6, 0) are clamped; anything below flags the map as nonphysical
/// (and is clamped as well).
struct KrausDecomposition {
  std::vector<Eigen::Matrix2cd> ops;
  bool nonphysical_flagged = false;
  double min_eigenvalue = 0.0;
};

KrausDecomposition chi_to_kraus(const ChiMatrix& chi);

/// F_e = chi_00, the identity-identity component; 1 iff the map is the
/// identity conjugation.
double entanglement_fidelity(const ChiMatrix& chi);

/// R[0][0] = Tr(M(sigma_0)) / 2; 1 for trace-preserving maps.
double map_trace(const PauliTransferMatrix& r);

struct SphereMeshRow {
  double theta = 0.0;
  double phi = 0.0;
  BlochVector in;
  BlochVector out;
};

/// Image of the unit Bloch sphere under the map's affine action.
struct SphereMesh {
  int n_theta = 0;
  int n_phi = 0;
  std::vector<SphereMeshRow> rows;
};

SphereMesh sphere_mapping(const PauliTransferMatrix& r, int n_theta,
                          int n_phi);

struct TomographyReport {
  PauliTransferMatrix ptm;
  ChiMatrix chi;
  KrausDecomposition kraus;
  double entanglement_fidelity = 0.0;
  double map_trace = 0.0;
  SphereMesh mesh;
};

/// Full in-silico run of the process-tomography experiment for one channel:
/// four input states through the pipeline, linear inversion, process
/// representations, figures of merit and the sphere image.
TomographyReport tomography_experiment(const ErrorChannel& ch,
                                       const NoiseModel& noise,
                                       int mesh_theta = 32, int mesh_phi = 64);

}  // namespace qec3
