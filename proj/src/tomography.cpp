#include "qec3/tomography.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qec3/pauli.hpp"
#include "qec3/random.hpp"

namespace qec3 {

namespace {

constexpr double kPi = std::numbers::pi;

/// CNOT(control, target) with a tunable rotation angle:
/// exp(i theta P1_c (x) Qx_t) = I + (e^{i theta} - 1) P, where P projects
/// onto control |1> and target |-x>. theta = pi is the exact gate.
Operator cnot_rotation(int control, int target, double theta) {
  Operator p = Operator::Identity(2, 2);
  for (int q = 1; q <= 3; ++q) {
    Operator factor = sigma(0);
    if (q == control) factor = 0.5 * (sigma(0) - sigma(3));
    if (q == target) factor = 0.5 * (sigma(0) - sigma(1));
    p = (q == 1) ? factor : tensor_product(p, factor);
  }
  return Operator::Identity(8, 8) +
         (std::exp(Complex(0, theta)) - Complex(1, 0)) * p;
}

/// Two-qubit depolarizing on qubits (a, b) inside the 3-qubit register:
/// rho -> (1-p) rho + (p/15) sum over the 15 nontrivial Pauli pairs.
Operator depolarize_pair(const Operator& rho, int a, int b, double p) {
  if (p == 0.0) return rho;
  Operator sum = Operator::Zero(8, 8);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i == 0 && j == 0) continue;
      std::vector<Pauli> letters(3, Pauli::I);
      letters[a - 1] = static_cast<Pauli>(i);
      letters[b - 1] = static_cast<Pauli>(j);
      const Operator w = pauli_string_matrix(PauliString(std::move(letters)));
      sum += w * rho * w;
    }
  }
  return (1.0 - p) * rho + (p / 15.0) * sum;
}

struct GateNoise {
  double angles[4];  // encode CNOT12, CNOT31; recover CNOT31, CNOT12
  double depol;
};

GateNoise realize(const NoiseModel& noise) {
  GateNoise g{};
  Sampler sampler(noise.seed);
  for (double& a : g.angles) a = kPi + noise.angle_std * sampler.gaussian();
  g.depol = noise.depolarizing;
  return g;
}

/// Pauli coefficient vector (Tr(sigma_i rho) / 2) of a single-qubit state.
Eigen::Vector4d pauli_coefficients(const DensityMatrix& rho) {
  Eigen::Vector4d c;
  for (int i = 0; i < 4; ++i) {
    c(i) = (sigma(i) * rho.matrix()).trace().real() / 2.0;
  }
  return c;
}

/// Tr(sigma_i sigma_m sigma_j sigma_n) / 2 arranged so that
/// vec(R) = basis_change * vec(chi).
const Eigen::Matrix<Complex, 16, 16>& ptm_chi_basis_change() {
  static const Eigen::Matrix<Complex, 16, 16> a = [] {
    Eigen::Matrix<Complex, 16, 16> m;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int r = 0; r < 4; ++r)
          for (int n = 0; n < 4; ++n)
            m(4 * i + j, 4 * r + n) =
                (sigma(i) * sigma(r) * sigma(j) * sigma(n)).trace() / 2.0;
    return m;
  }();
  return a;
}

}  // namespace

std::vector<DensityMatrix> prepare_input_states() {
  return {bloch_to_density({0, 0, 1}), bloch_to_density({0, 0, -1}),
          bloch_to_density({1, 0, 0}), bloch_to_density({0, 1, 0})};
}

DensityMatrix run_pipeline(const DensityMatrix& rho1, const ErrorChannel& ch,
                           const NoiseModel& noise) {
  if (rho1.dim() != 2) {
    throw std::invalid_argument("run_pipeline: single-qubit input required");
  }
  if (noise.depolarizing < 0.0 || noise.depolarizing > 1.0 ||
      noise.angle_std < 0.0) {
    throw std::invalid_argument("run_pipeline: invalid noise strengths");
  }
  const GateNoise g = realize(noise);
  Operator rho = tensor_product(rho1.matrix(),
                                Operator::Identity(4, 4) / 4.0);

  auto apply_gate = [&rho, &g](int control, int target, double theta) {
    const Operator u = cnot_rotation(control, target, theta);
    rho = u * rho * u.adjoint();
    rho = depolarize_pair(rho, control, target, g.depol);
  };

  // Encode: CNOT12 then CNOT31.
  apply_gate(1, 2, g.angles[0]);
  apply_gate(3, 1, g.angles[1]);

  rho = apply_error_channel(DensityMatrix(rho), ch).matrix();

  // Recover: U_R = U_E^dagger, so CNOT31 then CNOT12 (each self-inverse).
  apply_gate(3, 1, g.angles[2]);
  apply_gate(1, 2, g.angles[3]);

  return DensityMatrix(partial_trace_matrix(rho, 3, {1}));
}

PauliTransferMatrix reconstruct_ptm(
    const std::vector<std::pair<DensityMatrix, DensityMatrix>>& pairs) {
  if (pairs.size() != 4) {
    throw std::invalid_argument("reconstruct_ptm: exactly 4 input/output pairs required");
  }
  Eigen::Matrix4d in, out;
  for (int k = 0; k < 4; ++k) {
    in.col(k) = pauli_coefficients(pairs[k].first);
    out.col(k) = pauli_coefficients(pairs[k].second);
  }
  Eigen::FullPivLU<Eigen::Matrix4d> lu(in);
  if (!lu.isInvertible()) {
    throw std::invalid_argument("reconstruct_ptm: input states are not informationally complete");
  }
  return PauliTransferMatrix{out * lu.inverse()};
}

ChiMatrix ptm_to_chi(const PauliTransferMatrix& r) {
  Eigen::Matrix<Complex, 16, 1> rvec;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) rvec(4 * i + j) = r.r(i, j);
  const Eigen::Matrix<Complex, 16, 1> cvec =
      ptm_chi_basis_change().fullPivLu().solve(rvec);
  ChiMatrix chi;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) chi.chi(m, n) = cvec(4 * m + n);
  return chi;
}

PauliTransferMatrix chi_to_ptm(const ChiMatrix& chi) {
  Eigen::Matrix<Complex, 16, 1> cvec;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) cvec(4 * m + n) = chi.chi(m, n);
  const Eigen::Matrix<Complex, 16, 1> rvec = ptm_chi_basis_change() * cvec;
  PauliTransferMatrix r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.r(i, j) = rvec(4 * i + j).real();
  return r;
}

KrausDecomposition chi_to_kraus(const ChiMatrix& chi) {
  const double herm = (chi.chi - chi.chi.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-10) {
    throw std::invalid_argument("chi_to_kraus: chi matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(chi.chi);
  KrausDecomposition k;
  k.min_eigenvalue = solver.eigenvalues().minCoeff();
  k.nonphysical_flagged = k.min_eigenvalue < -1e-6;
  for (int idx = 0; idx < 4; ++idx) {
    const double lam = solver.eigenvalues()(idx);
    if (lam <= 0.0) continue;  // clamp
    Eigen::Matrix2cd op = Eigen::Matrix2cd::Zero();
    for (int m = 0; m < 4; ++m) {
      op += solver.eigenvectors()(m, idx) * sigma(m);
    }
    k.ops.push_back(std::sqrt(lam) * op);
  }
  return k;
}

double entanglement_fidelity(const ChiMatrix& chi) {
  return chi.chi(0, 0).real();
}

double map_trace(const PauliTransferMatrix& r) { return r.r(0, 0); }

SphereMesh sphere_mapping(const PauliTransferMatrix& r, int n_theta,
                          int n_phi) {
  if (n_theta < 2 || n_phi < 2) {
    throw std::invalid_argument("sphere_mapping: grid too small");
  }
  SphereMesh mesh{n_theta, n_phi, {}};
  mesh.rows.reserve(size_t(n_theta) * size_t(n_phi));
  const Eigen::Vector3d shift = r.r.block<3, 1>(1, 0);
  const Eigen::Matrix3d bloch_action = r.r.block<3, 3>(1, 1);
  for (int i = 0; i < n_theta; ++i) {
    const double theta = i * kPi / (n_theta - 1);
    for (int j = 0; j < n_phi; ++j) {
      const double phi = j * 2.0 * kPi / n_phi;
      const BlochVector in = BlochVector::spherical(theta, phi);
      const Eigen::Vector3d out =
          shift + bloch_action * Eigen::Vector3d(in.x, in.y, in.z);
      mesh.rows.push_back({theta, phi, in, {out(0), out(1), out(2)}});
    }
  }
  return mesh;
}

TomographyReport tomography_experiment(const ErrorChannel& ch,
                                       const NoiseModel& noise,
                                       int mesh_theta, int mesh_phi) {
  std::vector<std::pair<DensityMatrix, DensityMatrix>> pairs;
  for (const DensityMatrix& rho : prepare_input_states()) {
    pairs.emplace_back(rho, run_pipeline(rho, ch, noise));
  }
  TomographyReport report{
      reconstruct_ptm(pairs), ChiMatrix{}, KrausDecomposition{}, 0.0, 0.0,
      SphereMesh{}};
  report.chi = ptm_to_chi(report.ptm);
  report.kraus = chi_to_kraus(report.chi);
  report.entanglement_fidelity = entanglement_fidelity(report.chi);
  report.map_trace = map_trace(report.ptm);
  report.mesh = sphere_mapping(report.ptm, mesh_theta, mesh_phi);
  return report;
}

}  // namespace qec3
