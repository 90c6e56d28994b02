#include "qec3/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace qec3 {

namespace {

constexpr Complex kI{0.0, 1.0};

Operator make_sigma(int i) {
  Operator m(2, 2);
  switch (i) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -kI, kI, 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("sigma: index must be 0..3");
  }
  return m;
}

bool is_supported_dim(Eigen::Index d) { return d == 2 || d == 4 || d == 8; }

}  // namespace

const Operator& sigma(int i) {
  static const Operator s[4] = {make_sigma(0), make_sigma(1), make_sigma(2),
                                make_sigma(3)};
  if (i < 0 || i > 3) throw std::invalid_argument("sigma: index must be 0..3");
  return s[i];
}

int qubit_count_for_dim(Eigen::Index dim) {
  switch (dim) {
    case 2: return 1;
    case 4: return 2;
    case 8: return 3;
    default:
      throw std::invalid_argument("unsupported operator dimension " +
                                  std::to_string(dim));
  }
}

Operator tensor_product(const Operator& a, const Operator& b) {
  if (!is_supported_dim(a.rows()) || a.rows() != a.cols() ||
      !is_supported_dim(b.rows()) || b.rows() != b.cols()) {
    throw std::invalid_argument("tensor_product: factors must be square with dim 2, 4 or 8");
  }
  const Eigen::Index ra = a.rows(), rb = b.rows();
  if (ra * rb > 8) {
    throw std::invalid_argument("tensor_product: result dimension exceeds 8");
  }
  Operator out(ra * rb, ra * rb);
  for (Eigen::Index i = 0; i < ra; ++i)
    for (Eigen::Index j = 0; j < ra; ++j)
      out.block(i * rb, j * rb, rb, rb) = a(i, j) * b;
  return out;
}

std::vector<double> hermitian_eigenvalues(const Operator& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("hermitian_eigenvalues: matrix must be square");
  }
  const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (dev > 1e-10) {
    throw std::invalid_argument("hermitian_eigenvalues: input is not Hermitian (deviation " +
                                std::to_string(dev) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Operator> solver(m, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

BlochVector BlochVector::spherical(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
          std::cos(theta)};
}

DensityMatrix::DensityMatrix(Operator m) : mat_(std::move(m)) {
  if (mat_.rows() != mat_.cols() || !is_supported_dim(mat_.rows())) {
    throw std::invalid_argument("DensityMatrix: dimension must be 2, 4 or 8");
  }
  const double herm = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermitianTol) {
    throw std::invalid_argument("DensityMatrix: not Hermitian (deviation " +
                                std::to_string(herm) + ")");
  }
  const Complex tr = mat_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTol) {
    throw std::invalid_argument("DensityMatrix: trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Operator> solver(mat_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < kEigenvalueFloor) {
    throw std::invalid_argument("DensityMatrix: negative eigenvalue " +
                                std::to_string(solver.eigenvalues().minCoeff()));
  }
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 3) {
    throw std::invalid_argument("maximally_mixed: 1..3 qubits");
  }
  const Eigen::Index d = Eigen::Index(1) << n_qubits;
  return DensityMatrix(Operator::Identity(d, d) / double(d));
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi) {
  const double n = psi.norm();
  if (n == 0.0) throw std::invalid_argument("pure: zero vector");
  Eigen::VectorXcd v = psi / n;
  return DensityMatrix(v * v.adjoint());
}

Operator partial_trace_matrix(const Operator& m, int n_qubits,
                              const std::vector<int>& keep) {
  if (m.rows() != m.cols() || m.rows() != (Eigen::Index(1) << n_qubits)) {
    throw std::invalid_argument("partial_trace: dimension mismatch");
  }
  if (keep.empty() || keep.size() >= size_t(n_qubits)) {
    throw std::invalid_argument("partial_trace: keep must be a nonempty proper subset");
  }
  std::vector<bool> kept(n_qubits, false);
  for (int q : keep) {
    if (q < 1 || q > n_qubits || kept[q - 1]) {
      throw std::invalid_argument("partial_trace: invalid qubit index set");
    }
    kept[q - 1] = true;
  }
  // Qubit q occupies bit (n_qubits - q): qubit 1 is the most significant bit.
  std::vector<int> keep_bits, trace_bits;
  for (int q = 1; q <= n_qubits; ++q) {
    (kept[q - 1] ? keep_bits : trace_bits).push_back(n_qubits - q);
  }
  const Eigen::Index dk = Eigen::Index(1) << keep_bits.size();
  const Eigen::Index dt = Eigen::Index(1) << trace_bits.size();
  auto fold = [](const std::vector<int>& bits, Eigen::Index idx) {
    // bits are listed qubit-major; idx's high bit maps to the first entry.
    Eigen::Index full = 0;
    for (size_t k = 0; k < bits.size(); ++k) {
      if (idx & (Eigen::Index(1) << (bits.size() - 1 - k))) {
        full |= Eigen::Index(1) << bits[k];
      }
    }
    return full;
  };
  Operator out = Operator::Zero(dk, dk);
  for (Eigen::Index r = 0; r < dk; ++r) {
    for (Eigen::Index c = 0; c < dk; ++c) {
      Complex sum = 0;
      for (Eigen::Index t = 0; t < dt; ++t) {
        const Eigen::Index off = fold(trace_bits, t);
        sum += m(fold(keep_bits, r) | off, fold(keep_bits, c) | off);
      }
      out(r, c) = sum;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep) {
  return DensityMatrix(
      partial_trace_matrix(rho.matrix(), rho.num_qubits(), keep));
}

double shannon_bits(const std::vector<double>& p) {
  double s = 0.0;
  for (double v : p) {
    if (v > 0.0) s -= v * std::log2(v);
  }
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return shannon_bits(hermitian_eigenvalues(rho.matrix()));
}

DensityMatrix bloch_to_density(const BlochVector& n) {
  if (n.norm() > 1.0 + kUnitNormTol) {
    throw std::invalid_argument("bloch_to_density: |n| > 1");
  }
  return DensityMatrix(
      0.5 * (sigma(0) + n.x * sigma(1) + n.y * sigma(2) + n.z * sigma(3)));
}

BlochVector density_to_bloch(const DensityMatrix& rho) {
  if (rho.dim() != 2) {
    throw std::invalid_argument("density_to_bloch: single-qubit state required");
  }
  BlochVector n;
  n.x = (rho.matrix() * sigma(1)).trace().real();
  n.y = (rho.matrix() * sigma(2)).trace().real();
  n.z = (rho.matrix() * sigma(3)).trace().real();
  return n;
}

Eigen::Vector2cd bloch_state(const BlochVector& n) {
  if (std::abs(n.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("bloch_state: |n| must be 1");
  }
  const double theta = std::acos(std::clamp(n.z, -1.0, 1.0));
  const double phi = std::atan2(n.y, n.x);
  Eigen::Vector2cd psi;
  psi << std::cos(theta / 2.0),
      std::exp(kI * phi) * std::sin(theta / 2.0);
  return psi;
}

DensityMatrix uniform_mixture_check(const BlochVector& n2,
                                    const BlochVector& n2p) {
  if (std::abs(n2.norm() - 1.0) > kUnitNormTol ||
      std::abs(n2p.norm() - 1.0) > kUnitNormTol) {
    throw std::invalid_argument("uniform_mixture_check: inputs must be unit vectors");
  }
  Operator sum = Operator::Zero(4, 4);
  const int signs[4][2] = {{+1, +1}, {-1, -1}, {-1, +1}, {+1, -1}};
  for (const auto& st : signs) {
    const BlochVector a{st[0] * n2.x, st[0] * n2.y, st[0] * n2.z};
    const BlochVector b{st[1] * n2p.x, st[1] * n2p.y, st[1] * n2p.z};
    Eigen::Vector4cd psi;
    const Eigen::Vector2cd pa = bloch_state(a), pb = bloch_state(b);
    psi << pa(0) * pb(0), pa(0) * pb(1), pa(1) * pb(0), pa(1) * pb(1);
    sum += psi * psi.adjoint();
  }
  return DensityMatrix(sum / 4.0);
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("trace_distance: dimension mismatch");
  }
  double s = 0.0;
  for (double ev : hermitian_eigenvalues(a.matrix() - b.matrix())) {
    s += std::abs(ev);
  }
  return 0.5 * s;
}

}  // namespace qec3
