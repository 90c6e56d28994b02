#include "qec3/qec.hpp"

#include <cmath>
#include <stdexcept>

namespace qec3 {

namespace {

Operator conjugate(const Operator& u, const Operator& m) {
  return u * m * u.adjoint();
}

}  // namespace

ErrorChannel::ErrorChannel(const std::array<double, 4>& probs) : p(probs) {
  double sum = 0.0;
  for (double v : p) {
    if (v < 0.0) throw std::invalid_argument("ErrorChannel: negative probability");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kTraceTol) {
    throw std::invalid_argument("ErrorChannel: probabilities must sum to 1");
  }
}

PauliString error_pauli(int i) {
  if (i < 0 || i > 3) throw std::invalid_argument("error_pauli: index must be 0..3");
  const Pauli p = static_cast<Pauli>(i);
  return PauliString({p, p, p});
}

const Operator& error_operator(int i) {
  static const Operator ops[4] = {
      pauli_string_matrix(error_pauli(0)), pauli_string_matrix(error_pauli(1)),
      pauli_string_matrix(error_pauli(2)), pauli_string_matrix(error_pauli(3))};
  if (i < 0 || i > 3) throw std::invalid_argument("error_operator: index must be 0..3");
  return ops[i];
}

PauliString error_factor_table(int i) {
  switch (i) {
    case 0: return PauliString::parse("+II");
    case 1: return PauliString::parse("+XX");
    case 2: return PauliString::parse("-YX");
    case 3: return PauliString::parse("+ZI");
    default: throw std::invalid_argument("error_factor_table: index must be 0..3");
  }
}

Operator cnot_unitary(int control, int target, int n_qubits) {
  if (n_qubits < 2 || n_qubits > 3) {
    throw std::invalid_argument("cnot_unitary: 2 or 3 qubits");
  }
  if (control == target || control < 1 || control > n_qubits || target < 1 ||
      target > n_qubits) {
    throw std::invalid_argument("cnot_unitary: invalid control/target");
  }
  const Eigen::Index d = Eigen::Index(1) << n_qubits;
  const Eigen::Index cbit = Eigen::Index(1) << (n_qubits - control);
  const Eigen::Index tbit = Eigen::Index(1) << (n_qubits - target);
  Operator u = Operator::Zero(d, d);
  for (Eigen::Index b = 0; b < d; ++b) {
    u((b & cbit) ? (b ^ tbit) : b, b) = 1.0;
  }
  return u;
}

Operator encoder_unitary(EncoderOrientation o) {
  // Rightmost factor acts first.
  if (o == EncoderOrientation::canonical) {
    return cnot_unitary(3, 1) * cnot_unitary(1, 2);
  }
  return cnot_unitary(1, 3) * cnot_unitary(2, 1);
}

Operator recovery_unitary(EncoderOrientation o) {
  return encoder_unitary(o).adjoint();
}

DensityMatrix encode(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (rho1.dim() != 2 || rho2.dim() != 4) {
    throw std::invalid_argument("encode: expects a 1-qubit data state and a 2-qubit ancilla state");
  }
  static const Operator ue = encoder_unitary();
  return DensityMatrix(
      conjugate(ue, tensor_product(rho1.matrix(), rho2.matrix())));
}

DensityMatrix apply_error_channel(const DensityMatrix& rho3,
                                  const ErrorChannel& ch) {
  if (rho3.dim() != 8) {
    throw std::invalid_argument("apply_error_channel: 3-qubit state required");
  }
  Operator out = Operator::Zero(8, 8);
  for (int i = 0; i < 4; ++i) {
    if (ch.p[i] == 0.0) continue;
    out += ch.p[i] * conjugate(error_operator(i), rho3.matrix());
  }
  return DensityMatrix(out);
}

RecoveredState recover(const DensityMatrix& rho3_noisy) {
  if (rho3_noisy.dim() != 8) {
    throw std::invalid_argument("recover: 3-qubit state required");
  }
  static const Operator ur = recovery_unitary();
  const Operator decoded = conjugate(ur, rho3_noisy.matrix());
  return RecoveredState{
      DensityMatrix(partial_trace_matrix(decoded, 3, {1})),
      DensityMatrix(partial_trace_matrix(decoded, 3, {2, 3})),
  };
}

RoundTripReport roundtrip(const DensityMatrix& rho1, const DensityMatrix& rho2,
                          const ErrorChannel& ch) {
  RecoveredState rec = recover(apply_error_channel(encode(rho1, rho2), ch));
  Operator expected = Operator::Zero(4, 4);
  for (int i = 0; i < 4; ++i) {
    if (ch.p[i] == 0.0) continue;
    const Operator mi = pauli_string_matrix(error_factor_table(i));
    expected += ch.p[i] * (mi * rho2.matrix() * mi.adjoint());
  }
  return RoundTripReport{
      rec.data,
      rec.ancilla,
      trace_distance(rec.data, rho1),
      (rec.ancilla.matrix() - expected).norm(),
  };
}

EncoderFactorization derive_error_factor(int i, EncoderOrientation o) {
  if (i < 1 || i > 3) {
    throw std::invalid_argument("derive_error_factor: index must be 1..3");
  }
  const Operator ue = encoder_unitary(o);
  const Operator c = ue.adjoint() * error_operator(i) * ue;
  // sigma_0 (x) M has M repeated on the diagonal 4x4 blocks and zero
  // off-diagonal blocks.
  const Operator m = c.block(0, 0, 4, 4);
  double residual = (c - tensor_product(sigma(0), m)).norm();
  if (residual > 1e-12) {
    throw std::runtime_error(
        "derive_error_factor: first tensor factor is not sigma_0 (wrong CNOT orientation?)");
  }
  // M must be a single signed Pauli word.
  int best_word = -1;
  Complex best_coeff = 0.0;
  for (int w = 0; w < 16; ++w) {
    const Operator word = pauli_string_matrix(PauliString(pauli_word_letters(w, 2)));
    const Complex coeff = (m * word).trace() / 4.0;
    if (std::abs(coeff) > std::abs(best_coeff)) {
      best_coeff = coeff;
      best_word = w;
    }
  }
  int phase_power = -1;
  static const Complex phases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int k = 0; k < 4; ++k) {
    if (std::abs(best_coeff - phases[k]) < 1e-12) phase_power = k;
  }
  if (phase_power < 0) {
    throw std::runtime_error("derive_error_factor: residual factor is not a signed Pauli word");
  }
  PauliString factor(pauli_word_letters(best_word, 2), phase_power);
  residual = std::max(residual, (m - pauli_string_matrix(factor)).norm());
  if (residual > 1e-12) {
    throw std::runtime_error("derive_error_factor: residual factor is not a signed Pauli word");
  }
  return EncoderFactorization{i, factor, residual};
}

PauliExpansion encoded_state_closed_form(const BlochVector& n) {
  if (n.norm() > 1.0 + kUnitNormTol) {
    throw std::invalid_argument("encoded_state_closed_form: |n| > 1");
  }
  PauliExpansion e;
  e.n_qubits = 3;
  e.coeffs.assign(64, 0.0);
  using enum Pauli;
  e.coeff({I, I, I}) = 1.0 / 8.0;
  e.coeff({X, X, I}) = n.x / 8.0;
  e.coeff({Y, X, Z}) = n.y / 8.0;
  e.coeff({Z, I, Z}) = n.z / 8.0;
  return e;
}

LogicalGate logical_pauli(char axis) {
  switch (axis) {
    case 'x': return {sigma(1), PauliString::parse("+XXI")};
    case 'y': return {sigma(2), PauliString::parse("+YXZ")};
    case 'z': return {sigma(3), PauliString::parse("+ZIZ")};
    default: throw std::invalid_argument("logical_pauli: axis must be x, y or z");
  }
}

Operator logical_rotation(char axis, double angle) {
  return exp_pauli_rotation(angle, logical_pauli(axis).physical);
}

DensityMatrix thermal_pseudo_pure_state(double epsilon) {
  if (epsilon < 0.0 || epsilon > 1.0) {
    throw std::invalid_argument("thermal_pseudo_pure_state: epsilon must be in [0, 1]");
  }
  Operator m = Operator::Identity(8, 8) / 8.0;
  m += (epsilon / 8.0) * pauli_string_matrix(PauliString::parse("+ZII"));
  m += (epsilon / 8.0) * pauli_string_matrix(PauliString::parse("+IZI"));
  m += (epsilon / 8.0) * pauli_string_matrix(PauliString::parse("+IIZ"));
  return DensityMatrix(m);
}

}  // namespace qec3
