#pragma once

#include <array>

#include "qec3/linalg.hpp"
#include "qec3/pauli.hpp"

namespace qec3 {

/// Probabilities (p0..p3) of the fully correlated error operators
/// X_0 = I, X_1 = sigma_x^{x3}, X_2 = sigma_y^{x3}, X_3 = sigma_z^{x3}.
/// Each p_i must be nonnegative and the sum must be 1 within 1e-12;
/// out-of-tolerance inputs are rejected rather than renormalized.
struct ErrorChannel {
  std::array<double, 4> p;

  explicit ErrorChannel(const std::array<double, 4>& probs);
  ErrorChannel(double p0, double p1, double p2, double p3)
      : ErrorChannel(std::array<double, 4>{p0, p1, p2, p3}) {}

  static ErrorChannel no_error() { return {1, 0, 0, 0}; }
  static ErrorChannel x1_error() { return {0, 1, 0, 0}; }
  static ErrorChannel x2_error() { return {0, 0, 1, 0}; }
  static ErrorChannel x3_error() { return {0, 0, 0, 1}; }
};

/// Error word X_i as a signed Pauli string / as an 8x8 matrix.
PauliString error_pauli(int i);
const Operator& error_operator(int i);

/// The reference factor table M_0 = II, M_1 = +XX, M_2 = -YX, M_3 = +ZI,
/// fixed independently of the encoder so recovery identities can be
/// checked against it.
PauliString error_factor_table(int i);

/// Debug hook for the verification CLI: `flipped_debug` builds the encoder
/// with both CNOT orientations reversed, which breaks the factorization.
enum class EncoderOrientation { canonical, flipped_debug };

/// CNOT as a permutation unitary. Qubits are numbered 1..n_qubits with
/// qubit 1 the leftmost tensor factor; control != target.
Operator cnot_unitary(int control, int target, int n_qubits = 3);

/// U_E = CNOT(control 3 -> target 1) * CNOT(control 1 -> target 2), the
/// CNOT12 acting first; U_R = U_E^dagger.
Operator encoder_unitary(EncoderOrientation o = EncoderOrientation::canonical);
Operator recovery_unitary(EncoderOrientation o = EncoderOrientation::canonical);

/// U_E (rho1 (x) rho2) U_E^dagger.
DensityMatrix encode(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// sum_i p_i X_i rho X_i.
DensityMatrix apply_error_channel(const DensityMatrix& rho3,
                                  const ErrorChannel& ch);

struct RecoveredState {
  DensityMatrix data;     // dim 2
  DensityMatrix ancilla;  // dim 4
};

/// Applies U_R and splits by partial trace. The data component equals the
/// original rho1 whenever the input lies in the code-space image.
RecoveredState recover(const DensityMatrix& rho3_noisy);

struct RoundTripReport {
  DensityMatrix recovered;        // data qubit after recovery
  DensityMatrix ancilla_residue;  // rho2' = sum_i p_i M_i rho2 M_i^dagger
  double trace_distance_to_input; // between recovered and rho1
  double residue_deviation;       // Frobenius gap to the M_i-table prediction
};

RoundTripReport roundtrip(const DensityMatrix& rho1, const DensityMatrix& rho2,
                          const ErrorChannel& ch);

/// Factorization U_E^dagger X_i U_E = sigma_0 (x) M_i, with M_i extracted
/// as a signed two-qubit Pauli word.
struct EncoderFactorization {
  int index = 0;
  PauliString factor;  // M_i
  double residual = 0.0;
};

/// Computes U_E^dagger X_i U_E and extracts M_i. Throws if the first tensor
/// factor is not sigma_0 or the remainder is not a signed Pauli word within
/// 1e-12 (both signal a wrong CNOT orientation).
EncoderFactorization derive_error_factor(
    int i, EncoderOrientation o = EncoderOrientation::canonical);

/// Codeword of a data qubit with Bloch vector n and uniformly mixed
/// ancillae: (1/8)(III + n_x XXI + n_y YXZ + n_z ZIZ).
PauliExpansion encoded_state_closed_form(const BlochVector& n);

/// One-qubit gate V on the logical qubit together with its action
/// U_E (V (x) sigma_0 (x) sigma_0) U_E^dagger on the physical qubits.
struct LogicalGate {
  Operator logical;    // 2x2
  PauliString physical;  // 3-qubit signed word
};

/// axis in {'x','y','z'}: physical words XXI, YXZ, ZIZ.
LogicalGate logical_pauli(char axis);

/// exp(-i angle L_axis); equals U_E (exp(-i angle sigma_axis) (x) I (x) I) U_R.
Operator logical_rotation(char axis, double angle);

/// NMR thermal state sigma_0^{x3}/8 + (eps/8)(ZII + IZI + IIZ).
/// eps must lie in [0, 1]; positivity additionally requires eps <= 1/3 and
/// the density-matrix invariant rejects anything beyond that.
DensityMatrix thermal_pseudo_pure_state(double epsilon);

}  // namespace qec3
