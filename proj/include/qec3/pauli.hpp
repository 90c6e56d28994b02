#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qec3/linalg.hpp"

namespace qec3 {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_letter_char(Pauli p);
Pauli pauli_letter_from_char(char c);

/// Signed word over {I, X, Y, Z}: phase * (letter_1 (x) ... (x) letter_k),
/// with phase = i^phase_power in {+1, +i, -1, -i} and letter_1 the leftmost
/// tensor factor (qubit 1). Closed under multiplication.
class PauliString {
 public:
  explicit PauliString(std::vector<Pauli> letters, int phase_power = 0);

  /// Parses "XX", "+XX", "-YX", "iZ", "-iZ".
  static PauliString parse(std::string_view s);

  const std::vector<Pauli>& letters() const { return letters_; }
  int size() const { return static_cast<int>(letters_.size()); }
  int phase_power() const { return phase_power_; }
  Complex phase() const;
  /// True when the phase is +1 or -1 (the matrix is then Hermitian).
  bool is_hermitian() const { return phase_power_ % 2 == 0; }

  std::string str() const;  // "+XX", "-YX", "+iZZ", ...

  bool operator==(const PauliString&) const = default;

 private:
  std::vector<Pauli> letters_;
  int phase_power_;  // 0..3
};

/// Letter-wise product with exact phase accumulation. The matrix of the
/// result equals pauli_string_matrix(a) * pauli_string_matrix(b).
PauliString pauli_product(const PauliString& a, const PauliString& b);

/// phase * tensor product of the single-qubit Pauli matrices; length <= 3.
Operator pauli_string_matrix(const PauliString& p);

/// exp(-i angle P) = cos(angle) I - i sin(angle) P for a Hermitian signed
/// Pauli word P (P^2 = I). Throws if the phase is +-i.
Operator exp_pauli_rotation(double angle, const PauliString& p);

/// Index of an unsigned word in the base-4 ordering with qubit 1 as the most
/// significant digit; letters ordered I, X, Y, Z.
std::size_t pauli_word_index(const std::vector<Pauli>& letters);
std::vector<Pauli> pauli_word_letters(std::size_t index, int n_qubits);

/// Real coefficients of a Hermitian operator over the 4^k unsigned Pauli
/// words: coeff(w) = Tr(m W_w) / dim. Reconstruction is exact on Hermitian
/// inputs and the identity-word coefficient of a density matrix is 1/2^k.
struct PauliExpansion {
  int n_qubits = 0;
  std::vector<double> coeffs;  // 4^n_qubits entries

  double coeff(const std::vector<Pauli>& letters) const;
  double& coeff(const std::vector<Pauli>& letters);
  Operator reconstruct() const;
};

PauliExpansion pauli_expansion(const Operator& m);

}  // namespace qec3
