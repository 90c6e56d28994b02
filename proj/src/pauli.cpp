#include "qec3/pauli.hpp"

#include <cmath>
#include <stdexcept>

namespace qec3 {

namespace {

// Single-qubit products: a * b = i^kPhase[a][b] * kLetter[a][b].
constexpr int kLetter[4][4] = {
    {0, 1, 2, 3},
    {1, 0, 3, 2},
    {2, 3, 0, 1},
    {3, 2, 1, 0},
};
constexpr int kPhase[4][4] = {
    {0, 0, 0, 0},
    {0, 0, 1, 3},
    {0, 3, 0, 1},
    {0, 1, 3, 0},
};

const Complex kPhaseValue[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

}  // namespace

char pauli_letter_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

Pauli pauli_letter_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: throw std::invalid_argument(std::string("invalid Pauli letter '") + c + "'");
  }
}

PauliString::PauliString(std::vector<Pauli> letters, int phase_power)
    : letters_(std::move(letters)), phase_power_(((phase_power % 4) + 4) % 4) {
  if (letters_.empty()) {
    throw std::invalid_argument("PauliString: at least one letter required");
  }
}

PauliString PauliString::parse(std::string_view s) {
  int k = 0;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    if (s.front() == '-') k = 2;
    s.remove_prefix(1);
  }
  if (!s.empty() && s.front() == 'i') {
    k += 1;
    s.remove_prefix(1);
  }
  std::vector<Pauli> letters;
  for (char c : s) letters.push_back(pauli_letter_from_char(c));
  return PauliString(std::move(letters), k);
}

Complex PauliString::phase() const { return kPhaseValue[phase_power_]; }

std::string PauliString::str() const {
  std::string out = (phase_power_ >= 2) ? "-" : "+";
  if (phase_power_ % 2 == 1) out += 'i';
  for (Pauli p : letters_) out += pauli_letter_char(p);
  return out;
}

PauliString pauli_product(const PauliString& a, const PauliString& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("pauli_product: length mismatch");
  }
  std::vector<Pauli> letters(a.size());
  int k = a.phase_power() + b.phase_power();
  for (int q = 0; q < a.size(); ++q) {
    const int la = static_cast<int>(a.letters()[q]);
    const int lb = static_cast<int>(b.letters()[q]);
    letters[q] = static_cast<Pauli>(kLetter[la][lb]);
    k += kPhase[la][lb];
  }
  return PauliString(std::move(letters), k);
}

Operator pauli_string_matrix(const PauliString& p) {
  if (p.size() > 3) {
    throw std::invalid_argument("pauli_string_matrix: at most 3 qubits");
  }
  Operator m = sigma(static_cast<int>(p.letters()[0]));
  for (int q = 1; q < p.size(); ++q) {
    m = tensor_product(m, sigma(static_cast<int>(p.letters()[q])));
  }
  return p.phase() * m;
}

Operator exp_pauli_rotation(double angle, const PauliString& p) {
  if (!p.is_hermitian()) {
    throw std::invalid_argument("exp_pauli_rotation: phase must be +1 or -1");
  }
  const Operator m = pauli_string_matrix(p);
  const Eigen::Index d = m.rows();
  return std::cos(angle) * Operator::Identity(d, d) -
         Complex(0, 1) * std::sin(angle) * m;
}

std::size_t pauli_word_index(const std::vector<Pauli>& letters) {
  std::size_t idx = 0;
  for (Pauli p : letters) idx = idx * 4 + static_cast<std::size_t>(p);
  return idx;
}

std::vector<Pauli> pauli_word_letters(std::size_t index, int n_qubits) {
  std::vector<Pauli> letters(n_qubits);
  for (int q = n_qubits - 1; q >= 0; --q) {
    letters[q] = static_cast<Pauli>(index % 4);
    index /= 4;
  }
  return letters;
}

double PauliExpansion::coeff(const std::vector<Pauli>& letters) const {
  if (static_cast<int>(letters.size()) != n_qubits) {
    throw std::invalid_argument("PauliExpansion: word length mismatch");
  }
  return coeffs[pauli_word_index(letters)];
}

double& PauliExpansion::coeff(const std::vector<Pauli>& letters) {
  if (static_cast<int>(letters.size()) != n_qubits) {
    throw std::invalid_argument("PauliExpansion: word length mismatch");
  }
  return coeffs[pauli_word_index(letters)];
}

Operator PauliExpansion::reconstruct() const {
  const Eigen::Index d = Eigen::Index(1) << n_qubits;
  Operator m = Operator::Zero(d, d);
  for (std::size_t w = 0; w < coeffs.size(); ++w) {
    if (coeffs[w] == 0.0) continue;
    m += coeffs[w] *
         pauli_string_matrix(PauliString(pauli_word_letters(w, n_qubits)));
  }
  return m;
}

PauliExpansion pauli_expansion(const Operator& m) {
  const int n = qubit_count_for_dim(m.rows());
  PauliExpansion e;
  e.n_qubits = n;
  e.coeffs.resize(std::size_t(1) << (2 * n));
  for (std::size_t w = 0; w < e.coeffs.size(); ++w) {
    const Operator word =
        pauli_string_matrix(PauliString(pauli_word_letters(w, n)));
    e.coeffs[w] = (m * word).trace().real() / double(m.rows());
  }
  return e;
}

}  // namespace qec3
