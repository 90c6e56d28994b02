#include "qec3/verify.hpp"

#include <cmath>

#include "qec3/random.hpp"

namespace qec3 {

namespace {

CheckResult check_encoder_factorization(EncoderOrientation o) {
  CheckResult c{"encoder_factorization", true, 0.0, {}};
  try {
    for (int i = 1; i <= 3; ++i) {
      const EncoderFactorization f = derive_error_factor(i, o);
      const std::string key = "M" + std::to_string(i);
      c.detail[key] = f.factor.str();
      c.max_error = std::max(c.max_error, f.residual);
      if (!(f.factor == error_factor_table(i))) c.pass = false;
    }
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail["error"] = e.what();
  }
  if (c.max_error > 1e-12) c.pass = false;
  return c;
}

CheckResult check_roundtrip_identity(Sampler& sampler) {
  CheckResult c{"qec_roundtrip_identity", true, 0.0, {}};
  double max_td = 0.0, max_residue = 0.0;
  for (int k = 0; k < 200; ++k) {
    const RoundTripReport r = roundtrip(sampler.density_matrix(1),
                                        sampler.density_matrix(2),
                                        sampler.channel());
    max_td = std::max(max_td, r.trace_distance_to_input);
    max_residue = std::max(max_residue, r.residue_deviation);
  }
  c.detail["samples"] = 200;
  c.detail["max_trace_distance"] = max_td;
  c.detail["max_residue_deviation"] = max_residue;
  c.max_error = std::max(max_td, max_residue);
  c.pass = max_td <= 1e-10 && max_residue <= 1e-10;
  return c;
}

CheckResult check_fixed_point(Sampler& sampler) {
  CheckResult c{"fixed_point_mixed_ancillae", true, 0.0, {}};
  const Operator ur = recovery_unitary();
  for (int k = 0; k < 50; ++k) {
    const DensityMatrix rho1 = sampler.density_matrix(1);
    const Operator in8 =
        tensor_product(rho1.matrix(), Operator::Identity(4, 4) / 4.0);
    const DensityMatrix noisy = apply_error_channel(
        encode(rho1, DensityMatrix::maximally_mixed(2)), sampler.channel());
    const Operator out8 = ur * noisy.matrix() * ur.adjoint();
    c.max_error = std::max(c.max_error, (out8 - in8).norm());
  }
  c.detail["samples"] = 50;
  c.pass = c.max_error <= 1e-12;
  return c;
}

CheckResult check_uniform_mixture(Sampler& sampler) {
  CheckResult c{"uniform_mixture_identity", true, 0.0, {}};
  const Operator target = Operator::Identity(4, 4) / 4.0;
  for (int k = 0; k < 100; ++k) {
    const DensityMatrix mix =
        uniform_mixture_check(sampler.unit_vector(), sampler.unit_vector());
    c.max_error = std::max(c.max_error, (mix.matrix() - target).norm());
  }
  c.detail["samples"] = 100;
  c.pass = c.max_error <= 1e-12;
  return c;
}

CheckResult check_codeword_closed_form(Sampler& sampler) {
  CheckResult c{"codeword_closed_form", true, 0.0, {}};
  int bad_support = 0;
  for (int k = 0; k < 100; ++k) {
    const BlochVector n =
        (k % 2 == 0) ? sampler.unit_vector() : sampler.bloch_in_ball();
    const PauliExpansion numeric = pauli_expansion(
        encode(bloch_to_density(n), DensityMatrix::maximally_mixed(2))
            .matrix());
    const PauliExpansion closed = encoded_state_closed_form(n);
    for (std::size_t w = 0; w < numeric.coeffs.size(); ++w) {
      c.max_error =
          std::max(c.max_error, std::abs(numeric.coeffs[w] - closed.coeffs[w]));
    }
    int support = 0;
    for (double v : numeric.coeffs) {
      if (std::abs(v) > 1e-12) ++support;
    }
    if (support != 4) ++bad_support;  // generic n: III, XXI, YXZ, ZIZ only
  }
  c.detail["samples"] = 100;
  c.detail["wrong_support_count"] = bad_support;
  c.pass = c.max_error <= 1e-12 && bad_support == 0;
  return c;
}

CheckResult check_logical_algebra(Sampler& sampler) {
  CheckResult c{"logical_gate_algebra", true, 0.0, {}};
  const Operator ue = encoder_unitary();
  const char axes[3] = {'x', 'y', 'z'};
  const char* expected[3] = {"+XXI", "+YXZ", "+ZIZ"};
  for (int a = 0; a < 3; ++a) {
    const LogicalGate gate = logical_pauli(axes[a]);
    c.detail[std::string("L") + axes[a]] = gate.physical.str();
    if (!(gate.physical == PauliString::parse(expected[a]))) c.pass = false;
    const Operator conj =
        ue * tensor_product(gate.logical, Operator::Identity(4, 4)) *
        ue.adjoint();
    c.max_error = std::max(
        c.max_error, (conj - pauli_string_matrix(gate.physical)).norm());
  }
  // su(2): [L_a, L_b] = 2i L_c cyclically.
  for (int a = 0; a < 3; ++a) {
    const Operator la = pauli_string_matrix(logical_pauli(axes[a]).physical);
    const Operator lb =
        pauli_string_matrix(logical_pauli(axes[(a + 1) % 3]).physical);
    const Operator lc =
        pauli_string_matrix(logical_pauli(axes[(a + 2) % 3]).physical);
    c.max_error = std::max(
        c.max_error, (la * lb - lb * la - Complex(0, 2) * lc).norm());
    c.max_error =
        std::max(c.max_error, (la * la - Operator::Identity(8, 8)).norm());
  }
  // Rotations agree with the conjugated single-qubit rotation.
  for (char axis : axes) {
    const int pauli_index = axis - 'x' + 1;
    for (int k = 0; k < 20; ++k) {
      const double angle = (sampler.uniform() - 0.5) * 4.0 * 3.141592653589793;
      const Operator single =
          std::cos(angle) * sigma(0) -
          Complex(0, 1) * std::sin(angle) * sigma(pauli_index);
      const Operator conj =
          ue * tensor_product(single, Operator::Identity(4, 4)) * ue.adjoint();
      c.max_error = std::max(
          c.max_error, (logical_rotation(axis, angle) - conj).norm());
    }
  }
  if (c.max_error > 1e-12) c.pass = false;
  return c;
}

}  // namespace

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json checks_json = nlohmann::json::array();
  for (const CheckResult& c : checks) {
    checks_json.push_back({{"name", c.name},
                           {"pass", c.pass},
                           {"max_error", c.max_error},
                           {"detail", c.detail}});
  }
  return {{"seed", seed}, {"pass", pass}, {"checks", checks_json}};
}

VerificationReport run_verification(std::uint64_t seed,
                                    EncoderOrientation orientation) {
  Sampler sampler(seed);
  VerificationReport report;
  report.seed = seed;
  report.checks.push_back(check_encoder_factorization(orientation));
  report.checks.push_back(check_roundtrip_identity(sampler));
  report.checks.push_back(check_fixed_point(sampler));
  report.checks.push_back(check_uniform_mixture(sampler));
  report.checks.push_back(check_codeword_closed_form(sampler));
  report.checks.push_back(check_logical_algebra(sampler));
  report.pass = true;
  for (const CheckResult& c : report.checks) report.pass = report.pass && c.pass;
  return report;
}

}  // namespace qec3
