#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qec3/qec.hpp"

namespace qec3 {

struct CheckResult {
  std::string name;
  bool pass = false;
  double max_error = 0.0;
  nlohmann::json detail;
};

struct VerificationReport {
  std::uint64_t seed = 0;
  bool pass = false;
  std::vector<CheckResult> checks;

  nlohmann::json to_json() const;
};

/// The invariant suite behind `verify`: encoder factorization against the
/// M_i table, 200 random round trips, the maximally-mixed fixed point, the
/// four-term mixture identity, the codeword closed form and the logical
/// gate algebra. `flipped_debug` deliberately mis-orients the CNOTs so the
/// factorization check fails.
VerificationReport run_verification(
    std::uint64_t seed,
    EncoderOrientation orientation = EncoderOrientation::canonical);

}  // namespace qec3
