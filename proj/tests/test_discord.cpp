#include "qec3/discord.hpp"

#include <gtest/gtest.h>

#include <numbers>

#include "qec3/qec.hpp"
#include "qec3/random.hpp"
#include "test_util.hpp"

namespace qec3 {
namespace {

using enum Pauli;
using testing::binary_entropy;
using testing::max_abs_diff;

constexpr double kPi = std::numbers::pi;

// Frozen with the eight-term sum evaluated by hand:
// 2 - (1/8)[2 log2 2 + 4 log2(4/3) + 2 log2(2/3)].
constexpr double kDiagonalConditionalEntropy = 1.688721875540867;
// (3/4) log2 3 - 1/2.
constexpr double kDiagonalDiscord = 0.688721875540867;

DensityMatrix codeword(const BlochVector& n) {
  return encode(bloch_to_density(n), DensityMatrix::maximally_mixed(2));
}

/// Dense-grid brute force over measurement directions, used as the oracle
/// for the minimizer. Uses the closed form, which criterion-level tests tie
/// to the numeric route independently.
double dense_grid_minimum(const BlochVector& n, int n_theta, int n_phi) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_theta; ++i) {
    for (int j = 0; j < n_phi; ++j) {
      best = std::min(best, conditional_entropy_closed_form(
                                n, MeasurementDirection::from_angles(
                                       i * kPi / (n_theta - 1),
                                       j * 2.0 * kPi / n_phi)));
    }
  }
  return best;
}

TEST(MeasurementDirection, ConstructionAndValidation) {
  EXPECT_THROW(MeasurementDirection::from_vector(0.5, 0, 0),
               std::invalid_argument);
  const MeasurementDirection m = MeasurementDirection::from_angles(kPi / 2, 0);
  EXPECT_NEAR(m.x, 1.0, 1e-15);
  EXPECT_NEAR(m.theta(), kPi / 2, 1e-12);
}

TEST(ProductMeasurement, ProjectorsSumToIdentity) {
  const ProductMeasurement pm = ProductMeasurement::pi_xz();
  Operator sum = Operator::Zero(4, 4);
  for (int s : {1, -1}) {
    for (int t : {1, -1}) {
      const BlochVector a{s * pm.a.x, s * pm.a.y, s * pm.a.z};
      const BlochVector b{t * pm.b.x, t * pm.b.y, t * pm.b.z};
      sum += tensor_product(bloch_to_density(a).matrix(),
                            bloch_to_density(b).matrix());
    }
  }
  EXPECT_NEAR(max_abs_diff(sum, Operator::Identity(4, 4)), 0.0, 1e-14);
}

TEST(ConditionalState, MatchesExplicitFourTermDisplay) {
  // rho_{2|+-} = (1/4)(II +- nx mx XI +- ny my XZ +- nz mz IZ).
  Sampler sampler(51);
  for (int k = 0; k < 20; ++k) {
    const BlochVector n =
        (k % 2 == 0) ? sampler.unit_vector() : sampler.bloch_in_ball();
    const MeasurementDirection m = [&] {
      const BlochVector u = sampler.unit_vector();
      return MeasurementDirection::from_vector(u.x, u.y, u.z);
    }();
    const DensityMatrix rho3 = codeword(n);
    double psum = 0.0;
    for (int sign : {1, -1}) {
      const ConditionalState cs = conditional_state_given_data(rho3, m, sign);
      psum += cs.probability;
      ASSERT_TRUE(cs.state.has_value());
      const double s = sign;
      const Operator expected =
          0.25 * (tensor_product(sigma(0), sigma(0)) +
                  s * n.x * m.x * tensor_product(sigma(1), sigma(0)) +
                  s * n.y * m.y * tensor_product(sigma(1), sigma(3)) +
                  s * n.z * m.z * tensor_product(sigma(0), sigma(3)));
      ASSERT_LE(max_abs_diff(cs.state->matrix(), expected), 1e-12);
    }
    EXPECT_NEAR(psum, 1.0, 1e-12);
  }
}

TEST(ConditionalState, MaximallyMixedData) {
  const DensityMatrix rho3 = codeword({0, 0, 0});
  const ConditionalState cs = conditional_state_given_data(
      rho3, MeasurementDirection::from_angles(1.1, 0.3), +1);
  EXPECT_NEAR(cs.probability, 0.5, 1e-12);
  EXPECT_LE(max_abs_diff(cs.state->matrix(), Operator::Identity(4, 4) / 4.0),
            1e-12);
}

TEST(ConditionalState, ZDataZMeasurement) {
  const DensityMatrix rho3 = codeword({0, 0, 1});
  const MeasurementDirection z = MeasurementDirection::from_vector(0, 0, 1);
  for (int sign : {1, -1}) {
    const ConditionalState cs = conditional_state_given_data(rho3, z, sign);
    EXPECT_NEAR(cs.probability, 0.5, 1e-12);
    const Operator expected =
        0.25 * (tensor_product(sigma(0), sigma(0)) +
                double(sign) * tensor_product(sigma(0), sigma(3)));
    EXPECT_LE(max_abs_diff(cs.state->matrix(), expected), 1e-12);
  }
}

TEST(ConditionalEntropy, NumericKnownValues) {
  const MeasurementDirection x = MeasurementDirection::from_vector(1, 0, 0);
  const MeasurementDirection z = MeasurementDirection::from_vector(0, 0, 1);
  EXPECT_NEAR(conditional_entropy_numeric(codeword({1, 0, 0}), x), 1.0, 1e-10);
  EXPECT_NEAR(conditional_entropy_numeric(codeword({1, 0, 0}), z), 2.0, 1e-10);
  EXPECT_NEAR(conditional_entropy_numeric(codeword({0, 0, 0}), x), 2.0, 1e-10);
}

TEST(ConditionalEntropy, ClosedFormKnownValues) {
  const MeasurementDirection x = MeasurementDirection::from_vector(1, 0, 0);
  EXPECT_NEAR(conditional_entropy_closed_form({1, 0, 0}, x), 1.0, 1e-14);
  const double r = 1.0 / std::sqrt(3.0);
  const MeasurementDirection diag = MeasurementDirection::from_vector(r, r, r);
  EXPECT_NEAR(conditional_entropy_closed_form({r, r, r}, diag),
              kDiagonalConditionalEntropy, 1e-12);
  EXPECT_NEAR(conditional_entropy_closed_form({0, 0, 0}, diag), 2.0, 1e-14);
}

TEST(ConditionalEntropy, ClosedFormAgreesWithNumeric) {
  Sampler sampler(52);
  for (int k = 0; k < 200; ++k) {
    const BlochVector n =
        (k % 2 == 0) ? sampler.unit_vector() : sampler.bloch_in_ball();
    const BlochVector u = sampler.unit_vector();
    const MeasurementDirection m =
        MeasurementDirection::from_vector(u.x, u.y, u.z);
    ASSERT_NEAR(conditional_entropy_numeric(codeword(n), m),
                conditional_entropy_closed_form(n, m), 1e-10);
  }
}

TEST(Minimize, AxisCodewords) {
  const MinimizeResult rx = minimize_conditional_entropy(codeword({1, 0, 0}));
  EXPECT_NEAR(rx.value, 1.0, 1e-8);
  EXPECT_NEAR(std::abs(rx.argmin.x), 1.0, 1e-4);

  const MinimizeResult rz = minimize_conditional_entropy(codeword({0, 0, 1}));
  EXPECT_NEAR(rz.value, 1.0, 1e-8);
  EXPECT_NEAR(std::abs(rz.argmin.z), 1.0, 1e-4);
}

TEST(Minimize, DiagonalCodeword) {
  const double r = 1.0 / std::sqrt(3.0);
  const MinimizeResult res = minimize_conditional_entropy(codeword({r, r, r}));
  EXPECT_NEAR(res.value, kDiagonalConditionalEntropy, 1e-8);
}

TEST(Minimize, NeverAboveDenseGridOracle) {
  Sampler sampler(53);
  for (int k = 0; k < 10; ++k) {
    const BlochVector n = sampler.unit_vector();
    const MinimizeResult res = minimize_conditional_entropy(codeword(n));
    EXPECT_LE(res.value, dense_grid_minimum(n, 256, 512) + 1e-12);
  }
}

TEST(LeftDiscord, VanishesOnAxes) {
  const BlochVector axes[6] = {{1, 0, 0},  {-1, 0, 0}, {0, 1, 0},
                               {0, -1, 0}, {0, 0, 1},  {0, 0, -1}};
  for (const BlochVector& n : axes) {
    const DiscordResult d = left_discord(n);
    EXPECT_GE(d.value, 0.0);
    EXPECT_LE(d.value, 1e-6);
  }
}

TEST(LeftDiscord, DiagonalMaxima) {
  const double r = 1.0 / std::sqrt(3.0);
  for (int s = 0; s < 8; ++s) {
    const BlochVector n{(s & 1) ? r : -r, (s & 2) ? r : -r, (s & 4) ? r : -r};
    EXPECT_NEAR(left_discord(n).value, kDiagonalDiscord, 1e-6);
  }
}

TEST(LeftDiscord, PureStateReducesToConditionalEntropyMinusOne) {
  Sampler sampler(54);
  for (int k = 0; k < 5; ++k) {
    const BlochVector n = sampler.unit_vector();
    const DiscordResult d = left_discord(n);
    const MinimizeResult m = minimize_conditional_entropy(codeword(n));
    EXPECT_NEAR(d.raw_value, m.value - 1.0, 1e-7);
  }
}

TEST(LeftDiscord, MaximallyMixedDataHasNoCorrelations) {
  EXPECT_NEAR(left_discord({0, 0, 0}).value, 0.0, 1e-9);
}

TEST(RightDiscord, VanishesEverywhere) {
  Sampler sampler(55);
  EXPECT_NEAR(right_discord({0, 0, 1}).value, 0.0, 1e-12);
  EXPECT_NEAR(right_discord({0, 0, 0}).value, 0.0, 1e-12);
  for (int k = 0; k < 50; ++k) {
    const BlochVector n =
        (k % 2 == 0) ? sampler.unit_vector() : sampler.bloch_in_ball();
    const RightDiscordResult r = right_discord(n);
    EXPECT_LE(std::abs(r.raw_value), 1e-9);
    EXPECT_GE(r.value, 0.0);
  }
}

TEST(RightDiscord, BlockDiagonalWitness) {
  // Rearranged by ancilla outcome the codeword is
  // sum p_{st} rho_{1|st} (x) Pi_{st} exactly.
  Sampler sampler(56);
  for (int k = 0; k < 10; ++k) {
    const BlochVector n =
        (k % 2 == 0) ? sampler.unit_vector() : sampler.bloch_in_ball();
    const DensityMatrix rho3 = codeword(n);
    Operator rebuilt = Operator::Zero(8, 8);
    for (int s : {1, -1}) {
      for (int t : {1, -1}) {
        const Eigen::Vector2cd pa =
            bloch_state({double(s), 0, 0});
        const Eigen::Vector2cd pb =
            bloch_state({0, 0, double(t)});
        Eigen::Vector4cd chi;
        chi << pa(0) * pb(0), pa(0) * pb(1), pa(1) * pb(0), pa(1) * pb(1);
        // Unnormalized conditional data block, computed directly.
        Operator block = Operator::Zero(2, 2);
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) {
            Complex sum = 0;
            for (int a = 0; a < 4; ++a)
              for (int c = 0; c < 4; ++c)
                sum += std::conj(chi(a)) * chi(c) *
                       rho3.matrix()(4 * i + a, 4 * j + c);
            block(i, j) = sum;
          }
        rebuilt += tensor_product(block, Operator(chi * chi.adjoint()));
      }
    }
    ASSERT_LE(max_abs_diff(rebuilt, rho3.matrix()), 1e-12);
  }
}

TEST(PureAncillae, KnownCodewords) {
  const PureAncillaDiscord dz = pure_ancilla_discord({0, 0, 1});
  EXPECT_NEAR(dz.left, 0.0, 1e-8);
  EXPECT_NEAR(dz.right, 0.0, 1e-8);

  const PureAncillaDiscord dx = pure_ancilla_discord({1, 0, 0});
  EXPECT_NEAR(dx.left, 1.0, 1e-6);
  EXPECT_NEAR(dx.right, 1.0, 1e-6);
}

TEST(PureAncillae, HalfZPureState) {
  // Reduced data state has eigenvalues (1 +- n_z)/2, so both discords equal
  // the binary entropy h(0.75) ~ 0.811.
  const double nz = 0.5;
  const double nx = std::sqrt(1.0 - nz * nz);
  const PureAncillaDiscord d = pure_ancilla_discord({nx, 0, nz});
  const double expected = binary_entropy((1.0 + nz) / 2.0);
  EXPECT_NEAR(expected, 0.8112781244591328, 1e-12);
  EXPECT_NEAR(d.left, expected, 1e-6);
  EXPECT_NEAR(d.right, expected, 1e-6);
}

TEST(PureAncillae, LeftEqualsRightOnPureStates) {
  Sampler sampler(57);
  for (int k = 0; k < 4; ++k) {
    const BlochVector n = sampler.unit_vector();
    const PureAncillaDiscord d = pure_ancilla_discord(n);
    EXPECT_NEAR(d.left, d.right, 1e-6);
  }
}

TEST(Surface, KnownValuesAndLowerBound) {
  const AngularDataset surf = discord_surface({1, 0, 0}, 17, 32);
  ASSERT_EQ(surf.rows.size(), 17u * 32u);
  double min_value = std::numeric_limits<double>::infinity();
  for (const AngularSample& row : surf.rows) {
    min_value = std::min(min_value, row.value);
    // m = x sits at theta = pi/2, phi = 0; m = z at theta = 0.
    if (std::abs(row.theta - kPi / 2) < 1e-12 && row.phi == 0.0) {
      EXPECT_NEAR(row.value, 0.0, 1e-10);
    }
    if (row.theta == 0.0) {
      EXPECT_NEAR(row.value, 1.0, 1e-10);
    }
  }
  EXPECT_GE(min_value, left_discord({1, 0, 0}).value - 1e-9);
}

TEST(Surface, ConstantForMaximallyMixedData) {
  for (const AngularSample& row : discord_surface({0, 0, 0}, 9, 16).rows) {
    EXPECT_NEAR(row.value, 0.0, 1e-12);
  }
}

TEST(Map, SymmetriesAndRange) {
  const AngularDataset map = discord_map(17, 32);
  ASSERT_EQ(map.rows.size(), 17u * 32u);
  const double log2_3 = std::log2(3.0);
  auto at = [&](int i, int j) { return map.rows[size_t(i) * 32 + j].value; };
  for (int i = 0; i < 17; ++i) {
    for (int j = 0; j < 32; ++j) {
      EXPECT_GE(at(i, j), 0.0);
      EXPECT_LE(at(i, j), log2_3);
      // Antipode: theta -> pi - theta, phi -> phi + pi.
      EXPECT_NEAR(at(i, j), at(16 - i, (j + 16) % 32), 1e-6);
    }
  }
  // Poles are discord zeros; the x axis sits on the grid at (8, 0).
  EXPECT_LE(at(0, 0), 1e-6);
  EXPECT_LE(at(16, 0), 1e-6);
  EXPECT_LE(at(8, 0), 1e-6);
  double max_value = 0.0;
  for (const AngularSample& row : map.rows) {
    max_value = std::max(max_value, row.value);
  }
  EXPECT_GT(max_value, 0.67);
  EXPECT_LE(max_value, 0.688721875540867 + 1e-9);
}

TEST(Map, DeterministicAcrossRuns) {
  // Grid points are pure functions merged in grid order, so parallel
  // execution must not change a single value.
  const AngularDataset a = discord_map(16, 32);
  const AngularDataset b = discord_map(16, 32);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (size_t k = 0; k < a.rows.size(); ++k) {
    ASSERT_EQ(a.rows[k].value, b.rows[k].value);
  }
}

TEST(Map, OctahedralSymmetryOfLeftDiscord) {
  Sampler sampler(58);
  const BlochVector n = sampler.unit_vector();
  const double base = left_discord(n).value;
  EXPECT_NEAR(left_discord({n.y, n.z, n.x}).value, base, 1e-6);
  EXPECT_NEAR(left_discord({-n.x, n.y, -n.z}).value, base, 1e-6);
  EXPECT_NEAR(left_discord({n.z, n.y, n.x}).value, base, 1e-6);
}

}  // namespace
}  // namespace qec3
