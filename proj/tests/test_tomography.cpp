#include "qec3/tomography.hpp"

#include <gtest/gtest.h>

#include "qec3/random.hpp"
#include "test_util.hpp"

namespace qec3 {
namespace {

using testing::basis_ket;
using testing::max_abs_diff;

/// Conjugation by a single-qubit unitary, as input/output pairs.
std::vector<std::pair<DensityMatrix, DensityMatrix>> conjugation_pairs(
    const Operator& u) {
  std::vector<std::pair<DensityMatrix, DensityMatrix>> pairs;
  for (const DensityMatrix& rho : prepare_input_states()) {
    pairs.emplace_back(rho, DensityMatrix(u * rho.matrix() * u.adjoint()));
  }
  return pairs;
}

/// PTM entries computed directly from the definition
/// R[i][j] = Tr(sigma_i M(sigma_j)) / 2 for a map given as Kraus operators.
PauliTransferMatrix ptm_from_kraus_oracle(
    const std::vector<Eigen::Matrix2cd>& kraus) {
  PauliTransferMatrix r;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      Complex sum = 0;
      for (const Eigen::Matrix2cd& a : kraus) {
        sum += (sigma(i) * a * sigma(j) * a.adjoint()).trace();
      }
      r.r(i, j) = sum.real() / 2.0;
    }
  }
  return r;
}

TEST(InputStates, InformationallyComplete) {
  const std::vector<DensityMatrix> states = prepare_input_states();
  ASSERT_EQ(states.size(), 4u);
  EXPECT_NEAR(max_abs_diff(states[0].matrix(),
                           basis_ket(2, 0) * basis_ket(2, 0).adjoint()),
              0.0, 1e-15);
  // Pairwise distinct.
  for (size_t a = 0; a < 4; ++a) {
    for (size_t b = a + 1; b < 4; ++b) {
      EXPECT_GT(max_abs_diff(states[a].matrix(), states[b].matrix()), 0.1);
    }
  }
  // The design matrix of Pauli coefficient vectors has full rank.
  Eigen::Matrix4d design;
  for (int k = 0; k < 4; ++k) {
    for (int i = 0; i < 4; ++i) {
      design(i, k) =
          (sigma(i) * states[k].matrix()).trace().real() / 2.0;
    }
  }
  EXPECT_TRUE(Eigen::FullPivLU<Eigen::Matrix4d>(design).isInvertible());
}

TEST(Pipeline, NoiselessIsIdentityForAllChannels) {
  Sampler sampler(61);
  const NoiseModel quiet{0.0, 0.0, 0};
  const ErrorChannel channels[3] = {ErrorChannel::no_error(),
                                    ErrorChannel::x1_error(),
                                    ErrorChannel::x2_error()};
  for (const ErrorChannel& ch : channels) {
    for (int k = 0; k < 5; ++k) {
      const DensityMatrix rho1 = sampler.density_matrix(1);
      EXPECT_LE(
          max_abs_diff(run_pipeline(rho1, ch, quiet).matrix(), rho1.matrix()),
          1e-10);
    }
  }
  const DensityMatrix zero = DensityMatrix::pure(basis_ket(2, 0));
  EXPECT_LE(max_abs_diff(
                run_pipeline(zero, ErrorChannel::x1_error(), quiet).matrix(),
                zero.matrix()),
            1e-10);
}

TEST(Pipeline, DepolarizingContractsPureInputs) {
  const NoiseModel noisy{0.05, 0.0, 0};
  for (const DensityMatrix& rho : prepare_input_states()) {
    const BlochVector in = density_to_bloch(rho);
    const BlochVector out =
        density_to_bloch(run_pipeline(rho, ErrorChannel::no_error(), noisy));
    EXPECT_LT(out.norm(), in.norm() - 1e-4);
  }
}

TEST(ReconstructPtm, IdentityPipeline) {
  std::vector<std::pair<DensityMatrix, DensityMatrix>> pairs;
  for (const DensityMatrix& rho : prepare_input_states()) {
    pairs.emplace_back(rho, rho);
  }
  EXPECT_LE(
      max_abs_diff(Operator(reconstruct_ptm(pairs).r.cast<Complex>()),
                   Operator(Eigen::Matrix4cd::Identity())),
      1e-12);
}

TEST(ReconstructPtm, SigmaZConjugation) {
  const PauliTransferMatrix r = reconstruct_ptm(conjugation_pairs(sigma(3)));
  Eigen::Matrix4d expected = Eigen::Matrix4d::Zero();
  expected.diagonal() << 1, -1, -1, 1;
  EXPECT_LE((r.r - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ReconstructPtm, TrainingPairsReproduce) {
  // Linear inversion is exact on the map that produced the pairs.
  Sampler sampler(62);
  const NoiseModel noisy{0.03, 0.01, 7};
  std::vector<std::pair<DensityMatrix, DensityMatrix>> pairs;
  for (const DensityMatrix& rho : prepare_input_states()) {
    pairs.emplace_back(rho,
                       run_pipeline(rho, ErrorChannel::x1_error(), noisy));
  }
  const PauliTransferMatrix r = reconstruct_ptm(pairs);
  for (const auto& [in, out] : pairs) {
    Eigen::Vector4d cin, cout;
    for (int i = 0; i < 4; ++i) {
      cin(i) = (sigma(i) * in.matrix()).trace().real() / 2.0;
      cout(i) = (sigma(i) * out.matrix()).trace().real() / 2.0;
    }
    EXPECT_LE((r.r * cin - cout).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(ReconstructPtm, NoiselessPipelineIsIdentityForRandomChannels) {
  Sampler sampler(64);
  const NoiseModel quiet{0.0, 0.0, 0};
  for (int k = 0; k < 20; ++k) {
    const ErrorChannel ch = sampler.channel();
    std::vector<std::pair<DensityMatrix, DensityMatrix>> pairs;
    for (const DensityMatrix& rho : prepare_input_states()) {
      pairs.emplace_back(rho, run_pipeline(rho, ch, quiet));
    }
    ASSERT_LE((reconstruct_ptm(pairs).r - Eigen::Matrix4d::Identity())
                  .cwiseAbs()
                  .maxCoeff(),
              1e-10);
  }
}

TEST(ReconstructPtm, RejectsSingularDesign) {
  const DensityMatrix zero = DensityMatrix::pure(basis_ket(2, 0));
  std::vector<std::pair<DensityMatrix, DensityMatrix>> pairs(
      4, {zero, zero});
  EXPECT_THROW(reconstruct_ptm(pairs), std::invalid_argument);
}

TEST(ChiConversions, KnownMaps) {
  PauliTransferMatrix identity;
  const ChiMatrix chi_id = ptm_to_chi(identity);
  Eigen::Matrix4cd expected = Eigen::Matrix4cd::Zero();
  expected(0, 0) = 1.0;
  EXPECT_LE(max_abs_diff(Operator(chi_id.chi), Operator(expected)), 1e-12);

  // Conjugation by sigma_x: PTM diag(1, 1, -1, -1), chi = diag(0,1,0,0).
  const PauliTransferMatrix rx = reconstruct_ptm(conjugation_pairs(sigma(1)));
  const ChiMatrix chi_x = ptm_to_chi(rx);
  expected.setZero();
  expected(1, 1) = 1.0;
  EXPECT_LE(max_abs_diff(Operator(chi_x.chi), Operator(expected)), 1e-12);
}

TEST(ChiConversions, DepolarizingClosedForm) {
  const double p = 0.13;
  PauliTransferMatrix r;
  r.r = Eigen::Matrix4d::Zero();
  r.r.diagonal() << 1, 1 - p, 1 - p, 1 - p;
  const ChiMatrix chi = ptm_to_chi(r);
  Eigen::Matrix4cd expected = Eigen::Matrix4cd::Zero();
  expected.diagonal() << 1 - 3.0 * p / 4.0, p / 4.0, p / 4.0, p / 4.0;
  EXPECT_LE(max_abs_diff(Operator(chi.chi), Operator(expected)), 1e-12);
}

TEST(ChiConversions, RoundTripOnPhysicalMaps) {
  // Random mixtures of unitary conjugations, PTM computed by the oracle.
  Sampler sampler(63);
  for (int k = 0; k < 10; ++k) {
    const double angle = sampler.uniform() * 3.0;
    const BlochVector axis = sampler.unit_vector();
    const Operator gen =
        axis.x * sigma(1) + axis.y * sigma(2) + axis.z * sigma(3);
    const Operator u = std::cos(angle) * sigma(0) -
                       Complex(0, 1) * std::sin(angle) * gen;
    const double w = sampler.uniform();
    std::vector<Eigen::Matrix2cd> kraus = {std::sqrt(w) * u,
                                           std::sqrt(1.0 - w) * sigma(0)};
    const PauliTransferMatrix r = ptm_from_kraus_oracle(kraus);
    const PauliTransferMatrix back = chi_to_ptm(ptm_to_chi(r));
    ASSERT_LE((back.r - r.r).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(ChiToKraus, CompletenessAndAction) {
  const NoiseModel noisy{0.04, 0.0, 3};
  const TomographyReport report =
      tomography_experiment(ErrorChannel::x2_error(), noisy);
  Eigen::Matrix2cd completeness = Eigen::Matrix2cd::Zero();
  for (const Eigen::Matrix2cd& a : report.kraus.ops) {
    completeness += a.adjoint() * a;
  }
  EXPECT_LE(
      max_abs_diff(Operator(completeness), Operator(sigma(0))), 1e-8);
  // The Kraus action reproduces the PTM on all four Pauli inputs.
  const PauliTransferMatrix from_kraus = ptm_from_kraus_oracle(report.kraus.ops);
  EXPECT_LE((from_kraus.r - report.ptm.r).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_FALSE(report.kraus.nonphysical_flagged);
}

TEST(ChiToKraus, FlagsStronglyNonphysicalMaps) {
  ChiMatrix chi;
  chi.chi.setZero();
  chi.chi.diagonal() << 1.001, 0.0005, 0.0005, -0.002;
  const KrausDecomposition k = chi_to_kraus(chi);
  EXPECT_TRUE(k.nonphysical_flagged);
  EXPECT_LT(k.min_eigenvalue, -1e-6);
  // Clamped extraction drops the negative direction.
  EXPECT_EQ(k.ops.size(), 3u);
}

TEST(Pipeline, RejectsInvalidNoiseStrengths) {
  const DensityMatrix zero = DensityMatrix::pure(basis_ket(2, 0));
  EXPECT_THROW(
      run_pipeline(zero, ErrorChannel::no_error(), NoiseModel{1.5, 0.0, 0}),
      std::invalid_argument);
  EXPECT_THROW(
      run_pipeline(zero, ErrorChannel::no_error(), NoiseModel{0.0, -0.1, 0}),
      std::invalid_argument);
}

TEST(FiguresOfMerit, KnownValues) {
  PauliTransferMatrix identity;
  EXPECT_NEAR(entanglement_fidelity(ptm_to_chi(identity)), 1.0, 1e-12);
  EXPECT_NEAR(map_trace(identity), 1.0, 1e-12);
  const PauliTransferMatrix rx = reconstruct_ptm(conjugation_pairs(sigma(1)));
  EXPECT_NEAR(entanglement_fidelity(ptm_to_chi(rx)), 0.0, 1e-12);
  EXPECT_NEAR(map_trace(rx), 1.0, 1e-12);
}

TEST(SphereMapping, IdentityAndDepolarizing) {
  PauliTransferMatrix identity;
  for (const SphereMeshRow& row : sphere_mapping(identity, 9, 16).rows) {
    EXPECT_NEAR(row.out.x, row.in.x, 1e-14);
    EXPECT_NEAR(row.out.y, row.in.y, 1e-14);
    EXPECT_NEAR(row.out.z, row.in.z, 1e-14);
  }
  const double p = 0.3;
  PauliTransferMatrix depol;
  depol.r = Eigen::Matrix4d::Zero();
  depol.r.diagonal() << 1, 1 - p, 1 - p, 1 - p;
  for (const SphereMeshRow& row : sphere_mapping(depol, 9, 16).rows) {
    EXPECT_NEAR(row.out.norm(), 1.0 - p, 1e-12);
  }
}

TEST(SphereMapping, PhysicalMapsNeverInflate) {
  const NoiseModel noisy{0.06, 0.02, 5};
  const TomographyReport report =
      tomography_experiment(ErrorChannel::x1_error(), noisy);
  for (const SphereMeshRow& row : report.mesh.rows) {
    EXPECT_LE(row.out.norm(), row.in.norm() + 1e-9);
  }
}

TEST(Experiment, IdealChannelsGiveUnitFigures) {
  const NoiseModel quiet{0.0, 0.0, 0};
  const ErrorChannel channels[3] = {ErrorChannel::no_error(),
                                    ErrorChannel::x1_error(),
                                    ErrorChannel::x2_error()};
  for (const ErrorChannel& ch : channels) {
    const TomographyReport report = tomography_experiment(ch, quiet);
    EXPECT_LE(max_abs_diff(Operator(report.ptm.r.cast<Complex>()),
                           Operator(Eigen::Matrix4cd::Identity())),
              1e-10);
    EXPECT_NEAR(report.entanglement_fidelity, 1.0, 1e-9);
    EXPECT_NEAR(report.map_trace, 1.0, 1e-9);
  }
}

TEST(Experiment, NoisyFidelityIsDegradedButBounded) {
  const NoiseModel noisy{0.05, 0.0, 11};
  const TomographyReport report =
      tomography_experiment(ErrorChannel::x1_error(), noisy);
  EXPECT_GT(report.entanglement_fidelity, 0.5);
  EXPECT_LT(report.entanglement_fidelity, 1.0);
}

TEST(Experiment, FidelityMonotoneInDepolarizingStrength) {
  double prev = 1.1;
  for (double s : {0.0, 0.05, 0.10}) {
    const NoiseModel noise{s, 0.0, 17};
    const TomographyReport report =
        tomography_experiment(ErrorChannel::x2_error(), noise);
    EXPECT_LE(report.entanglement_fidelity, prev + 1e-12);
    prev = report.entanglement_fidelity;
  }
}

}  // namespace
}  // namespace qec3
