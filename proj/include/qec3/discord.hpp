#pragma once

#include <optional>
#include <vector>

#include "qec3/linalg.hpp"

namespace qec3 {

/// Unit 3-vector m defining the projective measurement {|+m>, |-m>}.
struct MeasurementDirection {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;

  /// Validates |m| = 1 within 1e-12.
  static MeasurementDirection from_vector(double x, double y, double z);
  static MeasurementDirection from_angles(double theta, double phi);

  double theta() const;
  double phi() const;
  BlochVector bloch() const { return {x, y, z}; }
};

/// Rank-1 product projective measurement |+-a> (x) |+-b> on the ancillae.
struct ProductMeasurement {
  MeasurementDirection a;  // ancilla qubit 2
  MeasurementDirection b;  // ancilla qubit 3

  /// The block-diagonalizing choice a = x, b = z.
  static ProductMeasurement pi_xz();
};

/// One branch of the data-qubit measurement: outcome probability and the
/// ancilla state rho_{2|+-}. The state is absent when the branch
/// probability falls below 1e-14.
struct ConditionalState {
  double probability = 0.0;
  std::optional<DensityMatrix> state;
};

/// rho_{2|+-} = <+-m| rho3 |+-m> / p_{+-} for sign = +1 / -1.
ConditionalState conditional_state_given_data(const DensityMatrix& rho3,
                                              const MeasurementDirection& m,
                                              int sign);

/// S_{|+-m>}(2|1) = sum_{+-} p_{+-} S(rho_{2|+-}), in bits.
double conditional_entropy_numeric(const DensityMatrix& rho3,
                                   const MeasurementDirection& m);

/// Closed form for the uniformly-mixed-ancilla codeword:
/// 2 - (1/8) sum_{j=1}^{8} (1 + n.n_j) log2(1 + n.n_j) with
/// n_j = (+-m_x, +-m_y, +-m_z).
double conditional_entropy_closed_form(const BlochVector& n,
                                       const MeasurementDirection& m);

/// sum over the four outcomes of p S(rho_{1|outcome}) for a product
/// measurement on the ancillae.
double product_conditional_entropy(const DensityMatrix& rho3,
                                   const ProductMeasurement& pm);

/// Coarse grid over (theta_m, phi_m) followed by Nelder-Mead refinement
/// from the best few well-separated cells.
struct MinimizeOptions {
  int n_theta = 64;
  int n_phi = 128;
  int starts = 5;
  double f_tol = 1e-9;
  int max_iter = 400;
};

struct MinimizeResult {
  double value = 0.0;
  MeasurementDirection argmin;
  int iterations = 0;  // total refinement iterations over all starts
};

/// min over |m| = 1 of S_{|+-m>}(2|1), evaluated numerically; valid for any
/// 3-qubit state. The returned value never exceeds any grid sample.
MinimizeResult minimize_conditional_entropy(const DensityMatrix& rho3,
                                            const MinimizeOptions& opts = {});

struct DiscordResult {
  double value = 0.0;      // clamped at 0 when within -1e-9
  double raw_value = 0.0;  // before clamping
  MeasurementDirection argmin;
  int grid_theta = 0;
  int grid_phi = 0;
  int refine_iterations = 0;
};

/// D(2:1) = S(rho~1) - S(rho~3) + S~(2|1) of the uniformly-mixed-ancilla
/// codeword for data Bloch vector n (|n| <= 1, mixed states included).
DiscordResult left_discord(const BlochVector& n,
                           const MinimizeOptions& opts = {});

struct RightDiscordResult {
  double value = 0.0;
  double raw_value = 0.0;
  ProductMeasurement measurement;
};

/// D(1:2) evaluated with the product measurement a = x, b = z, which
/// block-diagonalizes the codeword and attains 0 for every n.
RightDiscordResult right_discord(const BlochVector& n);

/// Left and right discord of the codeword built on pure |z up, z up>
/// ancillae; for pure n both equal the entanglement entropy across the
/// data/ancilla cut. Left minimizes over all directions, right over a
/// coarse grid of product measurements.
struct PureAncillaDiscord {
  double left = 0.0;
  double right = 0.0;
};

PureAncillaDiscord pure_ancilla_discord(const BlochVector& n);

struct AngularSample {
  double theta = 0.0;
  double phi = 0.0;
  double value = 0.0;
};

/// Rows over an inclusive theta grid [0, pi] and periodic phi grid [0, 2pi).
struct AngularDataset {
  int n_theta = 0;
  int n_phi = 0;
  std::vector<AngularSample> rows;  // theta-major order
};

/// D_{|+-m>}(2:1) = S(rho~1) - S(rho~3) + S_{|+-m>}(2|1) over a grid of
/// measurement directions m(theta, phi), for the codeword of n.
AngularDataset discord_surface(const BlochVector& n, int n_theta, int n_phi);

/// D(2:1) over a grid of pure data directions n(theta, phi).
AngularDataset discord_map(int n_theta, int n_phi,
                           const MinimizeOptions& opts = {});

}  // namespace qec3
