#include "qec3/discord.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "qec3/qec.hpp"

namespace qec3 {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kClampWindow = 1e-9;

double clamp_discord(double raw) {
  return (raw < 0.0 && raw >= -kClampWindow) ? 0.0 : raw;
}

/// <psi| rho3 |psi> on the data qubit: the unnormalized 4x4 ancilla block.
Eigen::Matrix4cd project_data(const Operator& rho3,
                              const Eigen::Vector2cd& psi) {
  Eigen::Matrix4cd b = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      b += std::conj(psi(i)) * psi(j) * rho3.block<4, 4>(4 * i, 4 * j);
  return b;
}

/// <chi| rho3 |chi> on the ancillae: the unnormalized 2x2 data block.
Eigen::Matrix2cd project_ancilla(const Operator& rho3,
                                 const Eigen::Vector4cd& chi) {
  Eigen::Matrix2cd b = Eigen::Matrix2cd::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Complex sum = 0;
      for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c)
          sum += std::conj(chi(a)) * chi(c) * rho3(4 * i + a, 4 * j + c);
      b(i, j) = sum;
    }
  return b;
}

/// p * S(block / p) with eigenvalues clamped at zero; 0 when the branch
/// probability is below the degeneracy threshold.
template <typename Matrix>
double branch_entropy_weighted(const Matrix& block) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(block, Eigen::EigenvaluesOnly);
  double p = 0.0;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    p += std::max(solver.eigenvalues()(k), 0.0);
  }
  if (p <= kDegenerateBranchProb) return 0.0;
  double s = 0.0;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    const double lam = std::max(solver.eigenvalues()(k), 0.0) / p;
    if (lam > 0.0) s -= lam * std::log2(lam);
  }
  return p * s;
}

struct NelderMeadResult {
  std::vector<double> x;
  double f = 0.0;
  int iterations = 0;
};

/// Plain Nelder-Mead with standard coefficients; stops when the simplex
/// function values agree within f_tol.
NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x0, const std::vector<double>& step,
    double f_tol, int max_iter) {
  const int n = static_cast<int>(x0.size());
  std::vector<std::vector<double>> x(n + 1, x0);
  for (int i = 0; i < n; ++i) x[i + 1][i] += step[i];
  std::vector<double> fx(n + 1);
  for (int i = 0; i <= n; ++i) fx[i] = f(x[i]);

  std::vector<int> idx(n + 1);
  std::vector<double> xc(n), xr(n), xe(n), xk(n);
  int it = 0;
  for (; it < max_iter; ++it) {
    for (int i = 0; i <= n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return fx[a] < fx[b]; });
    if (fx[idx[n]] - fx[idx[0]] <= f_tol) break;

    for (int j = 0; j < n; ++j) xc[j] = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) xc[j] += x[idx[i]][j] / n;

    const std::vector<double>& xw = x[idx[n]];
    for (int j = 0; j < n; ++j) xr[j] = xc[j] + (xc[j] - xw[j]);
    const double fr = f(xr);

    if (fr < fx[idx[0]]) {
      for (int j = 0; j < n; ++j) xe[j] = xc[j] + 2.0 * (xr[j] - xc[j]);
      const double fe = f(xe);
      if (fe < fr) {
        x[idx[n]] = xe;
        fx[idx[n]] = fe;
      } else {
        x[idx[n]] = xr;
        fx[idx[n]] = fr;
      }
      continue;
    }
    if (fr < fx[idx[n - 1]]) {
      x[idx[n]] = xr;
      fx[idx[n]] = fr;
      continue;
    }
    if (fr < fx[idx[n]]) {
      for (int j = 0; j < n; ++j) xk[j] = xc[j] + 0.5 * (xr[j] - xc[j]);
    } else {
      for (int j = 0; j < n; ++j) xk[j] = xc[j] + 0.5 * (xw[j] - xc[j]);
    }
    const double fk = f(xk);
    if (fk < fx[idx[n]]) {
      x[idx[n]] = xk;
      fx[idx[n]] = fk;
      continue;
    }
    for (int i = 1; i <= n; ++i) {
      for (int j = 0; j < n; ++j)
        x[idx[i]][j] = x[idx[0]][j] + 0.5 * (x[idx[i]][j] - x[idx[0]][j]);
      fx[idx[i]] = f(x[idx[i]]);
    }
  }
  int best = 0;
  for (int i = 1; i <= n; ++i)
    if (fx[i] < fx[best]) best = i;
  return NelderMeadResult{x[best], fx[best], it};
}

struct SphereMinimum {
  double value = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  int iterations = 0;
};

/// Coarse (theta, phi) grid followed by Nelder-Mead restarts from the best
/// well-separated cells. The result never exceeds any grid sample.
SphereMinimum minimize_on_sphere(
    const std::function<double(double, double)>& f,
    const MinimizeOptions& opts) {
  if (opts.n_theta < 2 || opts.n_phi < 2) {
    throw std::invalid_argument("minimize_on_sphere: grid too small");
  }
  const double dtheta = kPi / (opts.n_theta - 1);
  const double dphi = 2.0 * kPi / opts.n_phi;

  struct Cell {
    double value, theta, phi;
  };
  std::vector<Cell> cells;
  cells.reserve(size_t(opts.n_theta) * size_t(opts.n_phi));
  for (int i = 0; i < opts.n_theta; ++i) {
    const double theta = i * dtheta;
    for (int j = 0; j < opts.n_phi; ++j) {
      const double phi = j * dphi;
      cells.push_back({f(theta, phi), theta, phi});
    }
  }
  std::sort(cells.begin(), cells.end(),
            [](const Cell& a, const Cell& b) { return a.value < b.value; });

  // Multistart seeds with a minimum angular separation so the restarts land
  // in distinct basins of the (symmetric) objective.
  constexpr double kMinSeparation = 0.35;
  std::vector<Cell> seeds;
  for (const Cell& c : cells) {
    if (static_cast<int>(seeds.size()) >= opts.starts) break;
    const BlochVector mc = BlochVector::spherical(c.theta, c.phi);
    bool separated = true;
    for (const Cell& s : seeds) {
      const BlochVector ms = BlochVector::spherical(s.theta, s.phi);
      if (std::acos(std::clamp(mc.dot(ms), -1.0, 1.0)) < kMinSeparation) {
        separated = false;
        break;
      }
    }
    if (separated) seeds.push_back(c);
  }

  SphereMinimum best{cells.front().value, cells.front().theta,
                     cells.front().phi, 0};
  for (const Cell& seed : seeds) {
    auto objective = [&f](const std::vector<double>& x) {
      return f(x[0], x[1]);
    };
    NelderMeadResult r =
        nelder_mead(objective, {seed.theta, seed.phi}, {dtheta, dphi},
                    opts.f_tol, opts.max_iter);
    best.iterations += r.iterations;
    if (r.f < best.value) {
      best.value = r.f;
      best.theta = r.x[0];
      best.phi = r.x[1];
    }
  }
  return best;
}

void parallel_rows(int n_rows, const std::function<void(int)>& row_fn) {
  unsigned workers = std::thread::hardware_concurrency();
  if (workers < 2 || n_rows < 4) {
    for (int i = 0; i < n_rows; ++i) row_fn(i);
    return;
  }
  workers = std::min(workers, 8u);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (int i = static_cast<int>(w); i < n_rows;
           i += static_cast<int>(workers)) {
        row_fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

DensityMatrix mixed_ancilla_codeword(const BlochVector& n) {
  return encode(bloch_to_density(n), DensityMatrix::maximally_mixed(2));
}

}  // namespace

MeasurementDirection MeasurementDirection::from_vector(double x, double y,
                                                       double z) {
  const double r = std::sqrt(x * x + y * y + z * z);
  if (std::abs(r - 1.0) > kUnitNormTol) {
    throw std::invalid_argument("MeasurementDirection: |m| must be 1");
  }
  return MeasurementDirection{x / r, y / r, z / r};
}

MeasurementDirection MeasurementDirection::from_angles(double theta,
                                                       double phi) {
  const BlochVector v = BlochVector::spherical(theta, phi);
  return MeasurementDirection{v.x, v.y, v.z};
}

double MeasurementDirection::theta() const {
  return std::acos(std::clamp(z, -1.0, 1.0));
}

double MeasurementDirection::phi() const { return std::atan2(y, x); }

ProductMeasurement ProductMeasurement::pi_xz() {
  return {MeasurementDirection{1, 0, 0}, MeasurementDirection{0, 0, 1}};
}

ConditionalState conditional_state_given_data(const DensityMatrix& rho3,
                                              const MeasurementDirection& m,
                                              int sign) {
  if (rho3.dim() != 8) {
    throw std::invalid_argument("conditional_state_given_data: 3-qubit state required");
  }
  if (sign != 1 && sign != -1) {
    throw std::invalid_argument("conditional_state_given_data: sign must be +-1");
  }
  BlochVector dir = m.bloch();
  if (sign < 0) dir = -dir;
  const Eigen::Matrix4cd block = project_data(rho3.matrix(), bloch_state(dir));
  const double p = block.trace().real();
  if (p <= kDegenerateBranchProb) return ConditionalState{p, std::nullopt};
  return ConditionalState{p, DensityMatrix(block / p)};
}

double conditional_entropy_numeric(const DensityMatrix& rho3,
                                   const MeasurementDirection& m) {
  if (rho3.dim() != 8) {
    throw std::invalid_argument("conditional_entropy_numeric: 3-qubit state required");
  }
  const Eigen::Vector2cd plus = bloch_state(m.bloch());
  const Eigen::Vector2cd minus = bloch_state(-m.bloch());
  return branch_entropy_weighted(project_data(rho3.matrix(), plus)) +
         branch_entropy_weighted(project_data(rho3.matrix(), minus));
}

double conditional_entropy_closed_form(const BlochVector& n,
                                       const MeasurementDirection& m) {
  if (n.norm() > 1.0 + kUnitNormTol) {
    throw std::invalid_argument("conditional_entropy_closed_form: |n| > 1");
  }
  const double ax = n.x * m.x, ay = n.y * m.y, az = n.z * m.z;
  double sum = 0.0;
  for (int s = 0; s < 8; ++s) {
    const double v = (s & 1 ? ax : -ax) + (s & 2 ? ay : -ay) + (s & 4 ? az : -az);
    const double w = 1.0 + v;
    if (w > 0.0) sum += w * std::log2(w);
  }
  return 2.0 - sum / 8.0;
}

double product_conditional_entropy(const DensityMatrix& rho3,
                                   const ProductMeasurement& pm) {
  if (rho3.dim() != 8) {
    throw std::invalid_argument("product_conditional_entropy: 3-qubit state required");
  }
  double total = 0.0;
  for (int s = 0; s < 2; ++s) {
    for (int t = 0; t < 2; ++t) {
      const BlochVector a = s ? -pm.a.bloch() : pm.a.bloch();
      const BlochVector b = t ? -pm.b.bloch() : pm.b.bloch();
      const Eigen::Vector2cd pa = bloch_state(a), pb = bloch_state(b);
      Eigen::Vector4cd chi;
      chi << pa(0) * pb(0), pa(0) * pb(1), pa(1) * pb(0), pa(1) * pb(1);
      total += branch_entropy_weighted(project_ancilla(rho3.matrix(), chi));
    }
  }
  return total;
}

MinimizeResult minimize_conditional_entropy(const DensityMatrix& rho3,
                                            const MinimizeOptions& opts) {
  const SphereMinimum m = minimize_on_sphere(
      [&rho3](double theta, double phi) {
        return conditional_entropy_numeric(
            rho3, MeasurementDirection::from_angles(theta, phi));
      },
      opts);
  return MinimizeResult{m.value,
                        MeasurementDirection::from_angles(m.theta, m.phi),
                        m.iterations};
}

DiscordResult left_discord(const BlochVector& n, const MinimizeOptions& opts) {
  const DensityMatrix codeword = mixed_ancilla_codeword(n);
  const double s1 = von_neumann_entropy(partial_trace(codeword, {1}));
  const double s3 = von_neumann_entropy(codeword);
  // The codeword family admits the eight-term closed form for the
  // conditional entropy; minimizing it matches the numeric route within
  // the cross-check tolerance and keeps full-sphere maps cheap.
  const SphereMinimum m = minimize_on_sphere(
      [&n](double theta, double phi) {
        return conditional_entropy_closed_form(
            n, MeasurementDirection::from_angles(theta, phi));
      },
      opts);
  const double raw = s1 - s3 + m.value;
  return DiscordResult{clamp_discord(raw),
                       raw,
                       MeasurementDirection::from_angles(m.theta, m.phi),
                       opts.n_theta,
                       opts.n_phi,
                       m.iterations};
}

RightDiscordResult right_discord(const BlochVector& n) {
  const DensityMatrix codeword = mixed_ancilla_codeword(n);
  const double s2 = von_neumann_entropy(partial_trace(codeword, {2, 3}));
  const double s3 = von_neumann_entropy(codeword);
  const ProductMeasurement pm = ProductMeasurement::pi_xz();
  const double raw = s2 - s3 + product_conditional_entropy(codeword, pm);
  return RightDiscordResult{clamp_discord(raw), raw, pm};
}

PureAncillaDiscord pure_ancilla_discord(const BlochVector& n) {
  Eigen::VectorXcd zero_zero = Eigen::VectorXcd::Zero(4);
  zero_zero(0) = 1.0;
  const DensityMatrix codeword =
      encode(bloch_to_density(n), DensityMatrix::pure(zero_zero));
  const double s1 = von_neumann_entropy(partial_trace(codeword, {1}));
  const double s2 = von_neumann_entropy(partial_trace(codeword, {2, 3}));
  const double s3 = von_neumann_entropy(codeword);

  const MinimizeResult left_min = minimize_conditional_entropy(codeword);

  // Product measurements: coarse 4-angle grid, then Nelder-Mead refinement
  // from the best cell.
  const int nt = 12, np = 24;
  const double dt = kPi / (nt - 1), dp = 2.0 * kPi / np;
  auto objective = [&codeword](const std::vector<double>& x) {
    return product_conditional_entropy(
        codeword, ProductMeasurement{
                      MeasurementDirection::from_angles(x[0], x[1]),
                      MeasurementDirection::from_angles(x[2], x[3])});
  };
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_x(4, 0.0);
  for (int ia = 0; ia < nt; ++ia)
    for (int ja = 0; ja < np; ++ja)
      for (int ib = 0; ib < nt; ++ib)
        for (int jb = 0; jb < np; ++jb) {
          const std::vector<double> x{ia * dt, ja * dp, ib * dt, jb * dp};
          const double v = objective(x);
          if (v < best) {
            best = v;
            best_x = x;
          }
        }
  const NelderMeadResult refined =
      nelder_mead(objective, best_x, {dt, dp, dt, dp}, 1e-9, 400);
  best = std::min(best, refined.f);

  return PureAncillaDiscord{clamp_discord(s1 - s3 + left_min.value),
                            clamp_discord(s2 - s3 + best)};
}

AngularDataset discord_surface(const BlochVector& n, int n_theta, int n_phi) {
  if (n_theta < 2 || n_phi < 2) {
    throw std::invalid_argument("discord_surface: grid too small");
  }
  const DensityMatrix codeword = mixed_ancilla_codeword(n);
  const double s1 = von_neumann_entropy(partial_trace(codeword, {1}));
  const double s3 = von_neumann_entropy(codeword);
  AngularDataset data{n_theta, n_phi, {}};
  data.rows.reserve(size_t(n_theta) * size_t(n_phi));
  for (int i = 0; i < n_theta; ++i) {
    const double theta = i * kPi / (n_theta - 1);
    for (int j = 0; j < n_phi; ++j) {
      const double phi = j * 2.0 * kPi / n_phi;
      const double value =
          s1 - s3 +
          conditional_entropy_closed_form(
              n, MeasurementDirection::from_angles(theta, phi));
      data.rows.push_back({theta, phi, value});
    }
  }
  return data;
}

AngularDataset discord_map(int n_theta, int n_phi,
                           const MinimizeOptions& opts) {
  if (n_theta < 2 || n_phi < 2) {
    throw std::invalid_argument("discord_map: grid too small");
  }
  AngularDataset data{n_theta, n_phi, {}};
  data.rows.resize(size_t(n_theta) * size_t(n_phi));
  parallel_rows(n_theta, [&](int i) {
    const double theta = i * kPi / (n_theta - 1);
    for (int j = 0; j < n_phi; ++j) {
      const double phi = j * 2.0 * kPi / n_phi;
      const BlochVector n = BlochVector::spherical(theta, phi);
      data.rows[size_t(i) * size_t(n_phi) + size_t(j)] = {
          theta, phi, left_discord(n, opts).value};
    }
  });
  return data;
}

}  // namespace qec3
