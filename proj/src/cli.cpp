#include "qec3/cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qec3/discord.hpp"
#include "qec3/io.hpp"
#include "qec3/qec.hpp"
#include "qec3/random.hpp"
#include "qec3/tomography.hpp"
#include "qec3/verify.hpp"

namespace qec3 {

namespace {

constexpr std::uint64_t kDefaultSeed = 12345;

struct GridSpec {
  int n_theta = 0;
  int n_phi = 0;
};

std::vector<double> parse_floats(const std::string& s, size_t count,
                                 const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError(what, "invalid float '" + item + "'");
    }
  }
  if (out.size() != count) {
    throw CLI::ValidationError(
        what, "expected " + std::to_string(count) + " comma-separated floats");
  }
  return out;
}

GridSpec parse_grid(const std::string& s, int min_theta, int min_phi) {
  const size_t x = s.find('x');
  GridSpec g;
  try {
    if (x == std::string::npos) throw std::invalid_argument(s);
    g.n_theta = std::stoi(s.substr(0, x));
    g.n_phi = std::stoi(s.substr(x + 1));
  } catch (const std::exception&) {
    throw CLI::ValidationError("--grid", "expected NxM, e.g. 64x128");
  }
  if (g.n_theta < min_theta || g.n_phi < min_phi) {
    throw CLI::ValidationError(
        "--grid", "minimum resolution is " + std::to_string(min_theta) + "x" +
                      std::to_string(min_phi));
  }
  return g;
}

BlochVector parse_bloch(const std::string& s) {
  const std::vector<double> v = parse_floats(s, 3, "--n");
  const BlochVector n{v[0], v[1], v[2]};
  if (n.norm() > 1.0 + kUnitNormTol) {
    throw CLI::ValidationError("--n", "|n| must be <= 1");
  }
  return n;
}

ErrorChannel parse_channel_probs(const std::string& s) {
  const std::vector<double> v = parse_floats(s, 4, "--p");
  try {
    return ErrorChannel(v[0], v[1], v[2], v[3]);
  } catch (const std::exception& e) {
    throw CLI::ValidationError("--p", e.what());
  }
}

ErrorChannel resolve_channel(const std::string& label,
                             const std::optional<std::string>& probs) {
  if (label == "a") return ErrorChannel::no_error();
  if (label == "b") return ErrorChannel::x1_error();
  if (label == "c") return ErrorChannel::x2_error();
  if (label == "custom") {
    if (!probs) {
      throw CLI::ValidationError("--channel", "custom channel requires --p");
    }
    return parse_channel_probs(*probs);
  }
  throw CLI::ValidationError("--channel", "unknown channel label '" + label +
                                              "' (expected a, b, c or custom)");
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file '" + path + "'");
  f << text;
}

std::string dump(nlohmann::json j) {
  j["schema_version"] = kSchemaVersion;
  return j.dump(2) + "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Three-qubit QEC with uniformly mixed ancillae: verification, "
               "discord analysis and process tomography",
               "qec3"};
  app.require_subcommand(1);
  int exit_code = 0;

  // verify
  auto* verify = app.add_subcommand(
      "verify", "Run the full invariant suite and report per-check results");
  std::uint64_t verify_seed = kDefaultSeed;
  bool flip_cnot = false;
  std::string verify_out;
  verify->add_option("--seed", verify_seed, "Sample seed");
  verify->add_flag("--flip-cnot", flip_cnot,
                   "Debug: mis-orient the encoder CNOTs (factorization must fail)");
  verify->add_option("-o,--output", verify_out, "Write the JSON report here");
  verify->callback([&] {
    const VerificationReport report = run_verification(
        verify_seed, flip_cnot ? EncoderOrientation::flipped_debug
                               : EncoderOrientation::canonical);
    nlohmann::json j = report.to_json();
    j["command"] = "verify";
    j["orientation"] = flip_cnot ? "flipped_debug" : "canonical";
    emit(dump(j), verify_out, out);
    if (!report.pass) exit_code = 1;
  });

  // roundtrip
  auto* rt = app.add_subcommand(
      "roundtrip", "Encode, apply a correlated error channel and recover");
  std::string rt_n = "0,0,1";
  std::string rt_p = "1,0,0,0";
  std::string rt_ancilla = "uniform";
  std::uint64_t rt_seed = kDefaultSeed;
  std::string rt_out;
  rt->add_option("--n", rt_n, "Data-qubit Bloch vector x,y,z");
  rt->add_option("--p", rt_p, "Channel probabilities p0,p1,p2,p3");
  rt->add_option("--ancilla", rt_ancilla,
                 "Ancilla state: uniform, pure00 or random")
      ->check(CLI::IsMember({"uniform", "pure00", "random"}));
  rt->add_option("--seed", rt_seed, "Seed for --ancilla random");
  rt->add_option("-o,--output", rt_out, "Write the JSON report here");
  rt->callback([&] {
    const BlochVector n = parse_bloch(rt_n);
    const ErrorChannel ch = parse_channel_probs(rt_p);
    DensityMatrix rho2 = DensityMatrix::maximally_mixed(2);
    if (rt_ancilla == "pure00") {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
      v(0) = 1.0;
      rho2 = DensityMatrix::pure(v);
    } else if (rt_ancilla == "random") {
      rho2 = Sampler(rt_seed).density_matrix(2);
    }
    const RoundTripReport report = roundtrip(bloch_to_density(n), rho2, ch);
    nlohmann::json j = to_json(report);
    j["command"] = "roundtrip";
    j["n"] = json_bloch(n);
    j["p"] = ch.p;
    j["ancilla"] = rt_ancilla;
    const bool pass = report.trace_distance_to_input <= 1e-10 &&
                      report.residue_deviation <= 1e-10;
    j["pass"] = pass;
    emit(dump(j), rt_out, out);
    if (!pass) exit_code = 1;
  });

  // discord
  auto* dis = app.add_subcommand(
      "discord", "Left and right quantum discord of the codeword");
  std::string dis_n;
  std::string dis_grid = "64x128";
  std::string dis_out;
  dis->add_option("--n", dis_n, "Data-qubit Bloch vector x,y,z")->required();
  dis->add_option("--grid", dis_grid, "Minimization grid NxM");
  dis->add_option("-o,--output", dis_out, "Write the JSON report here");
  dis->callback([&] {
    const BlochVector n = parse_bloch(dis_n);
    const GridSpec g = parse_grid(dis_grid, 16, 32);
    MinimizeOptions opts;
    opts.n_theta = g.n_theta;
    opts.n_phi = g.n_phi;
    nlohmann::json j{{"command", "discord"},
                     {"n", json_bloch(n)},
                     {"left", to_json(left_discord(n, opts))},
                     {"right", to_json(right_discord(n))}};
    emit(dump(j), dis_out, out);
  });

  // discord-map
  auto* dmap = app.add_subcommand(
      "discord-map", "D(2:1) over a grid of pure data directions");
  std::string dmap_grid = "64x128";
  std::string dmap_format = "csv";
  std::string dmap_out;
  dmap->add_option("--grid", dmap_grid, "Grid over n as NxM (min 16x32)");
  dmap->add_option("--format", dmap_format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  dmap->add_option("-o,--output", dmap_out, "Write the dataset here");
  dmap->callback([&] {
    const GridSpec g = parse_grid(dmap_grid, 16, 32);
    const AngularDataset data = discord_map(g.n_theta, g.n_phi);
    if (dmap_format == "csv") {
      emit(to_csv(data), dmap_out, out);
    } else {
      nlohmann::json j = to_json(data);
      j["command"] = "discord-map";
      emit(dump(j), dmap_out, out);
    }
  });

  // discord-surface
  auto* dsurf = app.add_subcommand(
      "discord-surface",
      "D_{|+-m>}(2:1) over a grid of measurement directions");
  std::string dsurf_n;
  std::string dsurf_grid = "64x128";
  std::string dsurf_format = "csv";
  std::string dsurf_out;
  dsurf->add_option("--n", dsurf_n, "Data-qubit Bloch vector x,y,z")->required();
  dsurf->add_option("--grid", dsurf_grid, "Grid over m as NxM (min 16x32)");
  dsurf->add_option("--format", dsurf_format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  dsurf->add_option("-o,--output", dsurf_out, "Write the dataset here");
  dsurf->callback([&] {
    const BlochVector n = parse_bloch(dsurf_n);
    const GridSpec g = parse_grid(dsurf_grid, 16, 32);
    const AngularDataset data = discord_surface(n, g.n_theta, g.n_phi);
    if (dsurf_format == "csv") {
      emit(to_csv(data), dsurf_out, out);
    } else {
      nlohmann::json j = to_json(data);
      j["command"] = "discord-surface";
      j["n"] = json_bloch(n);
      emit(dump(j), dsurf_out, out);
    }
  });

  // tomo
  auto* tomo = app.add_subcommand(
      "tomo", "Process tomography of the encode-error-recover pipeline");
  std::string tomo_channel = "a";
  std::optional<std::string> tomo_p;
  double tomo_depol = 0.0;
  double tomo_angle = 0.0;
  std::uint64_t tomo_seed = kDefaultSeed;
  std::string tomo_grid = "32x64";
  std::string tomo_out;
  tomo->add_option("--channel", tomo_channel,
                   "a = no error, b = X1, c = X2, custom = use --p");
  tomo->add_option("--p", tomo_p, "Custom channel probabilities p0,p1,p2,p3");
  tomo->add_option("--depol", tomo_depol,
                   "Two-qubit depolarizing strength per CNOT")
      ->check(CLI::Range(0.0, 1.0));
  tomo->add_option("--angle-noise", tomo_angle,
                   "Std-dev of the CNOT over-rotation (radians)");
  tomo->add_option("--seed", tomo_seed, "Noise seed");
  tomo->add_option("--grid", tomo_grid, "Sphere mesh grid NxM (min 32x64)");
  tomo->add_option("-o,--output", tomo_out, "Write the JSON report here");
  tomo->callback([&] {
    const ErrorChannel ch = resolve_channel(tomo_channel, tomo_p);
    const GridSpec g = parse_grid(tomo_grid, 32, 64);
    const NoiseModel noise{tomo_depol, tomo_angle, tomo_seed};
    const TomographyReport report =
        tomography_experiment(ch, noise, g.n_theta, g.n_phi);
    nlohmann::json j = to_json(report);
    j["command"] = "tomo";
    j["channel"] = {{"label", tomo_channel}, {"p", ch.p}};
    j["noise"] = {{"depolarizing", tomo_depol},
                  {"angle_std", tomo_angle},
                  {"seed", tomo_seed}};
    emit(dump(j), tomo_out, out);
  });

  // sphere-map
  auto* smap = app.add_subcommand(
      "sphere-map", "Bloch-sphere image of the reconstructed pipeline map");
  std::string smap_channel = "a";
  std::optional<std::string> smap_p;
  double smap_depol = 0.0;
  double smap_angle = 0.0;
  std::uint64_t smap_seed = kDefaultSeed;
  std::string smap_grid = "32x64";
  std::string smap_format = "csv";
  std::string smap_out;
  smap->add_option("--channel", smap_channel,
                   "a = no error, b = X1, c = X2, custom = use --p");
  smap->add_option("--p", smap_p, "Custom channel probabilities p0,p1,p2,p3");
  smap->add_option("--depol", smap_depol,
                   "Two-qubit depolarizing strength per CNOT")
      ->check(CLI::Range(0.0, 1.0));
  smap->add_option("--angle-noise", smap_angle,
                   "Std-dev of the CNOT over-rotation (radians)");
  smap->add_option("--seed", smap_seed, "Noise seed");
  smap->add_option("--grid", smap_grid, "Sphere mesh grid NxM (min 32x64)");
  smap->add_option("--format", smap_format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  smap->add_option("-o,--output", smap_out, "Write the mesh here");
  smap->callback([&] {
    const ErrorChannel ch = resolve_channel(smap_channel, smap_p);
    const GridSpec g = parse_grid(smap_grid, 32, 64);
    const NoiseModel noise{smap_depol, smap_angle, smap_seed};
    const TomographyReport report =
        tomography_experiment(ch, noise, g.n_theta, g.n_phi);
    if (smap_format == "csv") {
      emit(to_csv(report.mesh), smap_out, out);
    } else {
      nlohmann::json j{{"command", "sphere-map"},
                       {"channel", {{"label", smap_channel}, {"p", ch.p}}},
                       {"noise",
                        {{"depolarizing", smap_depol},
                         {"angle_std", smap_angle},
                         {"seed", smap_seed}}},
                       {"mesh", to_json(report.mesh)}};
      emit(dump(j), smap_out, out);
    }
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}

}  // namespace qec3
