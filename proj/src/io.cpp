#include "qec3/io.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qec3 {

namespace {

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("invalid numeric field '" + std::string(s) + "'");
  }
  return v;
}

std::vector<double> parse_csv_row(std::string_view line, size_t expected) {
  std::vector<double> out;
  size_t start = 0;
  while (start <= line.size()) {
    const size_t comma = line.find(',', start);
    const size_t end = (comma == std::string_view::npos) ? line.size() : comma;
    out.push_back(parse_double(line.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.size() != expected) {
    throw std::invalid_argument("csv row has wrong number of fields");
  }
  return out;
}

/// Splits into lines, requiring the given header on the first one.
std::vector<std::string_view> csv_lines(const std::string& text,
                                        std::string_view header) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    if (end > start) lines.push_back(std::string_view(text).substr(start, end - start));
    start = end + 1;
  }
  if (lines.empty() || lines.front() != header) {
    throw std::invalid_argument("csv header mismatch");
  }
  lines.erase(lines.begin());
  return lines;
}

}  // namespace

std::string format_sig(double v) {
  char buf[40];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::string to_csv(const AngularDataset& d) {
  std::string out = "theta,phi,value\n";
  for (const AngularSample& row : d.rows) {
    out += format_sig(row.theta);
    out += ',';
    out += format_sig(row.phi);
    out += ',';
    out += format_sig(row.value);
    out += '\n';
  }
  return out;
}

AngularDataset angular_dataset_from_csv(const std::string& text) {
  AngularDataset d;
  for (std::string_view line : csv_lines(text, "theta,phi,value")) {
    const std::vector<double> v = parse_csv_row(line, 3);
    d.rows.push_back({v[0], v[1], v[2]});
  }
  return d;
}

std::string to_csv(const SphereMesh& m) {
  std::string out = "theta,phi,in_x,in_y,in_z,out_x,out_y,out_z\n";
  for (const SphereMeshRow& row : m.rows) {
    const double fields[8] = {row.theta, row.phi, row.in.x,  row.in.y,
                              row.in.z,  row.out.x, row.out.y, row.out.z};
    for (int i = 0; i < 8; ++i) {
      out += format_sig(fields[i]);
      out += (i == 7) ? '\n' : ',';
    }
  }
  return out;
}

SphereMesh sphere_mesh_from_csv(const std::string& text) {
  SphereMesh m;
  for (std::string_view line :
       csv_lines(text, "theta,phi,in_x,in_y,in_z,out_x,out_y,out_z")) {
    const std::vector<double> v = parse_csv_row(line, 8);
    m.rows.push_back({v[0], v[1], {v[2], v[3], v[4]}, {v[5], v[6], v[7]}});
  }
  return m;
}

nlohmann::json json_complex_matrix(const Operator& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json json_bloch(const BlochVector& n) {
  return nlohmann::json::array({n.x, n.y, n.z});
}

nlohmann::json to_json(const AngularDataset& d) {
  nlohmann::json rows = nlohmann::json::array();
  for (const AngularSample& r : d.rows) {
    rows.push_back({r.theta, r.phi, r.value});
  }
  return {{"grid", {{"n_theta", d.n_theta}, {"n_phi", d.n_phi}}},
          {"columns", {"theta", "phi", "value"}},
          {"rows", rows}};
}

nlohmann::json to_json(const SphereMesh& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (const SphereMeshRow& r : m.rows) {
    rows.push_back({r.theta, r.phi, r.in.x, r.in.y, r.in.z, r.out.x, r.out.y,
                    r.out.z});
  }
  return {{"grid", {{"n_theta", m.n_theta}, {"n_phi", m.n_phi}}},
          {"columns",
           {"theta", "phi", "in_x", "in_y", "in_z", "out_x", "out_y", "out_z"}},
          {"rows", rows}};
}

nlohmann::json to_json(const RoundTripReport& r) {
  return {{"recovered", json_complex_matrix(r.recovered.matrix())},
          {"recovered_bloch", json_bloch(density_to_bloch(r.recovered))},
          {"trace_distance", r.trace_distance_to_input},
          {"ancilla_residue", json_complex_matrix(r.ancilla_residue.matrix())},
          {"residue_deviation", r.residue_deviation}};
}

nlohmann::json to_json(const DiscordResult& r) {
  return {{"value", r.value},
          {"raw_value", r.raw_value},
          {"argmin",
           {{"theta", r.argmin.theta()},
            {"phi", r.argmin.phi()},
            {"m", json_bloch(r.argmin.bloch())}}},
          {"grid", {{"n_theta", r.grid_theta}, {"n_phi", r.grid_phi}}},
          {"refine_iterations", r.refine_iterations}};
}

nlohmann::json to_json(const RightDiscordResult& r) {
  return {{"value", r.value},
          {"raw_value", r.raw_value},
          {"measurement",
           {{"a", json_bloch(r.measurement.a.bloch())},
            {"b", json_bloch(r.measurement.b.bloch())}}}};
}

nlohmann::json to_json(const TomographyReport& r) {
  nlohmann::json ptm = nlohmann::json::array();
  for (int i = 0; i < 4; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < 4; ++j) row.push_back(r.ptm.r(i, j));
    ptm.push_back(row);
  }
  nlohmann::json kraus = nlohmann::json::array();
  for (const Eigen::Matrix2cd& op : r.kraus.ops) {
    kraus.push_back(json_complex_matrix(op));
  }
  return {{"ptm", ptm},
          {"chi", json_complex_matrix(r.chi.chi)},
          {"kraus", kraus},
          {"entanglement_fidelity", r.entanglement_fidelity},
          {"map_trace", r.map_trace},
          {"chi_min_eigenvalue", r.kraus.min_eigenvalue},
          {"nonphysical_flagged", r.kraus.nonphysical_flagged},
          {"mesh", to_json(r.mesh)}};
}

}  // namespace qec3
