#pragma once

#include <string>

#include <json.hpp>

#include "qec3/discord.hpp"
#include "qec3/qec.hpp"
#include "qec3/tomography.hpp"

namespace qec3 {

inline constexpr int kSchemaVersion = 1;

/// Locale-independent formatting with 12 significant digits; dataset files
/// are regenerated into figures, so the precision exceeds every tolerance
/// in the test suites.
std::string format_sig(double v);

// CSV with a single header row. Values print at 12 significant digits and
// the readers reproduce exactly what was printed.
std::string to_csv(const AngularDataset& d);
AngularDataset angular_dataset_from_csv(const std::string& text);
std::string to_csv(const SphereMesh& m);
SphereMesh sphere_mesh_from_csv(const std::string& text);

// JSON building blocks.
nlohmann::json json_complex_matrix(const Operator& m);
nlohmann::json json_bloch(const BlochVector& n);
nlohmann::json to_json(const AngularDataset& d);
nlohmann::json to_json(const SphereMesh& m);
nlohmann::json to_json(const RoundTripReport& r);
nlohmann::json to_json(const DiscordResult& r);
nlohmann::json to_json(const RightDiscordResult& r);
nlohmann::json to_json(const TomographyReport& r);

}  // namespace qec3
