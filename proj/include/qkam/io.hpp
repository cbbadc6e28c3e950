#pragma once

#include <string>

#include <json.hpp>

#include "qkam/complex_matrix.hpp"
#include "qkam/dynamics.hpp"
#include "qkam/kam.hpp"
#include "qkam/spectral.hpp"
#include "qkam/symmetry.hpp"

namespace qkam {

// Repo-wide matrix schema: {"dim": n, "data": [[[re, im], ...], ...]},
// row-major. Readers reject non-square or non-finite payloads.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

ComplexMatrix parse_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const ComplexMatrix& m);

nlohmann::json resolution_to_json(const SpectralResolution& res);
nlohmann::json decomposition_to_json(const ObservableDecomposition& dec);
nlohmann::json kam_result_to_json(const KamResult& r);
nlohmann::json bound_report_to_json(const BoundReport& r);

// Shortest round-trip decimal form of a double.
std::string format_double(double x);

// CSV body: header "t,value" (real) or "t,re,im"; numbers in shortest
// round-trip form. The metadata goes to a JSON sidecar next to the CSV.
std::string trajectory_csv(const Trajectory& t);
void write_trajectory(const std::string& csv_path, const Trajectory& t);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& body);

}  // namespace qkam
