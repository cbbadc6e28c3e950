#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "qkam/complex_matrix.hpp"
#include "qkam/dynamics.hpp"

namespace qkam {

// One experiment invocation: what to run, on which system, where to put the
// artifacts. Parsed from a JSON document; any leaf may be overridden with a
// dotted path (e.g. grid.t_max=500).
struct ExperimentConfig {
  std::string experiment;  // decompose | kam | bounds | evolve | heisenberg-fig |
                           // lindblad-demo | verify
  std::string system;      // model tag or matrix-file path
  std::string perturbation;
  std::string observable;
  double epsilon = 0.0;
  double beta = -1.0;  // < 0 means unset
  struct {
    double t_max = 0.0;  // 0 means default 50/epsilon
    int points = 2000;
    std::string spacing = "linear";
  } grid;
  uint64_t seed = 1;
  double lambda = 1.0;
  std::string output_dir = "out";
  // bounds inputs
  int d = 0;
  double eta = 0.0;
  double norm_v = 1.0;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& c);

// Dotted-path override, "grid.points=400"; values parsed as JSON when
// possible, else taken as strings.
void apply_override(nlohmann::json& j, const std::string& assignment);

// Model tags: "pauli:x|y|z", "heisenberg:N=4,J=1,normalize=true",
// "gue:dim=16,seed=7", "fragile:e=0,m1=1,m2=-1", "mag:N=4,axis=z",
// "identity:dim=4", "zero:dim=4"; anything else is read as a matrix file.
ComplexMatrix make_model(const std::string& tag, uint64_t default_seed);

TimeGrid make_grid(const ExperimentConfig& c);

// Runs the experiment, writes artifacts (CSV bodies deterministic per
// config+seed) plus manifest.json. Returns the process exit status:
// 0 success, 1 a verify criterion failed.
int run_experiment(const ExperimentConfig& c);

std::string library_version();

}  // namespace qkam
