#include "qkam/experiments.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <filesystem>
#include <map>
#include <sstream>
#include <vector>

#include "qkam/acceptance.hpp"
#include "qkam/errors.hpp"
#include "qkam/io.hpp"
#include "qkam/kam.hpp"
#include "qkam/lindblad.hpp"
#include "qkam/matfun.hpp"
#include "qkam/models.hpp"
#include "qkam/spectral.hpp"
#include "qkam/symmetry.hpp"

namespace qkam {

using nlohmann::json;

std::string library_version() { return "0.1.0"; }

namespace {

std::map<std::string, std::string> parse_params(const std::string& body, const char* where) {
  std::map<std::string, std::string> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw ConfigError(std::string(where) + ": expected key=value, got '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

double param_num(const std::map<std::string, std::string>& p, const std::string& key,
                 const char* where, double fallback = std::nan("")) {
  auto it = p.find(key);
  if (it == p.end()) {
    if (std::isnan(fallback)) throw ConfigError(std::string(where) + ": missing '" + key + "'");
    return fallback;
  }
  try {
    return std::stod(it->second);
  } catch (...) {
    throw ConfigError(std::string(where) + ": bad number for '" + key + "'");
  }
}

PauliAxis axis_from(const std::string& s, const char* where) {
  if (s == "x") return PauliAxis::X;
  if (s == "y") return PauliAxis::Y;
  if (s == "z") return PauliAxis::Z;
  throw ConfigError(std::string(where) + ": axis must be x, y or z");
}

}  // namespace

ComplexMatrix make_model(const std::string& tag, uint64_t default_seed) {
  const size_t colon = tag.find(':');
  const std::string name = tag.substr(0, colon);
  const std::string body = colon == std::string::npos ? "" : tag.substr(colon + 1);

  if (name == "pauli") {
    return pauli(axis_from(body, "pauli"));
  }
  if (name == "heisenberg") {
    const auto p = parse_params(body, "heisenberg");
    const int n = static_cast<int>(param_num(p, "N", "heisenberg"));
    const double j = param_num(p, "J", "heisenberg", 1.0);
    ComplexMatrix h = heisenberg_chain(n, j);
    auto it = p.find("normalize");
    if (it != p.end() && it->second == "true") h *= 1.0 / op_norm(h);
    return h;
  }
  if (name == "gue") {
    const auto p = parse_params(body, "gue");
    const int dim = static_cast<int>(param_num(p, "dim", "gue"));
    const uint64_t seed =
        static_cast<uint64_t>(param_num(p, "seed", "gue", static_cast<double>(default_seed)));
    return random_hermitian(dim, seed);
  }
  if (name == "fragile") {
    const auto p = parse_params(body, "fragile");
    return fragile_example(param_num(p, "e", "fragile"), param_num(p, "m1", "fragile"),
                           param_num(p, "m2", "fragile"))
        .h;
  }
  if (name == "mag") {
    const auto p = parse_params(body, "mag");
    const int n = static_cast<int>(param_num(p, "N", "mag"));
    auto it = p.find("axis");
    if (it == p.end()) throw ConfigError("mag: missing 'axis'");
    return magnetization(n, axis_from(it->second, "mag"));
  }
  if (name == "identity" || name == "zero") {
    const auto p = parse_params(body, name.c_str());
    const int dim = static_cast<int>(param_num(p, "dim", name.c_str()));
    return name == "identity" ? ComplexMatrix::identity(dim) : ComplexMatrix(dim);
  }
  // Not a known tag: treat as a matrix file path.
  return parse_matrix_file(tag);
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  ExperimentConfig c;
  try {
    c.experiment = j.at("experiment").get<std::string>();
  } catch (const json::exception&) {
    throw ConfigError("config: missing or invalid 'experiment'");
  }
  const auto get_str = [&](const char* key, std::string& dst) {
    if (j.contains(key)) {
      if (!j[key].is_string()) throw ConfigError(std::string("config: '") + key + "' must be a string");
      dst = j[key].get<std::string>();
    }
  };
  const auto get_num = [&](const char* key, auto& dst) {
    if (j.contains(key)) {
      if (!j[key].is_number()) throw ConfigError(std::string("config: '") + key + "' must be a number");
      dst = j[key].get<std::decay_t<decltype(dst)>>();
    }
  };
  get_str("system", c.system);
  get_str("perturbation", c.perturbation);
  get_str("observable", c.observable);
  get_num("epsilon", c.epsilon);
  get_num("beta", c.beta);
  get_num("seed", c.seed);
  get_num("lambda", c.lambda);
  get_str("output_dir", c.output_dir);
  get_num("d", c.d);
  get_num("eta", c.eta);
  get_num("norm_v", c.norm_v);
  if (j.contains("grid")) {
    const json& g = j["grid"];
    if (!g.is_object()) throw ConfigError("config: 'grid' must be an object");
    if (g.contains("t_max")) c.grid.t_max = g["t_max"].get<double>();
    if (g.contains("points")) c.grid.points = g["points"].get<int>();
    if (g.contains("spacing")) c.grid.spacing = g["spacing"].get<std::string>();
  }
  if (c.epsilon < 0) throw ConfigError("config: epsilon must be >= 0");
  if (c.grid.points < 2) throw ConfigError("config: grid.points must be >= 2");
  if (c.grid.t_max < 0) throw ConfigError("config: grid.t_max must be > 0");
  if (c.grid.spacing != "linear" && c.grid.spacing != "geometric")
    throw ConfigError("config: grid.spacing must be linear or geometric");
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  return json{{"experiment", c.experiment},
              {"system", c.system},
              {"perturbation", c.perturbation},
              {"observable", c.observable},
              {"epsilon", c.epsilon},
              {"beta", c.beta},
              {"grid", {{"t_max", c.grid.t_max}, {"points", c.grid.points}, {"spacing", c.grid.spacing}}},
              {"seed", c.seed},
              {"lambda", c.lambda},
              {"output_dir", c.output_dir},
              {"d", c.d},
              {"eta", c.eta},
              {"norm_v", c.norm_v}};
}

void apply_override(json& j, const std::string& assignment) {
  const size_t eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("--set expects dotted.key=value, got '" + assignment + "'");
  const std::string path = assignment.substr(0, eq);
  const std::string value = assignment.substr(eq + 1);

  json* node = &j;
  std::stringstream ss(path);
  std::string key, next;
  if (!std::getline(ss, key, '.')) throw ConfigError("--set: empty key");
  while (std::getline(ss, next, '.')) {
    node = &(*node)[key];
    key = next;
  }
  try {
    (*node)[key] = json::parse(value);
  } catch (const json::parse_error&) {
    (*node)[key] = value;  // plain string
  }
}

TimeGrid make_grid(const ExperimentConfig& c) {
  double t_max = c.grid.t_max;
  if (t_max == 0.0) {
    if (c.epsilon <= 0) throw ConfigError("config: grid.t_max required when epsilon = 0");
    t_max = 50.0 / c.epsilon;
  }
  if (c.grid.spacing == "geometric")
    return TimeGrid::geometric(std::min(1e-2, t_max / c.grid.points), t_max, c.grid.points);
  return TimeGrid::linear(t_max, c.grid.points);
}

namespace {

namespace fs = std::filesystem;

void write_manifest(const ExperimentConfig& c, const std::vector<std::string>& artifacts) {
  json m;
  m["config"] = config_to_json(c);
  m["version"] = library_version();
  m["artifacts"] = artifacts;
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  m["timestamp_unix"] = std::chrono::duration_cast<std::chrono::seconds>(now).count();
  write_text_file((fs::path(c.output_dir) / "manifest.json").string(), m.dump(2) + "\n");
}

int run_decompose(const ExperimentConfig& c, std::vector<std::string>& artifacts) {
  const ComplexMatrix h = make_model(c.system, c.seed);
  const ComplexMatrix m = make_model(c.observable, c.seed + 1);
  const SpectralResolution res = resolve(h);
  const ObservableDecomposition dec = decompose_observable(res, m);
  const RobustnessClass rc = classify(res, m);
  json out = decomposition_to_json(dec);
  out["label"] = to_string(rc.label);
  out["noncons_norm"] = rc.noncons_norm;
  out["robust_norm"] = rc.robust_norm;
  out["fragile_norm"] = rc.fragile_norm;
  const std::string path = (fs::path(c.output_dir) / "decomposition.json").string();
  write_text_file(path, out.dump(2) + "\n");
  artifacts.push_back(path);
  return 0;
}

int run_kam(const ExperimentConfig& c, std::vector<std::string>& artifacts) {
  if (c.epsilon <= 0) throw ConfigError("kam: epsilon must be > 0");
  const ComplexMatrix h = make_model(c.system, c.seed);
  const ComplexMatrix v = make_model(c.perturbation, c.seed + 1);
  const SpectralResolution res = resolve(h);
  const KamResult kam = isospectral_blockdiag(res, v, c.epsilon);
  json out = kam_result_to_json(kam);
  try {
    out["bounds"] = bound_report_to_json(bounds(res.d(), res.gap, op_norm(v), c.epsilon));
  } catch (const InvalidBoundError& e) {
    out["bounds"] = nullptr;
    out["bounds_unavailable"] = e.what();
  }
  const std::string path = (fs::path(c.output_dir) / "kam_result.json").string();
  write_text_file(path, out.dump(2) + "\n");
  artifacts.push_back(path);
  return 0;
}

int run_bounds(const ExperimentConfig& c, std::vector<std::string>& artifacts) {
  if (c.d < 1 || c.eta <= 0) throw ConfigError("bounds: need d >= 1 and eta > 0");
  const BoundReport br = bounds(c.d, c.eta, c.norm_v, c.epsilon);
  const std::string path = (fs::path(c.output_dir) / "bounds.json").string();
  write_text_file(path, bound_report_to_json(br).dump(2) + "\n");
  artifacts.push_back(path);
  return 0;
}

void emit(const ExperimentConfig& c, std::vector<std::string>& artifacts,
          const std::string& name, Trajectory t, const std::string& model_tag) {
  t.meta.seed = c.seed;
  t.meta.model = model_tag;
  const std::string path = (fs::path(c.output_dir) / name).string();
  write_trajectory(path, t);
  artifacts.push_back(path);
}

int run_evolve(const ExperimentConfig& c, std::vector<std::string>& artifacts) {
  // The fragile two-level pipeline has its own closed-form quantity.
  if (c.system.rfind("fragile:", 0) == 0) {
    const auto p = parse_params(c.system.substr(8), "fragile");
    const FragileExample fx =
        fragile_example(param_num(p, "e", "fragile"), param_num(p, "m1", "fragile"),
                        param_num(p, "m2", "fragile"));
    const TimeGrid grid = make_grid(c);
    Trajectory tr = expectation_traj(fx.h + c.epsilon * fx.v, fx.m, fx.psi0, grid);
    tr.meta.epsilon = c.epsilon;
    tr.meta.quantity = "expectation";
    emit(c, artifacts, "expectation.csv", std::move(tr), c.system);
    return 0;
  }

  const ComplexMatrix h = make_model(c.system, c.seed);
  const ComplexMatrix v = make_model(c.perturbation, c.seed + 1);
  const TimeGrid grid = make_grid(c);
  const SpectralResolution res = resolve(h);

  Trajectory dz = divergence_traj(h, v, c.epsilon, zeno_project(res, v), grid);
  dz.meta.quantity = "divergence_zeno";
  emit(c, artifacts, "divergence_zeno.csv", std::move(dz), c.system);

  const KamResult kam = isospectral_blockdiag(res, v, c.epsilon);
  Trajectory dr = divergence_traj(h, v, c.epsilon, kam.v_resummed, grid);
  dr.meta.quantity = "divergence_resummed";
  emit(c, artifacts, "divergence_resummed.csv", std::move(dr), c.system);

  if (!c.observable.empty()) {
    const ComplexMatrix m = make_model(c.observable, c.seed + 2);
    Trajectory drift = observable_drift(h, v, c.epsilon, m, grid);
    emit(c, artifacts, "observable_drift.csv", std::move(drift), c.system);
  }
  if (c.beta >= 0) {
    Trajectory g = gibbs_drift(h, v, c.epsilon, c.beta, grid);
    emit(c, artifacts, "gibbs_drift.csv", std::move(g), c.system);
  }
  return 0;
}

int run_heisenberg_fig(const ExperimentConfig& c, std::vector<std::string>& artifacts) {
  const std::string tag =
      c.system.empty() ? "heisenberg:N=4,J=1,normalize=true" : c.system;
  ComplexMatrix h = make_model(tag, c.seed);
  const int dim = h.dim();
  const double eps = c.epsilon > 0 ? c.epsilon : 0.02;

  const ComplexMatrix v = random_hermitian(dim, c.seed);
  ComplexMatrix m = random_hermitian(dim, c.seed + 1);
  const CVec psi0 = random_state(dim, c.seed + 2);
  const SpectralResolution res = resolve(h);
  const ObservableDecomposition dec = decompose_observable(res, m);

  ExperimentConfig cg = c;
  if (cg.grid.t_max == 0.0) cg.grid.t_max = 1000.0;
  cg.epsilon = eps;
  const TimeGrid grid = make_grid(cg);
  const ComplexMatrix gen = h + eps * v;

  const struct {
    const char* name;
    const ComplexMatrix* part;
  } parts[] = {{"fig_noncons.csv", &dec.noncons},
               {"fig_robust.csv", &dec.robust},
               {"fig_fragile.csv", &dec.fragile}};
  for (const auto& [name, part] : parts) {
    Trajectory tr = expectation_traj(gen, *part, psi0, grid);
    const cplx base = tr.values[0];
    for (cplx& x : tr.values) x -= base;
    tr.meta.epsilon = eps;
    tr.meta.quantity = std::string("expectation_deviation_") + name;
    emit(c, artifacts, name, std::move(tr), tag);
  }

  // physical pair: H (robust) and Q_1 (fragile), both normalized
  int n_sites = 0;
  while ((1 << (n_sites + 1)) <= dim) ++n_sites;
  if ((1 << n_sites) != dim)
    throw ConfigError("heisenberg-fig: system dimension must be a power of 2");
  ComplexMatrix q1 = magnetization(n_sites, PauliAxis::Z);
  q1 *= 1.0 / op_norm(q1);
  const Trajectory th = expectation_traj(gen, h, psi0, grid);
  const Trajectory tq = expectation_traj(gen, q1, psi0, grid);
  std::string csv = "t,h_dev,q1_dev\n";
  for (int i = 0; i < grid.size(); ++i) {
    csv += format_double(grid.times[i]);
    csv += ',';
    csv += format_double(th.values[i].real() - th.values[0].real());
    csv += ',';
    csv += format_double(tq.values[i].real() - tq.values[0].real());
    csv += '\n';
  }
  const std::string path = (fs::path(c.output_dir) / "fig_physical.csv").string();
  write_text_file(path, csv);
  artifacts.push_back(path);
  return 0;
}

int run_lindblad_demo(const ExperimentConfig& c, std::vector<std::string>& artifacts) {
  const double omega = 1.0, kappa = 1.0, g = kappa;
  const double eps = c.epsilon > 0 ? c.epsilon : 0.1;
  const Superoperator l = dephasing(omega, kappa);
  const Superoperator mrob =
      commutator_super(pauli_z(), cplx(0, -1.0 / std::sqrt(2.0)));
  ComplexMatrix p0(2);
  p0(0, 0) = 1;
  const Superoperator mfrag{2, mrob.matrix + kron(p0.transpose(), p0)};
  const ComplexMatrix rho0 =
      0.5 * (ComplexMatrix::identity(2) + 0.2 * pauli_x() + 0.8 * pauli_z());
  const Superoperator v = commutator_super(pauli_x(), cplx(0, -g / 2.0));

  ExperimentConfig cg = c;
  cg.epsilon = eps;
  if (cg.grid.t_max == 0.0) cg.grid.t_max = 25.0 / (eps * eps);
  if (cg.grid.spacing == "linear" && c.grid.t_max == 0.0) cg.grid.spacing = "geometric";
  const TimeGrid grid = make_grid(cg);

  const MonotoneSpec spec_rob{mrob, c.lambda};
  const MonotoneSpec spec_frag{mfrag, c.lambda};
  auto [rob_u, rob_p] = monotone_traj(l, v, eps, spec_rob, rho0, grid);
  auto [frag_u, frag_p] = monotone_traj(l, v, eps, spec_frag, rho0, grid);
  rob_u.meta.quantity = "monotone_robust_unperturbed";
  rob_p.meta.quantity = "monotone_robust_perturbed";
  frag_u.meta.quantity = "monotone_fragile_unperturbed";
  frag_p.meta.quantity = "monotone_fragile_perturbed";
  rob_p.meta.epsilon = eps;
  frag_p.meta.epsilon = eps;
  emit(c, artifacts, "monotone_robust_unperturbed.csv", std::move(rob_u), "dephasing");
  emit(c, artifacts, "monotone_robust_perturbed.csv", std::move(rob_p), "dephasing");
  emit(c, artifacts, "monotone_fragile_unperturbed.csv", std::move(frag_u), "dephasing");
  emit(c, artifacts, "monotone_fragile_perturbed.csv", std::move(frag_p), "dephasing");
  return 0;
}

int run_verify(const ExperimentConfig& c, std::vector<std::string>& artifacts) {
  const std::vector<CriterionResult> results = run_acceptance({}, &std::cout);
  json out = json::array();
  bool all = true;
  for (const CriterionResult& r : results) {
    out.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    all = all && r.passed;
  }
  const std::string path = (fs::path(c.output_dir) / "acceptance.json").string();
  write_text_file(path, out.dump(2) + "\n");
  artifacts.push_back(path);
  return all ? 0 : 1;
}

}  // namespace

int run_experiment(const ExperimentConfig& c) {
  fs::create_directories(c.output_dir);
  std::vector<std::string> artifacts;
  int status = 0;
  if (c.experiment == "decompose")
    status = run_decompose(c, artifacts);
  else if (c.experiment == "kam")
    status = run_kam(c, artifacts);
  else if (c.experiment == "bounds")
    status = run_bounds(c, artifacts);
  else if (c.experiment == "evolve")
    status = run_evolve(c, artifacts);
  else if (c.experiment == "heisenberg-fig")
    status = run_heisenberg_fig(c, artifacts);
  else if (c.experiment == "lindblad-demo")
    status = run_lindblad_demo(c, artifacts);
  else if (c.experiment == "verify")
    status = run_verify(c, artifacts);
  else
    throw ConfigError("config: unknown experiment '" + c.experiment + "'");
  write_manifest(c, artifacts);
  return status;
}

}  // namespace qkam
