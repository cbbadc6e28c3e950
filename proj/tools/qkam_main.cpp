#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qkam/errors.hpp"
#include "qkam/experiments.hpp"
#include "qkam/io.hpp"

using nlohmann::json;

namespace {

struct CommonFlags {
  std::string config_path;
  std::vector<std::string> overrides;
  uint64_t seed = 0;
  bool has_seed = false;
  std::string out_dir;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON config file");
  cmd->add_option("--set", flags.overrides, "override a config leaf, dotted.key=value");
  cmd->add_option("--seed", flags.seed, "random seed")->each([&](const std::string&) {
    flags.has_seed = true;
  });
  cmd->add_option("--out", flags.out_dir, "output directory");
}

int run_subcommand(const std::string& experiment, const CommonFlags& flags, const json& extra) {
  json doc;
  if (!flags.config_path.empty()) {
    try {
      doc = json::parse(qkam::read_text_file(flags.config_path));
    } catch (const json::parse_error& e) {
      throw qkam::ConfigError(std::string("config parse: ") + e.what());
    }
  }
  for (auto it = extra.begin(); it != extra.end(); ++it) doc[it.key()] = it.value();
  doc["experiment"] = experiment;
  if (flags.has_seed) doc["seed"] = flags.seed;
  if (!flags.out_dir.empty()) doc["output_dir"] = flags.out_dir;
  for (const std::string& o : flags.overrides) qkam::apply_override(doc, o);
  return qkam::run_experiment(qkam::config_from_json(doc));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral-stability toolkit: robust vs fragile conserved quantities,"
               " isospectral block-diagonal resummation, bound verification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", qkam::library_version());

  struct Sub {
    CLI::App* cmd;
    CommonFlags flags;
    json extra;
  };
  std::vector<Sub> subs;
  const struct {
    const char* name;
    const char* help;
  } defs[] = {
      {"decompose", "split an observable into nonconserved/robust/fragile parts"},
      {"kam", "isospectral block-diagonal resummation of a perturbation"},
      {"bounds", "closed-form stability bounds for (d, eta, ||V||, eps)"},
      {"evolve", "divergence / drift / Gibbs trajectories"},
      {"heisenberg-fig", "Heisenberg-chain contrast curves (one seeded realization)"},
      {"lindblad-demo", "dephasing-qubit monotone trajectories"},
      {"verify", "run the acceptance suite"},
  };
  subs.reserve(std::size(defs));
  for (const auto& d : defs) {
    subs.push_back({app.add_subcommand(d.name, d.help), {}, json::object()});
    Sub& s = subs.back();
    add_common(s.cmd, s.flags);
    const std::string name = d.name;
    if (name == "decompose" || name == "kam" || name == "evolve") {
      s.cmd->add_option_function<std::string>(
          "--system", [&s](const std::string& v) { s.extra["system"] = v; },
          "model tag or matrix file");
      s.cmd->add_option_function<std::string>(
          "--perturbation", [&s](const std::string& v) { s.extra["perturbation"] = v; },
          "model tag or matrix file");
      s.cmd->add_option_function<std::string>(
          "--observable", [&s](const std::string& v) { s.extra["observable"] = v; },
          "model tag or matrix file");
      s.cmd->add_option_function<double>(
          "--epsilon", [&s](double v) { s.extra["epsilon"] = v; }, "perturbation strength");
      s.cmd->add_option_function<double>(
          "--beta", [&s](double v) { s.extra["beta"] = v; }, "inverse temperature");
    }
    if (name == "bounds") {
      s.cmd->add_option_function<int>(
          "--d", [&s](int v) { s.extra["d"] = v; }, "distinct eigenvalue count");
      s.cmd->add_option_function<double>(
          "--eta", [&s](double v) { s.extra["eta"] = v; }, "spectral gap");
      s.cmd->add_option_function<double>(
          "--norm-v", [&s](double v) { s.extra["norm_v"] = v; }, "perturbation norm");
      s.cmd->add_option_function<double>(
          "--epsilon", [&s](double v) { s.extra["epsilon"] = v; }, "perturbation strength");
    }
    if (name == "heisenberg-fig" || name == "lindblad-demo") {
      s.cmd->add_option_function<double>(
          "--epsilon", [&s](double v) { s.extra["epsilon"] = v; }, "perturbation strength");
    }
  }

  CLI11_PARSE(app, argc, argv);

  for (Sub& s : subs) {
    if (!s.cmd->parsed()) continue;
    try {
      return run_subcommand(s.cmd->get_name(), s.flags, s.extra);
    } catch (const qkam::ConfigError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 2;
    } catch (const qkam::ParseError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 2;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
  }
  return 2;
}
