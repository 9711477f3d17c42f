#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wigsim/commands.hpp"
#include "wigsim/config.hpp"
#include "wigsim/errors.hpp"
#include "wigsim/version.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string preset;
  std::string out_dir;
  int threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_out = true) {
  cmd->add_option("--config", opts.config_path, "path to a run configuration file");
  cmd->add_option("--preset", opts.preset,
                  "named preset (resolved as presets/<name>.cfg next to the working "
                  "directory or the executable)");
  if (with_out)
    cmd->add_option("--out", opts.out_dir, "output directory (default: output.dir from config)");
  cmd->add_option("--threads", opts.threads, "worker threads (results are thread-count invariant)")
      ->check(CLI::Range(1, 1024));
}

std::string resolve_preset(const std::string& name, const char* argv0) {
  const std::string rel = "presets/" + name + ".cfg";
  if (fs::exists(rel)) return rel;
  std::error_code ec;
  const fs::path exe_dir = fs::weakly_canonical(fs::path(argv0), ec).parent_path();
  if (!ec) {
    for (const fs::path& candidate : {exe_dir / rel, exe_dir / ".." / rel}) {
      if (fs::exists(candidate)) return candidate.string();
    }
  }
  throw wigsim::ConfigError("preset not found: " + name + " (looked for " + rel + ")");
}

wigsim::RunConfig load_from(const CommonOpts& opts, const char* argv0) {
  if (!opts.config_path.empty() && !opts.preset.empty())
    throw wigsim::ConfigError("give either --config or --preset, not both");
  if (opts.config_path.empty() && opts.preset.empty())
    throw wigsim::ConfigError("one of --config or --preset is required");
  const std::string path =
      opts.config_path.empty() ? resolve_preset(opts.preset, argv0) : opts.config_path;
  return wigsim::load_config(path);
}

std::vector<double> parse_values(const std::string& csv) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const std::size_t comma = csv.find(',', pos);
    const std::string tok =
        csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (tok.empty()) throw wigsim::ConfigError("sweep: empty entry in --values list");
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size())
      throw wigsim::ConfigError("sweep: bad number in --values: '" + tok + "'");
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "wigsim: phase-space evolution of a driven anharmonic oscillator -- quantum\n"
      "(Wigner) and classical (Fokker-Planck) dynamics under momentum diffusion"};
  app.set_version_flag("--version", std::string("wigsim ") + wigsim::kVersion);
  app.require_subcommand(1);

  CommonOpts run_opts, cmp_opts, sweep_opts, info_opts;
  double cmp_eta = 0.1, sweep_eta = 0.1;
  std::string sweep_key, sweep_values;

  CLI::App* cmd_run_app = app.add_subcommand("run", "evolve one configuration and write outputs");
  add_common(cmd_run_app, run_opts);

  CLI::App* cmd_cmp_app = app.add_subcommand(
      "compare", "run the three-regime decoherence comparison and emit a report");
  add_common(cmd_cmp_app, cmp_opts);
  cmd_cmp_app->add_option("--eta", cmp_eta, "break-time threshold (fraction of classical sigma)")
      ->check(CLI::PositiveNumber);

  CLI::App* cmd_sweep_app =
      app.add_subcommand("sweep", "repeat the comparison over values of one scalar config key");
  add_common(cmd_sweep_app, sweep_opts);
  cmd_sweep_app->add_option("--key", sweep_key, "dotted config key, e.g. decoherence.d")
      ->required();
  cmd_sweep_app->add_option("--values", sweep_values, "comma-separated list, e.g. 0.0125,0.025")
      ->required();
  cmd_sweep_app
      ->add_option("--eta", sweep_eta, "break-time threshold (fraction of classical sigma)")
      ->check(CLI::PositiveNumber);

  CLI::App* cmd_info_app =
      app.add_subcommand("info", "print version and, with a config, resolved settings");
  add_common(cmd_info_app, info_opts, /*with_out=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;  // usage problems are configuration errors
  }

  try {
    if (cmd_run_app->parsed()) {
      const wigsim::RunConfig cfg = load_from(run_opts, argv[0]);
      const std::string out = run_opts.out_dir.empty() ? cfg.output_dir : run_opts.out_dir;
      return wigsim::cmd_run(cfg, out, run_opts.threads);
    }
    if (cmd_cmp_app->parsed()) {
      const wigsim::RunConfig cfg = load_from(cmp_opts, argv[0]);
      const std::string out = cmp_opts.out_dir.empty() ? cfg.output_dir : cmp_opts.out_dir;
      return wigsim::cmd_compare(cfg, out, cmp_eta, cmp_opts.threads);
    }
    if (cmd_sweep_app->parsed()) {
      const wigsim::RunConfig cfg = load_from(sweep_opts, argv[0]);
      const std::string out = sweep_opts.out_dir.empty() ? cfg.output_dir : sweep_opts.out_dir;
      return wigsim::cmd_sweep(cfg, sweep_key, parse_values(sweep_values), out, sweep_eta,
                               sweep_opts.threads);
    }
    if (cmd_info_app->parsed()) {
      if (info_opts.config_path.empty() && info_opts.preset.empty())
        return wigsim::cmd_info(nullptr);
      const wigsim::RunConfig cfg = load_from(info_opts, argv[0]);
      return wigsim::cmd_info(&cfg);
    }
  } catch (const wigsim::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const wigsim::NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal failure: %s\n", e.what());
    return 2;
  }
  return 0;
}
