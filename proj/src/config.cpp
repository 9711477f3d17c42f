#include "wigsim/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "wigsim/errors.hpp"

namespace wigsim {

double RunConfig::t_final() const {
  if (t_final_periods) return *t_final_periods * driving_period(params);
  return *t_final_abs;
}

EvolverConfig RunConfig::evolver_config() const {
  EvolverConfig ec;
  ec.mode = mode;
  ec.params = params;
  ec.diffusion = diffusion;
  ec.dt = dt;
  ec.boundary_mass_limit = boundary_mass_limit;
  return ec;
}

namespace {

const char* const kSections[] = {"grid", "params", "init", "evolve", "decoherence", "output"};

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

struct RawEntry {
  std::string value;
  bool used = false;
};

class KeyTable {
 public:
  explicit KeyTable(const std::string& text) {
    std::istringstream in(text);
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const std::size_t cut = line.find_first_of("#;");
      if (cut != std::string::npos) line.erase(cut);
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']')
          throw ConfigError("config line " + std::to_string(line_no) +
                            ": malformed section header '" + line + "'");
        section = trim(line.substr(1, line.size() - 2));
        bool known = false;
        for (const char* s : kSections) known = known || section == s;
        if (!known)
          throw ConfigError("config line " + std::to_string(line_no) + ": unknown section [" +
                            section + "]");
        continue;
      }
      const std::size_t eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": expected 'key = value', got '" + line + "'");
      if (section.empty())
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": key outside any [section]");
      const std::string key = section + "." + trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.size() == section.size() + 1)
        throw ConfigError("config line " + std::to_string(line_no) + ": empty key name");
      if (value.empty())
        throw ConfigError("config: key '" + key + "' has an empty value");
      if (!entries_.emplace(key, RawEntry{value, false}).second)
        throw ConfigError("config: duplicate key '" + key + "'");
    }
  }

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  const std::string& raw(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError("config: missing required key '" + key + "'");
    it->second.used = true;
    return it->second.value;
  }

  double number(const std::string& key) {
    const std::string& v = raw(key);
    char* end = nullptr;
    const double out = std::strtod(v.c_str(), &end);
    if (end != v.c_str() + v.size() || !std::isfinite(out))
      throw ConfigError("config: key '" + key + "' is not a finite number: '" + v + "'");
    return out;
  }

  std::size_t count(const std::string& key) {
    const double v = number(key);
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e12)
      throw ConfigError("config: key '" + key + "' must be a positive integer");
    return static_cast<std::size_t>(v);
  }

  bool flag(const std::string& key) {
    const std::string& v = raw(key);
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("config: key '" + key + "' must be true or false, got '" + v + "'");
  }

  void reject_unused() const {
    for (const auto& [key, entry] : entries_)
      if (!entry.used) throw ConfigError("config: unknown key '" + key + "'");
  }

 private:
  std::map<std::string, RawEntry> entries_;
};

void validate_run_config(const RunConfig& c) {
  try {
    c.params.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!(c.dt > 0.0) || !std::isfinite(c.dt))
    throw ConfigError("config: evolve.dt must be positive and finite");
  if (c.t_final_periods.has_value() == c.t_final_abs.has_value())
    throw ConfigError(
        "config: exactly one of evolve.t_final_periods / evolve.t_final_abs is required");
  if (c.t_final() < 0.0) throw ConfigError("config: final time must be >= 0");
  if (c.sample_every < 1) throw ConfigError("config: evolve.sample_every must be >= 1");
  if (!(c.boundary_mass_limit > 0.0))
    throw ConfigError("config: evolve.boundary_mass_limit must be > 0");
  if (!(c.init.sigma_x > 0.0) || !(c.init.sigma_p > 0.0))
    throw ConfigError("config: init.sigma_x and init.sigma_p must be > 0");
  if (c.init.minimum_uncertainty) validate_minimum_uncertainty(c.init, c.params.hbar);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  KeyTable kv(text);
  RunConfig c;

  try {
    c.grid = make_grid(kv.count("grid.nx"), kv.count("grid.np"), kv.number("grid.x_min"),
                       kv.number("grid.x_max"), kv.number("grid.p_min"), kv.number("grid.p_max"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: [grid] ") + e.what());
  }

  c.params.m = kv.number("params.m");
  c.params.A = kv.number("params.a");
  c.params.B = kv.number("params.b");
  c.params.lambda_ = kv.number("params.lambda");
  c.params.omega = kv.number("params.omega");
  c.params.hbar = kv.number("params.hbar");

  c.init.x0 = kv.number("init.x0");
  c.init.p0 = kv.number("init.p0");
  c.init.sigma_x = kv.number("init.sigma_x");
  c.init.sigma_p = kv.number("init.sigma_p");
  c.init.minimum_uncertainty =
      kv.has("init.minimum_uncertainty") ? kv.flag("init.minimum_uncertainty") : false;

  const std::string& mode = kv.raw("evolve.mode");
  if (mode == "quantum")
    c.mode = EvolveMode::quantum;
  else if (mode == "classical")
    c.mode = EvolveMode::classical;
  else
    throw ConfigError("config: evolve.mode must be 'quantum' or 'classical', got '" + mode + "'");
  c.dt = kv.number("evolve.dt");
  if (kv.has("evolve.t_final_periods")) c.t_final_periods = kv.number("evolve.t_final_periods");
  if (kv.has("evolve.t_final_abs")) c.t_final_abs = kv.number("evolve.t_final_abs");
  if (kv.has("evolve.sample_every")) c.sample_every = kv.count("evolve.sample_every");
  if (kv.has("evolve.boundary_mass_limit"))
    c.boundary_mass_limit = kv.number("evolve.boundary_mass_limit");

  const bool has_d = kv.has("decoherence.d");
  const bool has_derived = kv.has("decoherence.gamma") || kv.has("decoherence.mass_env") ||
                           kv.has("decoherence.kbt");
  if (has_d && has_derived)
    throw ConfigError(
        "config: give either decoherence.d or decoherence.{gamma,mass_env,kbt}, not both");
  try {
    if (has_d) {
      c.diffusion = DiffusionSpec::direct(kv.number("decoherence.d"));
    } else if (has_derived) {
      c.diffusion = DiffusionSpec::derived(kv.number("decoherence.gamma"),
                                           kv.number("decoherence.mass_env"),
                                           kv.number("decoherence.kbt"));
    }  // absent section: D = 0 (isolated run)
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: [decoherence] ") + e.what());
  }

  if (kv.has("output.dir")) c.output_dir = kv.raw("output.dir");
  if (kv.has("output.formats")) {
    c.formats = OutputFormats{false, false, false};
    std::istringstream list(kv.raw("output.formats"));
    std::string tok;
    bool any = false;
    while (std::getline(list, tok, ',')) {
      tok = trim(tok);
      if (tok == "dump")
        c.formats.dump = true;
      else if (tok == "csv")
        c.formats.csv = true;
      else if (tok == "pgm")
        c.formats.pgm = true;
      else
        throw ConfigError("config: output.formats token '" + tok +
                          "' is not one of dump, csv, pgm");
      any = true;
    }
    if (!any) throw ConfigError("config: output.formats must list at least one format");
  }

  kv.reject_unused();
  validate_run_config(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  out << "[grid]\n"
      << "nx = " << c.grid.nx << "\n"
      << "np = " << c.grid.np_ << "\n"
      << "x_min = " << num(c.grid.x_min) << "\n"
      << "x_max = " << num(c.grid.x_max) << "\n"
      << "p_min = " << num(c.grid.p_min) << "\n"
      << "p_max = " << num(c.grid.p_max) << "\n\n";
  out << "[params]\n"
      << "m = " << num(c.params.m) << "\n"
      << "a = " << num(c.params.A) << "\n"
      << "b = " << num(c.params.B) << "\n"
      << "lambda = " << num(c.params.lambda_) << "\n"
      << "omega = " << num(c.params.omega) << "\n"
      << "hbar = " << num(c.params.hbar) << "\n\n";
  out << "[init]\n"
      << "x0 = " << num(c.init.x0) << "\n"
      << "p0 = " << num(c.init.p0) << "\n"
      << "sigma_x = " << num(c.init.sigma_x) << "\n"
      << "sigma_p = " << num(c.init.sigma_p) << "\n"
      << "minimum_uncertainty = " << (c.init.minimum_uncertainty ? "true" : "false") << "\n\n";
  out << "[evolve]\n"
      << "mode = " << (c.mode == EvolveMode::quantum ? "quantum" : "classical") << "\n"
      << "dt = " << num(c.dt) << "\n";
  if (c.t_final_periods) out << "t_final_periods = " << num(*c.t_final_periods) << "\n";
  if (c.t_final_abs) out << "t_final_abs = " << num(*c.t_final_abs) << "\n";
  out << "sample_every = " << c.sample_every << "\n"
      << "boundary_mass_limit = " << num(c.boundary_mass_limit) << "\n\n";
  out << "[decoherence]\n";
  if (c.diffusion.is_derived()) {
    out << "gamma = " << num(c.diffusion.gamma()) << "\n"
        << "mass_env = " << num(c.diffusion.mass_env()) << "\n"
        << "kbt = " << num(c.diffusion.kbt()) << "\n\n";
  } else {
    out << "d = " << num(c.diffusion.resolve()) << "\n\n";
  }
  out << "[output]\n"
      << "dir = " << c.output_dir << "\n"
      << "formats = ";
  bool first = true;
  for (const auto& [on, name] :
       {std::pair<bool, const char*>{c.formats.dump, "dump"}, {c.formats.csv, "csv"},
        {c.formats.pgm, "pgm"}}) {
    if (!on) continue;
    if (!first) out << ",";
    out << name;
    first = false;
  }
  out << "\n";
  return out.str();
}

RunConfig with_override(const RunConfig& base, const std::string& dotted_key, double value) {
  RunConfig c = base;
  const auto bad = [&](const char* why) {
    throw ConfigError("override: key '" + dotted_key + "' " + why);
  };
  if (dotted_key == "params.m")
    c.params.m = value;
  else if (dotted_key == "params.a")
    c.params.A = value;
  else if (dotted_key == "params.b")
    c.params.B = value;
  else if (dotted_key == "params.lambda")
    c.params.lambda_ = value;
  else if (dotted_key == "params.omega")
    c.params.omega = value;
  else if (dotted_key == "params.hbar")
    c.params.hbar = value;
  else if (dotted_key == "init.x0")
    c.init.x0 = value;
  else if (dotted_key == "init.p0")
    c.init.p0 = value;
  else if (dotted_key == "init.sigma_x")
    c.init.sigma_x = value;
  else if (dotted_key == "init.sigma_p")
    c.init.sigma_p = value;
  else if (dotted_key == "evolve.dt")
    c.dt = value;
  else if (dotted_key == "evolve.t_final_periods") {
    c.t_final_periods = value;
    c.t_final_abs.reset();
  } else if (dotted_key == "evolve.t_final_abs") {
    c.t_final_abs = value;
    c.t_final_periods.reset();
  } else if (dotted_key == "evolve.boundary_mass_limit")
    c.boundary_mass_limit = value;
  else if (dotted_key == "decoherence.d") {
    try {
      c.diffusion = DiffusionSpec::direct(value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("override: ") + e.what());
    }
  } else if (dotted_key == "decoherence.gamma" || dotted_key == "decoherence.mass_env" ||
             dotted_key == "decoherence.kbt") {
    if (!base.diffusion.is_derived())
      bad("requires a config that already uses the gamma/mass_env/kbt form");
    double g = base.diffusion.gamma(), me = base.diffusion.mass_env(), kt = base.diffusion.kbt();
    if (dotted_key == "decoherence.gamma")
      g = value;
    else if (dotted_key == "decoherence.mass_env")
      me = value;
    else
      kt = value;
    try {
      c.diffusion = DiffusionSpec::derived(g, me, kt);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("override: ") + e.what());
    }
  } else {
    bad("is not an overridable scalar config entry");
  }
  validate_run_config(c);
  return c;
}

}  // namespace wigsim
