#include "chieq/config.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "chieq/errors.hpp"
#include "chieq/init.hpp"

namespace chieq {

namespace {

const std::set<std::string, std::less<>> kKeys = {
    "scheme",    "dim",  "n",    "epsilon", "sigma",          "theta",     "bshift",
    "dt",        "t_end", "init", "mean",   "amplitude",      "seed",      "snapshot_every",
    "outer_tol", "inner_tol", "dealias"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& v) {
  char* end = nullptr;
  errno = 0;
  const double d = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(d)) {
    throw ConfigError("key '" + key + "': cannot parse '" + v + "' as a number");
  }
  return d;
}

long to_long(const std::string& key, const std::string& v) {
  long out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
    throw ConfigError("key '" + key + "': cannot parse '" + v + "' as an integer");
  }
  return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
    throw ConfigError("key '" + key + "': cannot parse '" + v + "' as an unsigned integer");
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("key '" + key + "': expected a boolean, got '" + v + "'");
}

// Shortest text that parses back to the same double.
std::string fmt_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

void RunConfig::validate() const {
  grid.validate();
  params.check_ranges();
  solver.validate();
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(t_end >= dt)) throw ConfigError("t_end must be at least dt");
  if (snapshot_every < 1) throw ConfigError("snapshot_every must be >= 1");
  if (!(init.amplitude >= 0.0)) throw ConfigError("amplitude must be non-negative");
  if (init.variant == InitVariant::Sinusoidal && grid.dim != 2) {
    throw ConfigError("init = sinusoidal requires dim = 2");
  }
}

long RunConfig::num_steps() const { return std::lround(t_end / dt); }

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::map<std::string, std::string> kv;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!kKeys.count(key)) {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    if (value.empty()) {
      throw ConfigError("line " + std::to_string(lineno) + ": empty value for '" + key + "'");
    }
    if (!kv.emplace(key, value).second) {
      throw ConfigError("line " + std::to_string(lineno) + ": repeated key '" + key + "'");
    }
  }

  for (const auto& [key, v] : kv) {
    if (key == "scheme") {
      cfg.scheme = parse_scheme(v);
    } else if (key == "dim") {
      cfg.grid.dim = static_cast<int>(to_long(key, v));
    } else if (key == "n") {
      cfg.grid.n = static_cast<int>(to_long(key, v));
    } else if (key == "epsilon") {
      cfg.params.epsilon = to_double(key, v);
    } else if (key == "sigma") {
      cfg.params.sigma = to_double(key, v);
    } else if (key == "theta") {
      cfg.params.theta = to_double(key, v);
    } else if (key == "bshift") {
      cfg.params.bshift = to_double(key, v);
    } else if (key == "dt") {
      cfg.dt = to_double(key, v);
    } else if (key == "t_end") {
      cfg.t_end = to_double(key, v);
    } else if (key == "init") {
      if (v == "sinusoidal") {
        cfg.init.variant = InitVariant::Sinusoidal;
      } else if (v == "random") {
        cfg.init.variant = InitVariant::RandomUniform;
      } else {
        throw ConfigError("init must be 'sinusoidal' or 'random', got '" + v + "'");
      }
    } else if (key == "mean") {
      cfg.init.mean = to_double(key, v);
    } else if (key == "amplitude") {
      cfg.init.amplitude = to_double(key, v);
    } else if (key == "seed") {
      cfg.seed = to_u64(key, v);
    } else if (key == "snapshot_every") {
      cfg.snapshot_every = to_long(key, v);
    } else if (key == "outer_tol") {
      cfg.solver.outer_rel_tol = to_double(key, v);
    } else if (key == "inner_tol") {
      cfg.solver.inner_rel_tol = to_double(key, v);
    } else if (key == "dealias") {
      cfg.dealias = to_bool(key, v);
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string format_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "scheme = " << scheme_name(cfg.scheme) << '\n'
      << "dim = " << cfg.grid.dim << '\n'
      << "n = " << cfg.grid.n << '\n'
      << "epsilon = " << fmt_real(cfg.params.epsilon) << '\n'
      << "sigma = " << fmt_real(cfg.params.sigma) << '\n'
      << "theta = " << fmt_real(cfg.params.theta) << '\n'
      << "bshift = " << fmt_real(cfg.params.bshift) << '\n'
      << "dt = " << fmt_real(cfg.dt) << '\n'
      << "t_end = " << fmt_real(cfg.t_end) << '\n'
      << "init = " << (cfg.init.variant == InitVariant::Sinusoidal ? "sinusoidal" : "random")
      << '\n'
      << "mean = " << fmt_real(cfg.init.mean) << '\n'
      << "amplitude = " << fmt_real(cfg.init.amplitude) << '\n'
      << "seed = " << cfg.seed << '\n'
      << "snapshot_every = " << cfg.snapshot_every << '\n'
      << "outer_tol = " << fmt_real(cfg.solver.outer_rel_tol) << '\n'
      << "inner_tol = " << fmt_real(cfg.solver.inner_rel_tol) << '\n'
      << "dealias = " << (cfg.dealias ? "true" : "false") << '\n';
  return out.str();
}

std::vector<std::string> preset_names() {
  return {"fig4_1",        "table4_1",      "spinodal2d_03", "spinodal2d_05",
          "spinodal2d_07", "spinodal3d_03", "spinodal3d_05", "spinodal3d_07"};
}

RunConfig preset(std::string_view name) {
  RunConfig cfg;
  cfg.scheme = SchemeId::LS2_CN;
  cfg.grid = {2, 128};
  cfg.dt = 1e-3;
  cfg.init = {InitVariant::RandomUniform, 0.3, 0.001};

  if (name == "fig4_1") {
    cfg.t_end = 10.0;
    cfg.snapshot_every = 1000;
  } else if (name == "table4_1") {
    cfg.init = {InitVariant::Sinusoidal, 0.48, 0.0};
    cfg.dt = 2e-2;
    cfg.t_end = 0.5;
    cfg.snapshot_every = 25;
  } else if (name.starts_with("spinodal2d_") || name.starts_with("spinodal3d_")) {
    const bool three_d = name[8] == '3';
    const std::string_view tag = name.substr(11);
    if (tag == "03") {
      cfg.init.mean = 0.3;
    } else if (tag == "05") {
      cfg.init.mean = 0.5;
    } else if (tag == "07") {
      cfg.init.mean = 0.7;
    } else {
      throw ConfigError("unknown preset '" + std::string(name) + "'");
    }
    if (three_d) {
      // Snapshot times are multiples of t = 50.
      cfg.grid = {3, 128};
      cfg.t_end = tag == "05" ? 7500.0 : 2500.0;
      cfg.snapshot_every = 50000;
    } else {
      // Snapshot times are multiples of t = 10.
      cfg.t_end = 3000.0;
      cfg.snapshot_every = 10000;
    }
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "'");
  }
  return cfg;
}

ScalarField make_initial_field(const RunConfig& cfg) {
  if (cfg.init.variant == InitVariant::Sinusoidal) return init_sinusoidal(cfg.grid);
  return init_random(cfg.grid, cfg.init.mean, cfg.init.amplitude, cfg.seed);
}

}  // namespace chieq
