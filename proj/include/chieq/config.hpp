#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "chieq/field.hpp"
#include "chieq/physics.hpp"
#include "chieq/schemes.hpp"
#include "chieq/solver.hpp"

namespace chieq {

enum class InitVariant { Sinusoidal, RandomUniform };

struct InitSpec {
  InitVariant variant = InitVariant::RandomUniform;
  double mean = 0.3;
  double amplitude = 0.001;
};

struct RunConfig {
  SchemeId scheme = SchemeId::LS2_CN;
  GridSpec grid{2, 64};
  PhysParams params;
  double dt = 1e-3;
  double t_end = 10.0;
  InitSpec init;
  std::uint64_t seed = 1;
  long snapshot_every = 1000;
  SolverCfg solver;
  bool dealias = false;
  std::string out_dir;  // not part of the file format; set from the CLI

  void validate() const;
  long num_steps() const;
};

// Flat "key = value" text, one pair per line, '#' starts a comment. Keys:
// scheme dim n epsilon sigma theta bshift dt t_end init mean amplitude seed
// snapshot_every outer_tol inner_tol dealias. Unknown or repeated keys are
// errors; omitted keys keep their defaults.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);
std::string format_config(const RunConfig& cfg);

std::vector<std::string> preset_names();
// Throws ConfigError for an unknown name.
RunConfig preset(std::string_view name);

ScalarField make_initial_field(const RunConfig& cfg);

}  // namespace chieq
