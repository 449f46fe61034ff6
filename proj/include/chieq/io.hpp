#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "chieq/diagnostics.hpp"
#include "chieq/schemes.hpp"

namespace chieq {

inline constexpr const char* kEnergyCsvHeader =
    "step,time,e_original,e_modified,mass,dissipation,u_drift,outer_iters,inner_iters";

// One CSV row, reals printed with 17 significant digits.
std::string format_energy_row(const EnergyRecord& r);
void write_energy_csv(std::ostream& out, const std::vector<EnergyRecord>& records);

// Binary snapshot: "CHIEQ1\n", a text line "dim n scheme step time\n", then
// phi and U as little-endian binary64 in storage order.
void write_snapshot(std::ostream& out, const SimState& s, SchemeId scheme);
void write_snapshot_file(const std::string& path, const SimState& s, SchemeId scheme);

struct Snapshot {
  GridSpec grid;
  SchemeId scheme = SchemeId::LS1;
  long step = 0;
  double time = 0.0;
  ScalarField phi;
  ScalarField u;
};
Snapshot read_snapshot(std::istream& in);
Snapshot read_snapshot_file(const std::string& path);

}  // namespace chieq
