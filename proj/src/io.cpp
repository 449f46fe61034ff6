#include "chieq/io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "chieq/errors.hpp"

namespace chieq {

namespace {

constexpr char kMagic[] = "CHIEQ1\n";
constexpr std::size_t kMagicLen = sizeof(kMagic) - 1;

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void put_le(std::ostream& out, double v) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  unsigned char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(bits >> (8 * i));
  out.write(reinterpret_cast<const char*>(bytes), 8);
}

double get_le(std::istream& in) {
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), 8)) throw Error("snapshot truncated");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

}  // namespace

std::string format_energy_row(const EnergyRecord& r) {
  std::string row = std::to_string(r.step);
  for (double v : {r.time, r.e_original, r.e_modified, r.mass, r.dissipation, r.u_drift}) {
    row += ',';
    row += g17(v);
  }
  row += ',' + std::to_string(r.outer_iters) + ',' + std::to_string(r.inner_iters);
  return row;
}

void write_energy_csv(std::ostream& out, const std::vector<EnergyRecord>& records) {
  out << kEnergyCsvHeader << '\n';
  for (const auto& r : records) out << format_energy_row(r) << '\n';
}

void write_snapshot(std::ostream& out, const SimState& s, SchemeId scheme) {
  const GridSpec& g = s.phi.grid();
  out.write(kMagic, kMagicLen);
  out << g.dim << ' ' << g.n << ' ' << scheme_name(scheme) << ' ' << s.step << ' '
      << g17(s.time) << '\n';
  for (double v : s.phi.values()) put_le(out, v);
  for (double v : s.u.values()) put_le(out, v);
}

void write_snapshot_file(const std::string& path, const SimState& s, SchemeId scheme) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write snapshot '" + path + "'");
  write_snapshot(out, s, scheme);
}

Snapshot read_snapshot(std::istream& in) {
  char magic[kMagicLen];
  if (!in.read(magic, kMagicLen) || std::memcmp(magic, kMagic, kMagicLen) != 0) {
    throw Error("not a snapshot file (bad magic)");
  }
  std::string header;
  if (!std::getline(in, header)) throw Error("snapshot header missing");
  std::istringstream hs(header);
  Snapshot snap;
  std::string scheme;
  if (!(hs >> snap.grid.dim >> snap.grid.n >> scheme >> snap.step >> snap.time)) {
    throw Error("malformed snapshot header '" + header + "'");
  }
  snap.grid.validate();
  snap.scheme = parse_scheme(scheme);
  snap.phi = ScalarField(snap.grid);
  snap.u = ScalarField(snap.grid);
  for (std::size_t i = 0; i < snap.phi.size(); ++i) snap.phi[i] = get_le(in);
  for (std::size_t i = 0; i < snap.u.size(); ++i) snap.u[i] = get_le(in);
  return snap;
}

Snapshot read_snapshot_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open snapshot '" + path + "'");
  return read_snapshot(in);
}

}  // namespace chieq
