#include "visco2d/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace visco2d {

static_assert(std::endian::native == std::endian::little,
              "snapshot format assumes a little-endian host");

const char* const kSeriesCsvHeader =
    "t,E_basic,E_alt,gradu_l2sq,h2_u,h2_V,deltaU_l2sq,detIpV,trdet,compat,newid,detF,divFT,"
    "acc_gradu_h2,acc_deltaU_h1,acc_divV_h1";

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_snapshot_impl(const std::string& path, const std::string& formulation,
                         const std::vector<std::string>& names,
                         const std::vector<const ScalarField*>& fields, int n, double length,
                         double t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open snapshot file for writing: " + path);
  out << "VISCO2D1\n";
  out << "n " << n << "\n";
  out << "length " << fmt(length) << "\n";
  out << "t " << fmt(t) << "\n";
  out << "formulation " << formulation << "\n";
  out << "fields";
  for (const auto& nm : names) out << " " << nm;
  out << "\ndata\n";
  for (const ScalarField* f : fields)
    out.write(reinterpret_cast<const char*>(f->v.data()),
              static_cast<std::streamsize>(f->v.size() * sizeof(double)));
  if (!out) throw std::runtime_error("snapshot write failed: " + path);
}

}  // namespace

std::string series_csv_row(const DiagnosticsRecord& r) {
  std::ostringstream out;
  out << fmt(r.t) << ',' << fmt(r.E_basic) << ',' << fmt(r.E_alt) << ',' << fmt(r.gradu_l2sq)
      << ',' << fmt(r.h2_u) << ',' << fmt(r.h2_V) << ',' << fmt(r.deltaU_l2sq) << ','
      << fmt(r.residuals.detIpV) << ',' << fmt(r.residuals.trdet) << ','
      << fmt(r.residuals.compat) << ',' << fmt(r.residuals.newid) << ','
      << fmt(r.residuals.detF) << ',' << fmt(r.residuals.divFT) << ',' << fmt(r.acc_gradu_h2)
      << ',' << fmt(r.acc_deltaU_h1) << ',' << fmt(r.acc_divV_h1);
  return out.str();
}

void write_series_csv(const std::string& path, const std::vector<DiagnosticsRecord>& series) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open series file for writing: " + path);
  out << kSeriesCsvHeader << "\n";
  for (const auto& r : series) out << series_csv_row(r) << "\n";
  if (!out) throw std::runtime_error("series write failed: " + path);
}

void write_snapshot(const std::string& path, const RotStrainState& s, double t) {
  write_snapshot_impl(path, "rotstrain", {"u1", "u2", "V11", "V12", "V22", "theta"},
                      {&s.u.c1, &s.u.c2, &s.V.a11, &s.V.a12, &s.V.a22, &s.theta},
                      s.u.grid()->n(), s.u.grid()->length(), t);
}

void write_snapshot(const std::string& path, const StrainState& s, double t) {
  write_snapshot_impl(path, "strain", {"u1", "u2", "V11", "V12", "V22"},
                      {&s.u.c1, &s.u.c2, &s.V.a11, &s.V.a12, &s.V.a22}, s.u.grid()->n(),
                      s.u.grid()->length(), t);
}

void write_snapshot(const std::string& path, const OldroydState& s, double t) {
  write_snapshot_impl(path, "oldroyd", {"u1", "u2", "F11", "F12", "F21", "F22"},
                      {&s.u.c1, &s.u.c2, &s.F.a11, &s.F.a12, &s.F.a21, &s.F.a22},
                      s.u.grid()->n(), s.u.grid()->length(), t);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open snapshot file: " + path);
  Snapshot snap;
  std::string line;
  if (!std::getline(in, line) || line != "VISCO2D1")
    throw std::runtime_error("bad snapshot magic in " + path);
  while (std::getline(in, line)) {
    if (line == "data") break;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "n")
      ls >> snap.n;
    else if (key == "length")
      ls >> snap.length;
    else if (key == "t")
      ls >> snap.t;
    else if (key == "formulation")
      ls >> snap.formulation;
    else if (key == "fields") {
      std::string name;
      while (ls >> name) snap.field_names.push_back(name);
    } else {
      throw std::runtime_error("unknown snapshot header key '" + key + "' in " + path);
    }
  }
  if (snap.n <= 0 || snap.field_names.empty())
    throw std::runtime_error("incomplete snapshot header in " + path);
  const size_t count = static_cast<size_t>(snap.n) * snap.n;
  snap.fields.resize(snap.field_names.size());
  for (auto& f : snap.fields) {
    f.resize(count);
    in.read(reinterpret_cast<char*>(f.data()), static_cast<std::streamsize>(count * sizeof(double)));
    if (!in) throw std::runtime_error("truncated snapshot data in " + path);
  }
  return snap;
}

}  // namespace visco2d
