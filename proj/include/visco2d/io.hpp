#pragma once

#include <string>
#include <vector>

#include "visco2d/diagnostics.hpp"

namespace visco2d {

/// CSV column order (fixed):
/// t, E_basic, E_alt, gradu_l2sq, h2_u, h2_V, deltaU_l2sq, detIpV, trdet,
/// compat, newid, detF, divFT, acc_gradu_h2, acc_deltaU_h1, acc_divV_h1.
/// Floats are printed with 17 significant digits.
extern const char* const kSeriesCsvHeader;

std::string series_csv_row(const DiagnosticsRecord& r);
void write_series_csv(const std::string& path, const std::vector<DiagnosticsRecord>& series);

/// Snapshot file: text header (magic "VISCO2D1", n, length, t, formulation,
/// field list), then row-major little-endian IEEE-754 doubles per field.
struct Snapshot {
  int n = 0;
  double length = 0.0;
  double t = 0.0;
  std::string formulation;
  std::vector<std::string> field_names;
  std::vector<std::vector<double>> fields;
};

void write_snapshot(const std::string& path, const RotStrainState& s, double t);
void write_snapshot(const std::string& path, const StrainState& s, double t);
void write_snapshot(const std::string& path, const OldroydState& s, double t);
Snapshot read_snapshot(const std::string& path);

}  // namespace visco2d
