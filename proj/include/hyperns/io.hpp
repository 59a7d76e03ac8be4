#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperns/field.hpp"
#include "hyperns/scenarios.hpp"

namespace hyperns {

/// One row of the diagnostics time series. NaN marks a quantity that was not computed.
struct DiagnosticsRow {
  double t = 0.0;
  double mass = 0.0;
  SpaceVector<double> momentum;
  double etot = 0.0;
  double G = 0.0;
  double F = 0.0;
  double bound = 0.0;
  double eta1_total = 0.0;
  double production_cum = 0.0;
  double residual = 0.0;
  double support_radius = 0.0;
  double sigma_max = 0.0;
  double max_grad_u = 0.0;
  double E_sobolev = 0.0;
  double theta_residual = 0.0;
};

/// t, mass, mom_x[, mom_y[, mom_z]], etot, G, F, bound, eta1_total, production_cum, residual,
/// support_radius, sigma_max, max_grad_u, E_sobolev, theta_residual
std::vector<std::string> diagnostics_columns(int dim);
std::vector<double> diagnostics_values(const DiagnosticsRow& r);

/// tau, err_state, err_flux, slope_state, slope_flux, status, err_state_final, err_flux_final
std::vector<std::string> sweep_columns();

/// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double x);

/// Comma-separated writer with a fixed header; numbers use format_number.
class CsvWriter {
 public:
  CsvWriter() = default;
  /// append = true keeps existing rows (the header is written only for an empty file).
  CsvWriter(const std::string& path, const std::vector<std::string>& header, bool append = false);
  void row(const std::vector<double>& values);
  void row(const std::vector<std::string>& cells);
  void flush() { out_.flush(); }
  bool is_open() const { return out_.is_open(); }

 private:
  std::ofstream out_;
  std::size_t width_ = 0;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  /// Column index by name; throws std::out_of_range naming the column.
  std::size_t column(const std::string& name) const;
};
CsvTable read_csv(const std::string& path);

/// Keeps the header and the rows whose first column is <= t (used when resuming).
void truncate_csv_after(const std::string& path, double t);

void write_sweep_csv(const std::string& path, const SweepResult& r);

nlohmann::json grid_to_json(const Grid& g);
Grid grid_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const ModelParams& p);
ModelParams model_from_json(const nlohmann::json& j);
nlohmann::json ledger_to_json(const BlowupLedger& L);

/// Binary field container: 8-byte magic, uint32 version, uint32 reserved, uint64 header length,
/// JSON header (grid, model, t, step, far field, `extra`), then nvar x padded_count doubles
/// in native byte order, ghosts included.
constexpr std::uint32_t kFieldFormatVersion = 1;
void save_field(const std::string& path, const Field& f, const ModelParams& p, const nlohmann::json& extra);

struct StoredField {
  Field field;
  ModelParams params;
  nlohmann::json extra;
};
StoredField load_field(const std::string& path);

/// Cell centres and primitive variables, one row per interior cell.
void write_snapshot_csv(const std::string& path, const Field& f, const ModelParams& p);

}  // namespace hyperns
