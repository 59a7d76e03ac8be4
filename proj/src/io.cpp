#include "hyperns/io.hpp"

#include <charconv>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <sstream>
#include <stdexcept>

namespace hyperns {

using nlohmann::json;

namespace {

constexpr char kMagic[8] = {'H', 'N', 'S', 'F', 'I', 'E', 'L', 'D'};

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::vector<std::string> diagnostics_columns(int dim) {
  std::vector<std::string> c{"t", "mass"};
  const char* axes[3] = {"mom_x", "mom_y", "mom_z"};
  for (int d = 0; d < dim; ++d) c.push_back(axes[d]);
  for (const char* name : {"etot", "G", "F", "bound", "eta1_total", "production_cum", "residual", "support_radius",
                           "sigma_max", "max_grad_u", "E_sobolev", "theta_residual"})
    c.push_back(name);
  return c;
}

std::vector<double> diagnostics_values(const DiagnosticsRow& r) {
  std::vector<double> v{r.t, r.mass};
  for (int d = 0; d < r.momentum.size(); ++d) v.push_back(r.momentum(d));
  for (double x : {r.etot, r.G, r.F, r.bound, r.eta1_total, r.production_cum, r.residual, r.support_radius,
                   r.sigma_max, r.max_grad_u, r.E_sobolev, r.theta_residual})
    v.push_back(x);
  return v;
}

std::vector<std::string> sweep_columns() {
  return {"tau", "err_state", "err_flux", "slope_state", "slope_flux", "status", "err_state_final", "err_flux_final"};
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header, bool append)
    : width_(header.size()) {
  const bool fresh = !append || !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  out_.open(path, append ? std::ios::app : std::ios::trunc);
  if (!out_) throw std::runtime_error("cannot write " + path);
  if (fresh) row(header);
}

void CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_number(v));
  row(cells);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != width_)
    throw std::logic_error("CSV row has " + std::to_string(cells.size()) + " cells, header has " +
                           std::to_string(width_));
  for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
  out_ << '\n';
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw std::out_of_range("missing column: " + name);
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  CsvTable t;
  std::string line;
  if (std::getline(in, line)) t.header = split_line(line);
  while (std::getline(in, line))
    if (!line.empty()) t.rows.push_back(split_line(line));
  return t;
}

void truncate_csv_after(const std::string& path, double t) {
  if (!std::filesystem::exists(path)) return;
  std::ifstream in(path);
  std::string header, line;
  std::getline(in, header);
  std::vector<std::string> keep;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_line(line);
    if (!cells.empty() && std::stod(cells[0]) <= t) keep.push_back(line);
  }
  in.close();
  std::ofstream out(path, std::ios::trunc);
  out << header << '\n';
  for (const auto& l : keep) out << l << '\n';
}

void write_sweep_csv(const std::string& path, const SweepResult& r) {
  CsvWriter w(path, sweep_columns());
  for (const auto& row : r.rows)
    w.row(std::vector<std::string>{format_number(row.tau), format_number(row.err_state), format_number(row.err_flux),
                                   format_number(r.slope_state), format_number(r.slope_flux), row.status,
                                   format_number(row.err_state_final), format_number(row.err_flux_final)});
}

json grid_to_json(const Grid& g) {
  json cells = json::array(), lower = json::array(), upper = json::array(), bnd = json::array();
  for (int a = 0; a < g.dim; ++a) {
    cells.push_back(g.cells[a]);
    lower.push_back(g.lower[a]);
    upper.push_back(g.upper[a]);
    bnd.push_back(g.boundary[a] == Boundary::periodic ? "periodic" : "constant_state");
  }
  return {{"dim", g.dim}, {"cells", cells}, {"lower", lower}, {"upper", upper}, {"boundary", bnd}};
}

Grid grid_from_json(const json& j) {
  Grid g;
  g.dim = j.at("dim").get<int>();
  for (int a = 0; a < g.dim; ++a) {
    g.cells[a] = j.at("cells").at(a).get<int>();
    g.lower[a] = j.at("lower").at(a).get<double>();
    g.upper[a] = j.at("upper").at(a).get<double>();
    g.boundary[a] = j.at("boundary").at(a).get<std::string>() == "periodic" ? Boundary::periodic
                                                                             : Boundary::constant_state;
  }
  g.validate();
  return g;
}

json model_to_json(const ModelParams& m) {
  return {{"tau1", m.tau1},
          {"tau3", m.tau3},
          {"kappa", m.kappa},
          {"lambda", m.lambda},
          {"mu", m.mu},
          {"cv", m.cv},
          {"r_gas", m.r_gas},
          {"dim", m.dim},
          {"admissible_box",
           {{"rho_min", m.box.rho_min},
            {"rho_max", m.box.rho_max},
            {"theta_min", m.box.theta_min},
            {"theta_max", m.box.theta_max},
            {"u_max", m.box.u_max},
            {"delta", m.box.delta}}}};
}

ModelParams model_from_json(const json& j) {
  ModelParams m;
  m.tau1 = j.at("tau1");
  m.tau3 = j.at("tau3");
  m.kappa = j.at("kappa");
  m.lambda = j.at("lambda");
  m.mu = j.at("mu");
  m.cv = j.at("cv");
  m.r_gas = j.at("r_gas");
  m.dim = j.at("dim");
  const json& b = j.at("admissible_box");
  m.box = {b.at("rho_min"), b.at("rho_max"), b.at("theta_min"), b.at("theta_max"), b.at("u_max"), b.at("delta")};
  return m;
}

json ledger_to_json(const BlowupLedger& L) {
  return {{"dim", L.dim},
          {"M_support", L.M_support},
          {"sigma", L.sigma},
          {"gamma", L.gamma},
          {"max_rho0", L.max_rho0},
          {"min_rho0", L.min_rho0},
          {"u0_l2_squared", L.u0_l2_squared},
          {"c1", L.c1},
          {"c2", L.c2},
          {"c3", L.c3},
          {"c4", L.c4},
          {"c5", L.c5},
          {"F0", L.F0},
          {"G0", L.G0},
          {"W0", L.W0},
          {"f0_threshold", L.f0_threshold},
          {"budget_threshold", L.budget_threshold},
          {"f0_sq_threshold", L.f0_sq_threshold},
          {"sigma_sq_threshold", L.sigma_sq_threshold},
          {"f0_above_threshold", L.f0_above_threshold},
          {"budget_small", L.budget_small},
          {"f0_sq_above_threshold", L.f0_sq_above_threshold},
          {"sigma_large", L.sigma_large},
          {"g0_positive", L.g0_positive},
          {"f0_above_printed_threshold", L.f0_above_printed_threshold},
          {"gamma_below_5_3", L.gamma_below_5_3},
          {"applicable", L.applicable},
          {"bound_at_0", L.bound(0.0)}};
}

void save_field(const std::string& path, const Field& f, const ModelParams& p, const json& extra) {
  json h;
  h["grid"] = grid_to_json(f.grid());
  h["model"] = model_to_json(p);
  h["t"] = f.t;
  h["step"] = f.step;
  h["nvar"] = f.nvar();
  h["columns"] = f.data().cols();
  h["far_field"] = std::vector<double>(f.far_field().data(), f.far_field().data() + f.far_field().size());
  h["extra"] = extra;
  const std::string text = h.dump();
  // Write to a sibling file first so an interrupted write never clobbers the previous copy.
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    const std::uint32_t version = kFieldFormatVersion, reserved = 0;
    const std::uint64_t len = text.size();
    out.write(kMagic, sizeof kMagic);
    out.write(reinterpret_cast<const char*>(&version), sizeof version);
    out.write(reinterpret_cast<const char*>(&reserved), sizeof reserved);
    out.write(reinterpret_cast<const char*>(&len), sizeof len);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.write(reinterpret_cast<const char*>(f.data().data()),
              static_cast<std::streamsize>(f.data().size() * sizeof(double)));
    if (!out) throw std::runtime_error("short write to " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

StoredField load_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  char magic[8];
  std::uint32_t version = 0, reserved = 0;
  std::uint64_t len = 0;
  in.read(magic, sizeof magic);
  in.read(reinterpret_cast<char*>(&version), sizeof version);
  in.read(reinterpret_cast<char*>(&reserved), sizeof reserved);
  in.read(reinterpret_cast<char*>(&len), sizeof len);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0) throw std::runtime_error(path + ": not a field file");
  if (version != kFieldFormatVersion)
    throw std::runtime_error(path + ": unsupported format version " + std::to_string(version));
  std::string text(len, '\0');
  in.read(text.data(), static_cast<std::streamsize>(len));
  const json h = json::parse(text);
  StoredField s;
  s.params = model_from_json(h.at("model"));
  const Grid g = grid_from_json(h.at("grid"));
  s.field = Field(g, s.params);
  const long cols = h.at("columns").get<long>();
  const int nvar = h.at("nvar").get<int>();
  if (nvar != s.field.nvar() || cols != s.field.data().cols())
    throw std::runtime_error(path + ": array shape does not match the grid");
  in.read(reinterpret_cast<char*>(s.field.data().data()),
          static_cast<std::streamsize>(s.field.data().size() * sizeof(double)));
  if (!in) throw std::runtime_error(path + ": truncated data block");
  const auto ff = h.at("far_field").get<std::vector<double>>();
  s.field.set_far_field(Eigen::Map<const Eigen::VectorXd>(ff.data(), static_cast<Eigen::Index>(ff.size())));
  s.field.t = h.at("t").get<double>();
  s.field.step = h.at("step").get<long>();
  s.extra = h.value("extra", json::object());
  return s;
}

void write_snapshot_csv(const std::string& path, const Field& f, const ModelParams& p) {
  const Grid& g = f.grid();
  const int n = g.dim;
  std::vector<std::string> header;
  const char* xs[3] = {"x", "y", "z"};
  const char* us[3] = {"u_x", "u_y", "u_z"};
  const char* qs[3] = {"q_x", "q_y", "q_z"};
  for (int a = 0; a < n; ++a) header.push_back(xs[a]);
  header.push_back("rho");
  for (int a = 0; a < n; ++a) header.push_back(us[a]);
  header.push_back("theta");
  for (int a = 0; a < n; ++a) header.push_back(qs[a]);
  header.push_back("S2");
  CsvWriter w(path, header);
  for_each_interior(g, [&](long c, int i, int j, int k) {
    const auto x = cell_position(g, i, j, k);
    const auto s = f.primitive(c, p);
    std::vector<double> v;
    for (int a = 0; a < n; ++a) v.push_back(x(a));
    v.push_back(s.rho);
    for (int a = 0; a < n; ++a) v.push_back(s.u(a));
    v.push_back(s.theta);
    for (int a = 0; a < n; ++a) v.push_back(s.q(a));
    v.push_back(s.s2);
    w.row(v);
  });
}

}  // namespace hyperns
