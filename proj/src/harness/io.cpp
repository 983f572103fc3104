#include "fmhd/harness/io.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>
#include <sstream>

#include "fmhd/errors.hpp"

namespace fmhd {

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string exponent_tag(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", s);
  return buf;
}

}  // namespace

std::vector<std::string> timeseries_columns(const std::vector<double>& exponents) {
  std::vector<std::string> cols = {"t", "energy", "dissipation"};
  for (double s : exponents) {
    const auto tag = exponent_tag(s);
    for (const char* f : {"u", "v", "b", "omega"}) cols.push_back(std::string(f) + "_H" + tag);
  }
  for (const char* c : {"b_linf", "omega_linf", "grad_b_linf", "grad_u_linf", "r1", "r2", "r3", "V", "H",
                        "magnetic_dissipation", "dissipation_integral", "step"})
    cols.emplace_back(c);
  return cols;
}

TimeseriesWriter::TimeseriesWriter(const std::filesystem::path& path, std::vector<double> exponents)
    : out_(path), exponents_(std::move(exponents)) {
  if (!out_) throw std::runtime_error("cannot write " + path.string());
  const auto cols = timeseries_columns(exponents_);
  for (std::size_t i = 0; i < cols.size(); ++i) out_ << (i ? "," : "") << cols[i];
  out_ << '\n';
}

void TimeseriesWriter::write(const DiagnosticsRecord& r) {
  if (r.sobolev.size() != exponents_.size()) throw DimensionError("record does not carry the configured exponents");
  const auto opt = [](const std::optional<double>& x) { return x ? format_real(*x) : std::string(); };
  out_ << format_real(r.t) << ',' << format_real(r.energy_total) << ',' << format_real(r.dissipation);
  for (const auto& s : r.sobolev)
    out_ << ',' << format_real(s.u) << ',' << format_real(s.v) << ',' << format_real(s.b) << ',' << format_real(s.omega);
  out_ << ',' << format_real(r.linf.b) << ',' << format_real(r.linf.omega) << ',' << format_real(r.linf.grad_b) << ','
       << format_real(r.linf.grad_u) << ',' << format_real(r.residuals.lorentz) << ','
       << format_real(r.residuals.transport) << ',' << format_real(r.residuals.helmholtz) << ',' << opt(r.V) << ','
       << opt(r.H) << ',' << format_real(r.magnetic_dissipation) << ',' << format_real(r.dissipation_integral) << ','
       << r.step << '\n';
  out_.flush();
}

std::optional<std::size_t> Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  return std::nullopt;
}

Table read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  Table t;
  std::string line;
  if (!std::getline(in, line)) return t;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) t.columns.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      const std::string cell = line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      row.push_back(cell.empty() ? std::numeric_limits<double>::quiet_NaN() : std::strtod(cell.c_str(), nullptr));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Checkpoints

namespace {

constexpr std::array<char, 4> kMagic = {'F', 'M', 'H', 'D'};

template <typename U>
void put_le(std::ostream& out, U value) {
  std::array<char, sizeof(U)> bytes;
  for (std::size_t i = 0; i < sizeof(U); ++i) bytes[i] = static_cast<char>((value >> (8 * i)) & 0xff);
  out.write(bytes.data(), bytes.size());
}

void put_u32(std::ostream& out, std::uint32_t v) { put_le(out, v); }
void put_f64(std::ostream& out, double v) { put_le(out, std::bit_cast<std::uint64_t>(v)); }

template <typename U>
U get_le(std::istream& in) {
  std::array<unsigned char, sizeof(U)> bytes;
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) throw CheckpointError("checkpoint is truncated");
  U value = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) value |= static_cast<U>(bytes[i]) << (8 * i);
  return value;
}

std::uint32_t get_u32(std::istream& in) { return get_le<std::uint32_t>(in); }
double get_f64(std::istream& in) { return std::bit_cast<double>(get_le<std::uint64_t>(in)); }

void put_field(std::ostream& out, const SpectralScalar<double>& f) {
  const auto* c = f.coeffs.data();
  for (Eigen::Index i = 0; i < f.coeffs.size(); ++i) {
    put_f64(out, c[i].real());
    put_f64(out, c[i].imag());
  }
}

SpectralScalar<double> get_field(std::istream& in, const GridPtr& grid) {
  SpectralScalar<double> f(grid);
  auto* c = f.coeffs.data();
  for (Eigen::Index i = 0; i < f.coeffs.size(); ++i) {
    const double re = get_f64(in);
    const double im = get_f64(in);
    c[i] = {re, im};
  }
  return f;
}

}  // namespace

void write_checkpoint(std::ostream& out, const SimState<double>& s, const SystemConfig& config) {
  out.write(kMagic.data(), kMagic.size());
  put_u32(out, checkpoint_version);
  put_u32(out, static_cast<std::uint32_t>(s.grid()->n()));
  put_u32(out, static_cast<std::uint32_t>(config.variant));
  put_f64(out, config.alpha);
  put_f64(out, config.beta);
  put_f64(out, config.gamma);
  put_u32(out, static_cast<std::uint32_t>(config.g ? config.g->id() : GFamily::const1));
  put_f64(out, s.t);
  for (int i = 0; i < 2; ++i) put_field(out, s.v[i]);
  for (int i = 0; i < 2; ++i) put_field(out, s.b[i]);
  if (!out) throw CheckpointError("checkpoint write failed");
}

void write_checkpoint(const std::filesystem::path& path, const SimState<double>& s, const SystemConfig& config) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CheckpointError("cannot create " + path.string());
  write_checkpoint(out, s, config);
}

Checkpoint read_checkpoint(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size())) throw CheckpointError("checkpoint is truncated");
  if (magic != kMagic) throw CheckpointError("not a checkpoint file (bad magic)");
  Checkpoint ck;
  ck.header.version = get_u32(in);
  if (ck.header.version != checkpoint_version)
    throw CheckpointError("checkpoint format version " + std::to_string(ck.header.version) + " is not supported (expected " +
                          std::to_string(checkpoint_version) + ")");
  const std::uint32_t n = get_u32(in);
  const std::uint32_t variant = get_u32(in);
  if (variant > static_cast<std::uint32_t>(SystemVariant::appendix_a)) throw CheckpointError("unknown variant tag");
  ck.header.variant = static_cast<SystemVariant>(variant);
  ck.header.alpha = get_f64(in);
  ck.header.beta = get_f64(in);
  ck.header.gamma = get_f64(in);
  const std::uint32_t g = get_u32(in);
  if (g > static_cast<std::uint32_t>(GFamily::custom_function)) throw CheckpointError("unknown g family id");
  ck.header.g = static_cast<GFamily>(g);
  ck.header.time = get_f64(in);
  GridPtr grid;
  try {
    grid = make_grid(static_cast<int>(n));
  } catch (const ConfigError& e) {
    throw CheckpointError(std::string("checkpoint grid: ") + e.what());
  }
  ck.header.n = grid->n();
  auto v1 = get_field(in, grid);
  auto v2 = get_field(in, grid);
  auto b1 = get_field(in, grid);
  auto b2 = get_field(in, grid);
  ck.v = SpectralVector<double>(std::move(v1), std::move(v2));
  ck.b = SpectralVector<double>(std::move(b1), std::move(b2));
  return ck;
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open " + path.string());
  return read_checkpoint(in);
}

SystemConfig system_from_header(const CheckpointHeader& h, const std::optional<SystemConfig>& fallback) {
  std::optional<LogSymbol> g;
  const bool needs_g = h.variant == SystemVariant::thm2 || h.variant == SystemVariant::thm3;
  if (needs_g) {
    if (h.g == GFamily::custom_table || h.g == GFamily::custom_function) {
      if (!fallback || !fallback->g || fallback->g->id() != h.g)
        throw ConfigError("checkpoint uses a " + family_name(h.g) + " weight; pass the run config to resume it");
      g = fallback->g;
    } else {
      g = LogSymbol::family(h.g);
    }
  }
  auto cfg = make_system(h.variant, h.alpha, h.beta, h.gamma, g);
  if (fallback && (fallback->variant != cfg.variant || fallback->alpha != cfg.alpha || fallback->beta != cfg.beta ||
                   fallback->gamma != cfg.gamma))
    throw ConfigError("config system does not match the checkpoint header");
  return cfg;
}

}  // namespace fmhd
