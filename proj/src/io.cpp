#include "otoc/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "otoc/errors.hpp"

namespace otoc {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& file) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  std::ofstream out(file);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + file.string());
  out << std::setprecision(17);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void write_series_csv(const fs::path& file, const RelaxationSeries& s) {
  auto out = open_out(file);
  out << kSeriesSchema << " status=" << to_string(s.status) << "\n";
  out << "t,log10_abs,sign,trunc_err\n";
  for (const auto& p : s.points)
    out << p.t << ',' << p.log_abs / std::log(10.0) << ',' << p.sign << ',' << p.trunc_err << '\n';
}

RelaxationSeries read_series_csv(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + file.string());
  RelaxationSeries s;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(kSeriesSchema, 0) == 0) {
      const auto at = line.find("status=");
      if (at != std::string::npos) {
        const std::string st = trim(line.substr(at + 7));
        for (RunStatus r : {RunStatus::Completed, RunStatus::SignalFloor, RunStatus::TruncationNoise})
          if (st == to_string(r)) s.status = r;
      }
      continue;
    }
    if (line.empty() || line[0] == '#' || line[0] == 't') continue;
    std::istringstream ls(line);
    SeriesPoint p{};
    char comma;
    double l10;
    ls >> p.t >> comma >> l10 >> comma >> p.sign >> comma >> p.trunc_err;
    if (!ls) throw Error(ErrorCode::Io, "malformed series line: " + line);
    p.log_abs = l10 * std::log(10.0);
    s.points.push_back(p);
  }
  return s;
}

void write_fit_report(const fs::path& file, const TwoStageFit& fit) {
  auto out = open_out(file);
  out << "r1 = " << fit.r1 << "\n"
      << "r2 = " << fit.r2 << "\n"
      << "window1 = (" << fit.window1.lo << ", " << fit.window1.hi << "]\n"
      << "window2 = (" << fit.window2.lo << ", " << fit.window2.hi << "]\n"
      << "breakpoint = " << fit.breakpoint << "\n"
      << "rms_residual = " << fit.rms_residual << "\n";
}

void write_floquet_csv(const fs::path& file, const FloquetResult& r, std::uint64_t seed) {
  auto out = open_out(file);
  out << kFloquetSchema << " saturation=" << r.saturation << "\n";
  out << "t,otoc_re,otoc_im,otoc_minus_sat_abs,n_samples,seed\n";
  for (std::size_t t = 0; t < r.otoc.size(); ++t)
    out << t << ',' << r.otoc[t].real() << ',' << r.otoc[t].imag() << ','
        << std::abs(r.otoc[t].real() - r.saturation) << ',' << r.n_samples << ',' << seed << '\n';
}

void write_grid_csv(const fs::path& file, const MagnetizationGrid& g) {
  auto out = open_out(file);
  out << kGridSchema << " rows=site cols=tau\n";
  out << "x";
  for (int tau = 0; tau <= g.t; ++tau) out << ",tau" << tau;
  out << '\n';
  for (int x = 0; x < g.L; ++x) {
    out << x;
    for (int tau = 0; tau <= g.t; ++tau) out << ',' << g.at(x, tau);
    out << '\n';
  }
}

int pgm_level(double v) {
  const double c = std::clamp(v, -1.0, 1.0);
  return int(std::lround(127.5 * (c + 1.0)));
}

void write_grid_pgm(const fs::path& file, const MagnetizationGrid& g) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + file.string());
  // width = time, height = sites
  out << "P5\n" << (g.t + 1) << ' ' << g.L << "\n255\n";
  for (int x = 0; x < g.L; ++x)
    for (int tau = 0; tau <= g.t; ++tau) out.put(char(std::uint8_t(pgm_level(g.at(x, tau)))));
}

void write_key_values(const fs::path& file, const KeyValues& kv, const std::string& header) {
  auto out = open_out(file);
  if (!header.empty()) out << "# " << header << '\n';
  for (const auto& [k, v] : kv) out << k << " = " << v << '\n';
}

KeyValues read_key_values(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + file.string());
  KeyValues kv;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::Io, file.string() + ":" + std::to_string(n) + ": expected key = value");
    kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return kv;
}

}  // namespace otoc
