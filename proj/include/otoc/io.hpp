#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "otoc/floquet.hpp"
#include "otoc/relaxation.hpp"
#include "otoc/trajectory_probe.hpp"

namespace otoc {

inline constexpr const char* kSeriesSchema = "# otoc-relax series v1";
inline constexpr const char* kFloquetSchema = "# otoc-relax floquet v1";
inline constexpr const char* kGridSchema = "# otoc-relax grid v1";

using KeyValues = std::map<std::string, std::string>;

void write_series_csv(const std::filesystem::path& file, const RelaxationSeries& s);
RelaxationSeries read_series_csv(const std::filesystem::path& file);
void write_fit_report(const std::filesystem::path& file, const TwoStageFit& fit);
void write_floquet_csv(const std::filesystem::path& file, const FloquetResult& r, std::uint64_t seed);
void write_grid_csv(const std::filesystem::path& file, const MagnetizationGrid& g);
void write_grid_pgm(const std::filesystem::path& file, const MagnetizationGrid& g);
int pgm_level(double v);
void write_key_values(const std::filesystem::path& file, const KeyValues& kv, const std::string& header = "");
KeyValues read_key_values(const std::filesystem::path& file);

}  // namespace otoc
