#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "otoc/io.hpp"

namespace otoc {

struct RunConfig {
  std::string subcommand;
  std::string geom = "bw";
  std::string bc = "obc";
  std::string engine = "tt";
  std::string basis = "spin";
  std::string phi_mode = "clean";
  int L = 20;
  int T = 120;
  int q = 2;
  int xv = 0;
  int xw = 4;
  int chi = 128;
  int n_typ = 1;
  int n_samples = 1;
  double ax = 1.0;
  double ay = 1.0;
  double az = 0.5;
  double cutoff = 1e-14;
  double ceiling = 1e-6;
  double phi = 0.6;
  double margin = 3.0;
  double breakpoint = 0.0;  // c in c*L; 0 picks the default
  std::uint64_t seed = 1;
  std::string out = "out";
  std::string sweep;

  KeyValues to_key_values() const;
};

RunConfig defaults_for(const std::string& subcommand);
const std::vector<std::string>& subcommands();

// full command-line entry point; returns the process exit status
int dispatch(int argc, const char* const* argv);
// runs one resolved config, writing into cfg.out
void run(const RunConfig& cfg, std::ostream& log);

int thread_budget();

}  // namespace otoc
