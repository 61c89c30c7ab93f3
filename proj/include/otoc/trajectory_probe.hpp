#pragma once

#include <optional>
#include <vector>

#include "otoc/chain.hpp"
#include "otoc/markov.hpp"
#include "otoc/otoc_spin.hpp"

namespace otoc {

struct DominantState {
  Configuration config;
  SignedLog score;  // C_z q^{n_minus(z)}
  bool exact = true;
};

// values indexed (site x, time tau), tau = 0..t
struct MagnetizationGrid {
  int L = 0;
  int t = 0;
  std::vector<double> values;
  std::vector<double> identity;  // identity insertion per tau, should be 1
  bool approximate = false;

  double at(int x, int tau) const { return values[std::size_t(x) * (t + 1) + tau]; }
  double& at(int x, int tau) { return values[std::size_t(x) * (t + 1) + tau]; }
};

inline constexpr int kExactArgmaxSites = 14;

template <MarkovChain C>
DominantState dominant_state(const OtocConfig& cfg, int t, const EngineOptions& opt = {});

template <MarkovChain C>
MagnetizationGrid magnetization_grid(const OtocConfig& cfg, int t, const EngineOptions& opt = {},
                                     std::optional<Configuration> z_max = std::nullopt);

// exact for L <= 14 only
std::vector<Configuration> dominant_trajectory(const OtocConfig& cfg, int t);

// Generic sandwich used by both spin and cluster grids: forward states from
// `top`, backward bra from `final_bra`, insertion diag at every site.
template <MarkovChain C>
MagnetizationGrid sandwich_grid(const std::vector<TimeStep>& steps, const TransitionMatrix4& m, int q,
                                std::span<const LocalVector> top, std::span<const LocalVector> final_bra,
                                LocalVector diag, const EngineOptions& opt);

std::string format_configuration(const Configuration& z, Flavor f = Flavor::Spin);

extern template DominantState dominant_state<DenseChain>(const OtocConfig&, int, const EngineOptions&);
extern template DominantState dominant_state<TensorTrainChain>(const OtocConfig&, int, const EngineOptions&);
extern template MagnetizationGrid magnetization_grid<DenseChain>(const OtocConfig&, int, const EngineOptions&,
                                                                 std::optional<Configuration>);
extern template MagnetizationGrid magnetization_grid<TensorTrainChain>(const OtocConfig&, int,
                                                                       const EngineOptions&,
                                                                       std::optional<Configuration>);
extern template MagnetizationGrid sandwich_grid<DenseChain>(const std::vector<TimeStep>&, const TransitionMatrix4&,
                                                            int, std::span<const LocalVector>,
                                                            std::span<const LocalVector>, LocalVector,
                                                            const EngineOptions&);
extern template MagnetizationGrid sandwich_grid<TensorTrainChain>(const std::vector<TimeStep>&,
                                                                  const TransitionMatrix4&, int,
                                                                  std::span<const LocalVector>,
                                                                  std::span<const LocalVector>, LocalVector,
                                                                  const EngineOptions&);

}  // namespace otoc
