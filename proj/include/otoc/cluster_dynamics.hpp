#pragma once

#include "otoc/chain.hpp"
#include "otoc/markov.hpp"
#include "otoc/relaxation.hpp"
#include "otoc/trajectory_probe.hpp"

namespace otoc {

struct ClusterConfig {
  double az = 0.5;
  int q = 2;
  Geometry geometry = Geometry::Brickwork;
  Boundary boundary = Boundary::Open;
  int L = 16;
  int T = 64;
  int x_w = 4;

  void validate() const;
};

// occupied at site 0, empty elsewhere
ProductVector cluster_top_state(int L);
// (1, 1/(q+1)) per site
ProductVector one_point_bra(int L, int q);
// (1/2, 1/2) per site, (1/q, -1/(q(q+1))) at x_w
ProductVector cluster_otoc_bra(int L, int x_w, int q);

template <MarkovChain C>
RelaxationSeries one_point_sq(const ClusterConfig& cfg, const EngineOptions& opt = {});
template <MarkovChain C>
RelaxationSeries otoc_cluster(const ClusterConfig& cfg, const EngineOptions& opt = {});
template <MarkovChain C>
MagnetizationGrid cluster_heatmap(const ClusterConfig& cfg, const EngineOptions& opt = {});

extern template RelaxationSeries one_point_sq<DenseChain>(const ClusterConfig&, const EngineOptions&);
extern template RelaxationSeries one_point_sq<TensorTrainChain>(const ClusterConfig&, const EngineOptions&);
extern template RelaxationSeries otoc_cluster<DenseChain>(const ClusterConfig&, const EngineOptions&);
extern template RelaxationSeries otoc_cluster<TensorTrainChain>(const ClusterConfig&, const EngineOptions&);
extern template MagnetizationGrid cluster_heatmap<DenseChain>(const ClusterConfig&, const EngineOptions&);
extern template MagnetizationGrid cluster_heatmap<TensorTrainChain>(const ClusterConfig&, const EngineOptions&);

}  // namespace otoc
