#include "otoc/cluster_dynamics.hpp"

#include "otoc/dense_chain.hpp"
#include "otoc/errors.hpp"
#include "otoc/tensor_train.hpp"

namespace otoc {

void ClusterConfig::validate() const {
  if (!std::isfinite(az)) throw Error(ErrorCode::InvalidParameter, "az is not finite");
  if (q != 2) throw Error(ErrorCode::UnsupportedEnsemble, "cluster transfer matrix is derived for q = 2");
  if (L < 4) throw Error(ErrorCode::TooSmall, "L must be >= 4");
  if (T < 0) throw Error(ErrorCode::InvalidParameter, "T must be >= 0");
  if (x_w < 1 || x_w >= L) throw Error(ErrorCode::InvalidParameter, "x_w must lie in [1, L)");
}

ProductVector cluster_top_state(int L) {
  ProductVector p(L, LocalVector{1.0, 0.0});
  p.at(0) = {0.0, 1.0};
  return p;
}

ProductVector one_point_bra(int L, int q) { return ProductVector(L, LocalVector{1.0, 1.0 / (q + 1.0)}); }

ProductVector cluster_otoc_bra(int L, int x_w, int q) {
  ProductVector p(L, LocalVector{0.5, 0.5});
  p.at(x_w) = {1.0 / q, -1.0 / (q * (q + 1.0))};
  return p;
}

namespace {

std::vector<TimeStep> cluster_steps(const ClusterConfig& cfg) {
  return build_schedule(cfg.geometry, cfg.boundary, cfg.L, cfg.T).time_steps();
}

}  // namespace

template <MarkovChain C>
RelaxationSeries one_point_sq(const ClusterConfig& cfg, const EngineOptions& opt) {
  cfg.validate();
  C chain = C::product(cluster_top_state(cfg.L), opt.policy);
  return run_series(chain, cluster_steps(cfg), cluster_transfer(cfg.az), cfg.q, one_point_bra(cfg.L, cfg.q), opt);
}

template <MarkovChain C>
RelaxationSeries otoc_cluster(const ClusterConfig& cfg, const EngineOptions& opt) {
  cfg.validate();
  C chain = C::product(cluster_top_state(cfg.L), opt.policy);
  return run_series(chain, cluster_steps(cfg), cluster_transfer(cfg.az), cfg.q,
                    cluster_otoc_bra(cfg.L, cfg.x_w, cfg.q), opt);
}

template <MarkovChain C>
MagnetizationGrid cluster_heatmap(const ClusterConfig& cfg, const EngineOptions& opt) {
  cfg.validate();
  if (cfg.T < 1) throw Error(ErrorCode::InvalidParameter, "grid needs T >= 1");
  return sandwich_grid<C>(cluster_steps(cfg), cluster_transfer(cfg.az), cfg.q, cluster_top_state(cfg.L),
                          cluster_otoc_bra(cfg.L, cfg.x_w, cfg.q), {1.0, -1.0}, opt);
}

template RelaxationSeries one_point_sq<DenseChain>(const ClusterConfig&, const EngineOptions&);
template RelaxationSeries one_point_sq<TensorTrainChain>(const ClusterConfig&, const EngineOptions&);
template RelaxationSeries otoc_cluster<DenseChain>(const ClusterConfig&, const EngineOptions&);
template RelaxationSeries otoc_cluster<TensorTrainChain>(const ClusterConfig&, const EngineOptions&);
template MagnetizationGrid cluster_heatmap<DenseChain>(const ClusterConfig&, const EngineOptions&);
template MagnetizationGrid cluster_heatmap<TensorTrainChain>(const ClusterConfig&, const EngineOptions&);

}  // namespace otoc
