#include "otoc/otoc_spin.hpp"

#include <string>

#include "otoc/dense_chain.hpp"
#include "otoc/errors.hpp"
#include "otoc/tensor_train.hpp"

namespace otoc {

void OtocConfig::validate() const {
  gate.validate();
  if (L < 4) throw Error(ErrorCode::TooSmall, "L must be >= 4");
  if (T < 0) throw Error(ErrorCode::InvalidParameter, "T must be >= 0");
  if (x_v < 0 || x_v >= L || x_w < 0 || x_w >= L)
    throw Error(ErrorCode::InvalidParameter, "insertion site outside the chain");
  if (x_v == x_w) throw Error(ErrorCode::InvalidParameter, "x_v and x_w must differ");
}

ProductVector top_state(int L, int x_v) {
  ProductVector p(L, LocalVector{0.0, 1.0});
  p.at(x_v) = {1.0, 0.0};
  return p;
}

ProductVector bottom_bra(int L, int x_w, int q) {
  ProductVector p(L, LocalVector{double(q), 1.0});
  p.at(x_w) = {0.0, 1.0};
  return p;
}

template <MarkovChain C>
RelaxationSeries run_otoc(const OtocConfig& cfg, const EngineOptions& opt) {
  cfg.validate();
  const LayerSchedule sched = build_schedule(cfg.geometry, cfg.boundary, cfg.L, cfg.T);
  const TransitionMatrix4 m = param_transition(cfg.gate);
  const ProductVector top = top_state(cfg.L, cfg.x_v);
  C chain = C::product(top, opt.policy);
  return run_series(chain, sched.time_steps(), m, cfg.gate.q, bottom_bra(cfg.L, cfg.x_w, cfg.gate.q), opt);
}

template RelaxationSeries run_otoc<DenseChain>(const OtocConfig&, const EngineOptions&);
template RelaxationSeries run_otoc<TensorTrainChain>(const OtocConfig&, const EngineOptions&);

}  // namespace otoc
