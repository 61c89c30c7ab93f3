#pragma once

#include "otoc/chain.hpp"
#include "otoc/gate_models.hpp"
#include "otoc/lattice_schedule.hpp"
#include "otoc/markov.hpp"
#include "otoc/relaxation.hpp"
#include "otoc/tensor_train.hpp"

namespace otoc {

struct OtocConfig {
  GateParams gate;
  Geometry geometry = Geometry::Brickwork;
  Boundary boundary = Boundary::Open;
  int L = 20;
  int T = 120;
  int x_v = 0;
  int x_w = 4;

  void validate() const;
};

// minus at x_v, plus elsewhere
ProductVector top_state(int L, int x_v);
// (1, q) per site for (plus, minus) weights, with only plus allowed at x_w
ProductVector bottom_bra(int L, int x_w, int q);

template <MarkovChain C>
SignedLog bottom_overlap(const C& chain, int x_w, int q) {
  return chain.overlap(bottom_bra(chain.size(), x_w, q));
}

template <MarkovChain C>
RelaxationSeries run_otoc(const OtocConfig& cfg, const EngineOptions& opt = {});

extern template RelaxationSeries run_otoc<DenseChain>(const OtocConfig&, const EngineOptions&);
extern template RelaxationSeries run_otoc<TensorTrainChain>(const OtocConfig&, const EngineOptions&);

}  // namespace otoc
