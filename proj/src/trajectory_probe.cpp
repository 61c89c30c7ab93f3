#include "otoc/trajectory_probe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "otoc/dense_chain.hpp"
#include "otoc/errors.hpp"
#include "otoc/tensor_train.hpp"

namespace otoc {

namespace {

std::vector<TimeStep> steps_for(const OtocConfig& cfg, int t) {
  return build_schedule(cfg.geometry, cfg.boundary, cfg.L, t).time_steps();
}

template <MarkovChain C>
void apply_backward(C& bra, const TimeStep& step, const TransitionMatrix4& mt) {
  std::vector<Bond> rev(step.bonds.rbegin(), step.bonds.rend());
  bra.apply_layer(rev, mt);
}

bool is_uniform(const Configuration& z) {
  return std::adjacent_find(z.begin(), z.end(), std::not_equal_to<>()) == z.end();
}

// signed argmax over configurations with plus at x_w, sinks excluded
std::size_t argmax_dense(const std::vector<double>& w, int L, int x_w) {
  const std::size_t mask = std::size_t(1) << (L - 1 - x_w);
  const std::size_t all = (std::size_t(1) << L) - 1;
  std::size_t best = all;
  double best_v = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (!(k & mask) || k == all) continue;
    if (w[k] > best_v) {
      best_v = w[k];
      best = k;
    }
  }
  return best;
}

Configuration decode(std::size_t k, int L) {
  Configuration z(L);
  for (int i = 0; i < L; ++i) z[i] = int((k >> (L - 1 - i)) & 1u);
  return z;
}

}  // namespace

std::string format_configuration(const Configuration& z, Flavor f) {
  std::string s;
  for (int v : z) s += f == Flavor::Spin ? (v == kPlus ? '+' : '-') : (v == kOccupied ? '*' : 'o');
  return s;
}

template <MarkovChain C>
DominantState dominant_state(const OtocConfig& cfg, int t, const EngineOptions& opt) {
  cfg.validate();
  if (t < 0) throw Error(ErrorCode::InvalidParameter, "t must be >= 0");
  const TransitionMatrix4 mod = modified_transition(cfg.gate);
  C chain = C::product(top_state(cfg.L, cfg.x_v), opt.policy);
  for (const TimeStep& step : steps_for(cfg, t)) {
    chain.set_time_step(step.t);
    chain.apply_layer(step.bonds, mod);
    subtract_sinks(chain, Flavor::Spin, cfg.gate.q);
    chain.renormalize();
  }
  const double log_q = std::log(double(cfg.gate.q));
  DominantState out;
  if (cfg.L <= kExactArgmaxSites) {
    const std::vector<double> w = chain.to_dense();
    out.config = decode(argmax_dense(w, cfg.L, cfg.x_w), cfg.L);
  } else {
    // greedy single-site flips from the initial pattern until no flip helps
    Configuration z(cfg.L, kPlus);
    z[cfg.x_v] = kMinus;
    z[cfg.x_w] = kPlus;
    double best = chain.raw_amplitude(z);
    for (bool improved = true; improved;) {
      improved = false;
      for (int x = 0; x < cfg.L; ++x) {
        if (x == cfg.x_w) continue;
        z[x] ^= 1;
        const double a = is_uniform(z) ? -std::numeric_limits<double>::infinity() : chain.raw_amplitude(z);
        if (a > best) {
          best = a;
          improved = true;
        } else {
          z[x] ^= 1;
        }
      }
    }
    out.config = z;
    out.exact = false;
  }
  out.score = SignedLog::from_value(chain.raw_amplitude(out.config)).scaled(chain.log_norm() + log_q);
  return out;
}

template <MarkovChain C>
MagnetizationGrid sandwich_grid(const std::vector<TimeStep>& steps, const TransitionMatrix4& m, int q,
                                std::span<const LocalVector> top, std::span<const LocalVector> final_bra,
                                LocalVector diag, const EngineOptions& opt) {
  const int t = int(steps.size());
  const int L = int(top.size());
  std::vector<C> forward;
  forward.reserve(t + 1);
  forward.push_back(C::product(top, opt.policy));
  for (const TimeStep& step : steps) {
    C next = forward.back();
    next.set_time_step(step.t);
    next.apply_layer(step.bonds, m);
    subtract_sinks(next, m.flavor(), q);
    next.renormalize();
    forward.push_back(std::move(next));
  }
  C bra = C::product(final_bra, opt.policy);
  subtract_sinks_left(bra, m.flavor(), q);
  bra.renormalize();
  const SignedLog z = site_profile(bra, forward.back(), {1.0, 1.0}).inner;
  if (z.sign == 0)
    throw Error(ErrorCode::DegenerateNormalization, "Z(t) = 0 for the chosen final configuration");

  MagnetizationGrid grid;
  grid.L = L;
  grid.t = t;
  grid.values.assign(std::size_t(L) * (t + 1), 0.0);
  grid.identity.assign(t + 1, 0.0);
  const TransitionMatrix4 mt = m.transposed();
  for (int tau = t; tau >= 0; --tau) {
    if (tau < t) {
      bra.set_time_step(tau);
      apply_backward(bra, steps[tau], mt);
      bra.renormalize();
    }
    const SiteProfile prof = site_profile(bra, forward[tau], diag);
    const double id = prof.inner.sign == 0 ? 0.0 : prof.inner.sign * z.sign * std::exp(prof.inner.log_abs - z.log_abs);
    grid.identity[tau] = id;
    for (int x = 0; x < L; ++x) grid.at(x, tau) = prof.ratios[x];
  }
  return grid;
}

template <MarkovChain C>
MagnetizationGrid magnetization_grid(const OtocConfig& cfg, int t, const EngineOptions& opt,
                                     std::optional<Configuration> z_max) {
  cfg.validate();
  if (t < 1) throw Error(ErrorCode::InvalidParameter, "grid needs t >= 1");
  bool approximate = false;
  if (!z_max) {
    const DominantState d = dominant_state<C>(cfg, t, opt);
    z_max = d.config;
    approximate = !d.exact;
  }
  const ProductVector bra = basis_product(*z_max);
  MagnetizationGrid g = sandwich_grid<C>(steps_for(cfg, t), param_transition(cfg.gate), cfg.gate.q,
                                         top_state(cfg.L, cfg.x_v), bra, {-1.0, 1.0}, opt);
  g.approximate = approximate;
  return g;
}

std::vector<Configuration> dominant_trajectory(const OtocConfig& cfg, int t) {
  cfg.validate();
  if (cfg.L > kExactArgmaxSites)
    throw Error(ErrorCode::Unsupported, "dominant trajectory is exact-only (L <= 14); use the magnetization grid");
  const TransitionMatrix4 mod = modified_transition(cfg.gate);
  const auto steps = steps_for(cfg, t);
  std::vector<DenseChain> fwd;
  fwd.push_back(DenseChain::product(top_state(cfg.L, cfg.x_v)));
  for (const TimeStep& step : steps) {
    DenseChain next = fwd.back();
    next.apply_layer(step.bonds, mod);
    subtract_sinks(next, Flavor::Spin, cfg.gate.q);
    next.renormalize();
    fwd.push_back(std::move(next));
  }
  const std::size_t zk = argmax_dense(fwd.back().weights(), cfg.L, cfg.x_w);
  std::vector<Configuration> out(t + 1);
  DenseChain bra = DenseChain::product(basis_product(decode(zk, cfg.L)));
  const TransitionMatrix4 mt = mod.transposed();
  for (int tau = t; tau >= 0; --tau) {
    if (tau < t) {
      apply_backward(bra, steps[tau], mt);
      bra.renormalize();
    }
    const auto& f = fwd[tau].weights();
    const auto& b = bra.weights();
    std::size_t best = 0;
    double best_v = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < f.size(); ++k)
      if (f[k] * b[k] > best_v) {
        best_v = f[k] * b[k];
        best = k;
      }
    out[tau] = decode(best, cfg.L);
  }
  return out;
}

template DominantState dominant_state<DenseChain>(const OtocConfig&, int, const EngineOptions&);
template DominantState dominant_state<TensorTrainChain>(const OtocConfig&, int, const EngineOptions&);
template MagnetizationGrid magnetization_grid<DenseChain>(const OtocConfig&, int, const EngineOptions&,
                                                          std::optional<Configuration>);
template MagnetizationGrid magnetization_grid<TensorTrainChain>(const OtocConfig&, int, const EngineOptions&,
                                                                std::optional<Configuration>);
template MagnetizationGrid sandwich_grid<DenseChain>(const std::vector<TimeStep>&, const TransitionMatrix4&, int,
                                                     std::span<const LocalVector>, std::span<const LocalVector>,
                                                     LocalVector, const EngineOptions&);
template MagnetizationGrid sandwich_grid<TensorTrainChain>(const std::vector<TimeStep>&, const TransitionMatrix4&,
                                                           int, std::span<const LocalVector>,
                                                           std::span<const LocalVector>, LocalVector,
                                                           const EngineOptions&);

}  // namespace otoc
