#include "otoc/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "otoc/dense_chain.hpp"
#include "otoc/tensor_train.hpp"

namespace otoc {

double series_deviation(const RelaxationSeries& a, const RelaxationSeries& b, bool* signs_match) {
  const std::size_t n = std::min(a.points.size(), b.points.size());
  double dev = a.points.size() == b.points.size() ? 0.0 : INFINITY;
  bool same = true;
  for (std::size_t i = 0; i < n; ++i) {
    same = same && a.points[i].sign == b.points[i].sign && a.points[i].t == b.points[i].t;
    dev = std::max(dev, std::abs(a.points[i].log_abs - b.points[i].log_abs));
  }
  if (signs_match) *signs_match = same;
  return dev;
}

std::vector<OracleCase> oracle_check(int L, const std::vector<double>& azs, int x_w) {
  std::vector<OracleCase> out;
  EngineOptions opt;
  opt.policy.chi = 1 << ((L + 1) / 2);
  for (Geometry g : {Geometry::Brickwork, Geometry::Staircase})
    for (Boundary b : {Boundary::Open, Boundary::Periodic})
      for (double az : azs) {
        OtocConfig cfg;
        cfg.gate.az = az;
        cfg.geometry = g;
        cfg.boundary = b;
        cfg.L = L;
        cfg.T = 6 * L;
        cfg.x_w = std::min(x_w, L - 1);
        const RelaxationSeries d = run_otoc<DenseChain>(cfg, opt);
        const RelaxationSeries t = run_otoc<TensorTrainChain>(cfg, opt);
        bool signs = false;
        const double dev = series_deviation(d, t, &signs);
        out.push_back({g, b, az, dev, signs, int(d.points.size())});
      }
  return out;
}

}  // namespace otoc
