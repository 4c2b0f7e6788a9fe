// include/dysaug/nn/grad_check.h

// Copyright 2026  The Dysaug Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef DYSAUG_NN_GRAD_CHECK_H_
#define DYSAUG_NN_GRAD_CHECK_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "dysaug/nn/layers.h"
#include "dysaug/util/rng.h"

namespace dysaug {
namespace nn {

struct GradCheckReport {
  bool pass = false;
  double tolerance = 0.0;
  double max_rel_error = 0.0;
  int num_checked = 0;
  std::vector<std::string> failures;
};

// Central-finite-difference verification of reverse-mode gradients, double
// precision only. loss_fn must rebuild the forward graph from the current
// parameter values on every call. A random coordinate subsample of each
// parameter is probed at step epsilon; relative error uses
// |analytic - numeric| / max(|analytic|, |numeric|, 1).
inline GradCheckReport GradCheckFn(
    const std::function<Tensor<double>()> &loss_fn,
    const std::vector<Tensor<double>> &params, double tolerance,
    uint64_t seed = 20260541, int max_coords_per_param = 24,
    double epsilon = 1e-5) {
  GradCheckReport report;
  report.tolerance = tolerance;

  for (const Tensor<double> &p : params)
    const_cast<Tensor<double> &>(p).ZeroGrad();
  Tensor<double> loss = loss_fn();
  Backward(loss);

  std::vector<std::vector<double>> analytic;
  analytic.reserve(params.size());
  for (const Tensor<double> &p : params) {
    if (!p.HasGrad())
      throw MissingGrads("GradCheckFn: parameter not reached by backward");
    analytic.push_back(p.Grad());
  }

  util::Rng rng(seed);
  for (size_t pi = 0; pi < params.size(); ++pi) {
    Tensor<double> &p = const_cast<Tensor<double> &>(params[pi]);
    const size_t numel = p.Data().size();
    std::vector<size_t> coords;
    if (static_cast<int>(numel) <= max_coords_per_param) {
      for (size_t i = 0; i < numel; ++i) coords.push_back(i);
    } else {
      for (int k = 0; k < max_coords_per_param; ++k)
        coords.push_back(rng.UniformIndex(numel));
    }
    for (size_t ci : coords) {
      const double saved = p.Data()[ci];
      p.Data()[ci] = saved + epsilon;
      const double loss_hi = loss_fn().Data()[0];
      p.Data()[ci] = saved - epsilon;
      const double loss_lo = loss_fn().Data()[0];
      p.Data()[ci] = saved;

      const double numeric = (loss_hi - loss_lo) / (2.0 * epsilon);
      const double a = analytic[pi][ci];
      const double rel = std::fabs(a - numeric) /
                         std::max({std::fabs(a), std::fabs(numeric), 1.0});
      report.max_rel_error = std::max(report.max_rel_error, rel);
      ++report.num_checked;
      if (rel >= tolerance)
        report.failures.push_back(
            "param " + std::to_string(pi) + "[" + std::to_string(ci) +
            "]: analytic=" + std::to_string(a) +
            " numeric=" + std::to_string(numeric));
    }
  }
  for (const Tensor<double> &p : params)
    const_cast<Tensor<double> &>(p).ZeroGrad();
  report.pass = report.failures.empty();
  return report;
}

// Checks every parameter of `model` against finite differences using a
// fixed random linear readout of the network output as the scalar loss.
inline GradCheckReport GradCheck(const Sequential<double> &model,
                                 const Tensor<double> &input, double tolerance,
                                 uint64_t seed = 20260541,
                                 int max_coords_per_param = 24) {
  // The readout weights are fixed up front so every loss_fn call sees the
  // same functional.
  Tensor<double> probe;
  {
    Tensor<double> out = model.Forward(input);
    util::Rng rng(seed ^ 0x9E3779B97F4A7C15ull);
    std::vector<double> r(out.Data().size());
    for (auto &v : r) v = rng.Uniform() * 2.0 - 1.0;
    probe = Tensor<double>::Leaf(out.Shape(), std::move(r), false);
  }
  auto loss_fn = [&]() { return Sum(Mul(model.Forward(input), probe)); };
  return GradCheckFn(loss_fn, model.Params(), tolerance, seed,
                     max_coords_per_param);
}

}  // namespace nn
}  // namespace dysaug

#endif  // DYSAUG_NN_GRAD_CHECK_H_
