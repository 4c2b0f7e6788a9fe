// include/dysaug/nn/optimizer.h

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

#ifndef DYSAUG_NN_OPTIMIZER_H_
#define DYSAUG_NN_OPTIMIZER_H_

#include <cmath>
#include <cstdint>
#include <vector>

#include "dysaug/nn/tensor.h"

namespace dysaug {
namespace nn {

enum class OptimizerKind { kSgd, kAdam };

struct TrainSchedule {
  double base_lr = 2e-4;
  int halve_every = 2500;  // iterations between learning-rate halvings
  int max_iters = 1000;
  int batch_size = 8;
  uint64_t seed = 0;
  OptimizerKind optimizer = OptimizerKind::kAdam;
  double adam_beta1 = 0.5;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;

  void Validate() const {
    if (!(base_lr > 0.0)) throw Error("TrainSchedule: base_lr must be > 0");
    if (halve_every < 1) throw Error("TrainSchedule: halve_every must be >= 1");
    if (max_iters < 0) throw Error("TrainSchedule: max_iters must be >= 0");
    if (batch_size < 1) throw Error("TrainSchedule: batch_size must be >= 1");
  }
};

// base_lr * 0.5^floor(iter / halve_every), exact in floating point.
inline double LearningRate(const TrainSchedule &schedule, int iter) {
  return std::ldexp(schedule.base_lr, -(iter / schedule.halve_every));
}

// Applies one update to a fixed parameter set and clears their grads.
// Holds the Adam moment buffers, so one instance must persist across a
// training run.
template <typename T>
class Optimizer {
 public:
  Optimizer(std::vector<Tensor<T>> params, const TrainSchedule &schedule)
      : params_(std::move(params)), schedule_(schedule) {
    schedule_.Validate();
    if (schedule_.optimizer == OptimizerKind::kAdam) {
      m_.resize(params_.size());
      v_.resize(params_.size());
      for (size_t i = 0; i < params_.size(); ++i) {
        m_[i].assign(params_[i].Data().size(), T(0));
        v_[i].assign(params_[i].Data().size(), T(0));
      }
    }
  }

  void Step(int iter) {
    for (const Tensor<T> &p : params_)
      if (!p.HasGrad())
        throw MissingGrads("Optimizer::Step: parameter has no gradient");
    const double lr = LearningRate(schedule_, iter);

    if (schedule_.optimizer == OptimizerKind::kSgd) {
      for (Tensor<T> &p : params_) {
        auto &data = p.Data();
        const auto &grad = p.Grad();
        for (size_t i = 0; i < data.size(); ++i)
          data[i] -= static_cast<T>(lr) * grad[i];
      }
    } else {
      ++adam_t_;
      const double b1 = schedule_.adam_beta1, b2 = schedule_.adam_beta2;
      const double bias1 = 1.0 - std::pow(b1, adam_t_);
      const double bias2 = 1.0 - std::pow(b2, adam_t_);
      for (size_t pi = 0; pi < params_.size(); ++pi) {
        auto &data = params_[pi].Data();
        const auto &grad = params_[pi].Grad();
        auto &m = m_[pi];
        auto &v = v_[pi];
        for (size_t i = 0; i < data.size(); ++i) {
          const double g = static_cast<double>(grad[i]);
          m[i] = static_cast<T>(b1 * m[i] + (1.0 - b1) * g);
          v[i] = static_cast<T>(b2 * v[i] + (1.0 - b2) * g * g);
          const double mhat = static_cast<double>(m[i]) / bias1;
          const double vhat = static_cast<double>(v[i]) / bias2;
          data[i] -= static_cast<T>(lr * mhat /
                                    (std::sqrt(vhat) + schedule_.adam_eps));
        }
      }
    }
    for (Tensor<T> &p : params_) p.ZeroGrad();
  }

 private:
  std::vector<Tensor<T>> params_;
  TrainSchedule schedule_;
  std::vector<std::vector<T>> m_, v_;
  long adam_t_ = 0;
};

}  // namespace nn
}  // namespace dysaug

#endif  // DYSAUG_NN_OPTIMIZER_H_
