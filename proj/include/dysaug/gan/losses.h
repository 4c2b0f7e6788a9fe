// include/dysaug/gan/losses.h

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

#ifndef DYSAUG_GAN_LOSSES_H_
#define DYSAUG_GAN_LOSSES_H_

#include <vector>

#include "dysaug/nn/tensor.h"

namespace dysaug {
namespace gan {

DYSAUG_DEFINE_ERROR(UnalignedPair);
DYSAUG_DEFINE_ERROR(EmptyTrainingSet);
DYSAUG_DEFINE_ERROR(UnknownSpeakerInPairing);
DYSAUG_DEFINE_ERROR(MissingCheckpoint);

// All losses take pre-sigmoid logits; log(sigmoid(.)) runs through the
// numerically safe LogSigmoid op, and log(1 - sigmoid(z)) = logsigmoid(-z).

// Minimax value E[log D(real)] + E[log(1 - D(fake))], the batched
// discriminator objective shared by the parallel model and the condition
// head of the spectral-basis model. The discriminator ascends this value.
template <typename T>
nn::Tensor<T> RealFakeValue(const nn::Tensor<T> &real_logits,
                            const nn::Tensor<T> &fake_logits) {
  return nn::Add(nn::Mean(nn::LogSigmoid(real_logits)),
                 nn::Mean(nn::LogSigmoid(nn::Scale(fake_logits, -1.0))));
}

// Binary cross-entropy against an all-ones (positive) or all-zeros label
// batch: -mean log sigmoid(+-z).
template <typename T>
nn::Tensor<T> BceWithLogits(const nn::Tensor<T> &logits, bool positive_label) {
  auto z = positive_label ? logits : nn::Scale(logits, -1.0);
  return nn::Scale(nn::Mean(nn::LogSigmoid(z)), -1.0);
}

namespace internal {

template <typename T>
nn::Tensor<T> OneHotMask(const std::vector<int> &labels, int n_classes) {
  const int n = static_cast<int>(labels.size());
  std::vector<T> mask(static_cast<size_t>(n) * n_classes, T(0));
  for (int i = 0; i < n; ++i) {
    if (labels[i] < 0 || labels[i] >= n_classes)
      throw ShapeMismatch("one-hot label out of range");
    mask[static_cast<size_t>(i) * n_classes + labels[i]] = T(1);
  }
  return nn::Tensor<T>::Leaf({n, n_classes}, std::move(mask), false);
}

}  // namespace internal

// Per-class sigmoid BCE against one-hot speaker targets, averaged over the
// batch:  -1/N sum_n [ log s(z_{n,j_n}) + sum_{k != j_n} log(1 - s(z_{n,k})) ].
template <typename T>
nn::Tensor<T> BceOneHot(const nn::Tensor<T> &logits,
                        const std::vector<int> &labels) {
  const auto &s = logits.Shape();
  if (s.size() != 2 || static_cast<size_t>(s[0]) != labels.size())
    throw ShapeMismatch("BceOneHot: logits must be (batch, classes)");
  auto mask = internal::OneHotMask<T>(labels, s[1]);
  auto inv = nn::Tensor<T>::Leaf(
      s, std::vector<T>(logits.Data().size(), T(1)), false);
  auto pos = nn::Mul(mask, nn::LogSigmoid(logits));
  auto neg = nn::Mul(nn::Sub(inv, mask),
                     nn::LogSigmoid(nn::Scale(logits, -1.0)));
  return nn::Scale(nn::Sum(nn::Add(pos, neg)),
                   -1.0 / static_cast<double>(s[0]));
}

// Speaker-id value E[log P(Sid=j | real)] + E[log P(Sid=j | fake)]: the mean
// log-probability that the head assigns to each item's true target speaker.
template <typename T>
nn::Tensor<T> SpeakerIdValue(const nn::Tensor<T> &real_sid_logits,
                             const nn::Tensor<T> &fake_sid_logits,
                             const std::vector<int> &real_labels,
                             const std::vector<int> &fake_labels) {
  const auto pick = [](const nn::Tensor<T> &logits,
                       const std::vector<int> &labels) {
    const auto &s = logits.Shape();
    if (s.size() != 2 || static_cast<size_t>(s[0]) != labels.size())
      throw ShapeMismatch("SpeakerIdValue: logits must be (batch, classes)");
    auto mask = internal::OneHotMask<T>(labels, s[1]);
    return nn::Scale(nn::Sum(nn::Mul(mask, nn::LogSigmoid(logits))),
                     1.0 / static_cast<double>(s[0]));
  };
  return nn::Add(pick(real_sid_logits, real_labels),
                 pick(fake_sid_logits, fake_labels));
}

}  // namespace gan
}  // namespace dysaug

#endif  // DYSAUG_GAN_LOSSES_H_
