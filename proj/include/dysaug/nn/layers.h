// include/dysaug/nn/layers.h

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

#ifndef DYSAUG_NN_LAYERS_H_
#define DYSAUG_NN_LAYERS_H_

#include <string>
#include <vector>

#include "dysaug/nn/tensor.h"
#include "dysaug/util/rng.h"

namespace dysaug {
namespace nn {

enum class LayerKind : uint32_t {
  kConv2d = 0,
  kFc = 1,
  kRelu = 2,
  kLeakyRelu = 3,
  kTanh = 4,
  kSigmoid = 5,
  kFlatten = 6,
  kReplicatePad = 7,
};

std::string ToString(LayerKind kind);

struct LayerSpec {
  LayerKind kind = LayerKind::kRelu;
  // conv2d
  int in_channels = 0, out_channels = 0;
  int kernel_h = 0, kernel_w = 0;
  int stride_h = 1, stride_w = 1;
  // fc
  int in_features = 0, out_features = 0;
  // leaky_relu
  double slope = 0.2;
  // replicate_pad
  int pad_top = 0, pad_bottom = 0, pad_left = 0, pad_right = 0;

  static LayerSpec Conv2d(int in_ch, int out_ch, int kh, int kw, int sh,
                          int sw);
  static LayerSpec Fc(int in_features, int out_features);
  static LayerSpec Relu();
  static LayerSpec MakeLeakyRelu(double slope);
  static LayerSpec MakeTanh();
  static LayerSpec MakeSigmoid();
  static LayerSpec MakeFlatten();
  static LayerSpec ReplicatePad(int top, int bottom, int left, int right);
  static LayerSpec ReplicatePad(int margin) {
    return ReplicatePad(margin, margin, margin, margin);
  }

  void Validate() const;
  bool HasParams() const {
    return kind == LayerKind::kConv2d || kind == LayerKind::kFc;
  }
};

inline LayerSpec LayerSpec::Conv2d(int in_ch, int out_ch, int kh, int kw,
                                   int sh, int sw) {
  LayerSpec s;
  s.kind = LayerKind::kConv2d;
  s.in_channels = in_ch;
  s.out_channels = out_ch;
  s.kernel_h = kh;
  s.kernel_w = kw;
  s.stride_h = sh;
  s.stride_w = sw;
  return s;
}

inline LayerSpec LayerSpec::Fc(int in_features, int out_features) {
  LayerSpec s;
  s.kind = LayerKind::kFc;
  s.in_features = in_features;
  s.out_features = out_features;
  return s;
}

inline LayerSpec LayerSpec::Relu() { return {LayerKind::kRelu}; }

inline LayerSpec LayerSpec::MakeLeakyRelu(double slope) {
  LayerSpec s;
  s.kind = LayerKind::kLeakyRelu;
  s.slope = slope;
  return s;
}

inline LayerSpec LayerSpec::MakeTanh() { return {LayerKind::kTanh}; }
inline LayerSpec LayerSpec::MakeSigmoid() { return {LayerKind::kSigmoid}; }
inline LayerSpec LayerSpec::MakeFlatten() { return {LayerKind::kFlatten}; }

inline LayerSpec LayerSpec::ReplicatePad(int top, int bottom, int left,
                                         int right) {
  LayerSpec s;
  s.kind = LayerKind::kReplicatePad;
  s.pad_top = top;
  s.pad_bottom = bottom;
  s.pad_left = left;
  s.pad_right = right;
  return s;
}

inline std::string ToString(LayerKind kind) {
  switch (kind) {
    case LayerKind::kConv2d: return "conv2d";
    case LayerKind::kFc: return "fc";
    case LayerKind::kRelu: return "relu";
    case LayerKind::kLeakyRelu: return "leaky_relu";
    case LayerKind::kTanh: return "tanh";
    case LayerKind::kSigmoid: return "sigmoid";
    case LayerKind::kFlatten: return "flatten";
    case LayerKind::kReplicatePad: return "replicate_pad";
  }
  return "unknown";
}

inline void LayerSpec::Validate() const {
  switch (kind) {
    case LayerKind::kConv2d:
      if (in_channels < 1 || out_channels < 1 || kernel_h < 1 || kernel_w < 1)
        throw ShapeMismatch("conv2d: bad channel or kernel sizes");
      if (stride_h < 1 || stride_w < 1)
        throw ShapeMismatch("conv2d: stride must be >= 1");
      break;
    case LayerKind::kFc:
      if (in_features < 1 || out_features < 1)
        throw ShapeMismatch("fc: bad feature sizes");
      break;
    case LayerKind::kLeakyRelu:
      if (!(slope > 0.0 && slope < 1.0))
        throw ShapeMismatch("leaky_relu: slope must be in (0, 1)");
      break;
    case LayerKind::kReplicatePad:
      if (pad_top < 0 || pad_bottom < 0 || pad_left < 0 || pad_right < 0)
        throw ShapeMismatch("replicate_pad: negative margin");
      break;
    default:
      break;
  }
}

template <typename T>
struct Layer {
  LayerSpec spec;
  Tensor<T> weight;  // defined only for conv2d / fc
  Tensor<T> bias;
};

// A plain layer stack. Parameters are leaf tensors created by InitParams
// (weights from N(0, stddev), biases zero) and shared across forward passes.
template <typename T>
class Sequential {
 public:
  Sequential &Add(const LayerSpec &spec) {
    spec.Validate();
    layers_.push_back(Layer<T>{spec, {}, {}});
    return *this;
  }

  void InitParams(util::Rng *rng, double stddev = 0.02) {
    for (Layer<T> &layer : layers_) {
      const LayerSpec &s = layer.spec;
      if (s.kind == LayerKind::kConv2d) {
        std::vector<int> wshape = {s.out_channels, s.in_channels, s.kernel_h,
                                   s.kernel_w};
        layer.weight = RandomLeaf(wshape, rng, stddev);
        layer.bias = Tensor<T>::Zeros({s.out_channels}, true);
      } else if (s.kind == LayerKind::kFc) {
        layer.weight = RandomLeaf({s.out_features, s.in_features}, rng, stddev);
        layer.bias = Tensor<T>::Zeros({s.out_features}, true);
      }
    }
  }

  Tensor<T> Forward(const Tensor<T> &input) const {
    return ForwardPrefix(input, layers_.size());
  }

  // Runs only the first `count` layers; used to read pre-sigmoid logits.
  Tensor<T> ForwardPrefix(const Tensor<T> &input, size_t count) const {
    Tensor<T> x = input;
    for (size_t i = 0; i < count && i < layers_.size(); ++i) {
      const Layer<T> &layer = layers_[i];
      switch (layer.spec.kind) {
        case LayerKind::kConv2d:
          x = Conv2d(x, layer.weight, layer.bias, layer.spec.stride_h,
                     layer.spec.stride_w);
          break;
        case LayerKind::kFc:
          x = Linear(x, layer.weight, layer.bias);
          break;
        case LayerKind::kRelu:
          x = Relu(x);
          break;
        case LayerKind::kLeakyRelu:
          x = LeakyRelu(x, layer.spec.slope);
          break;
        case LayerKind::kTanh:
          x = Tanh(x);
          break;
        case LayerKind::kSigmoid:
          x = Sigmoid(x);
          break;
        case LayerKind::kFlatten:
          x = Flatten(x);
          break;
        case LayerKind::kReplicatePad:
          x = ReplicatePad2d(x, layer.spec.pad_top, layer.spec.pad_bottom,
                             layer.spec.pad_left, layer.spec.pad_right);
          break;
      }
    }
    return x;
  }

  // Logits path for a net whose final layer is sigmoid.
  Tensor<T> ForwardLogits(const Tensor<T> &input) const {
    if (layers_.empty() || layers_.back().spec.kind != LayerKind::kSigmoid)
      throw ShapeMismatch("ForwardLogits: final layer is not sigmoid");
    return ForwardPrefix(input, layers_.size() - 1);
  }

  std::vector<Tensor<T>> Params() const {
    std::vector<Tensor<T>> out;
    for (const Layer<T> &layer : layers_)
      if (layer.spec.HasParams()) {
        out.push_back(layer.weight);
        out.push_back(layer.bias);
      }
    return out;
  }

  void ZeroGrads() const {
    for (const Tensor<T> &p : Params())
      const_cast<Tensor<T> &>(p).ZeroGrad();
  }

  std::vector<Layer<T>> &Layers() { return layers_; }
  const std::vector<Layer<T>> &Layers() const { return layers_; }
  size_t NumLayers() const { return layers_.size(); }

  template <typename U>
  Sequential<U> Cast() const {
    Sequential<U> out;
    for (const Layer<T> &layer : layers_) {
      out.Add(layer.spec);
      Layer<U> &dst = out.Layers().back();
      if (layer.spec.HasParams() && layer.weight.Defined()) {
        std::vector<U> w(layer.weight.Data().begin(), layer.weight.Data().end());
        std::vector<U> b(layer.bias.Data().begin(), layer.bias.Data().end());
        dst.weight = Tensor<U>::Leaf(layer.weight.Shape(), std::move(w), true);
        dst.bias = Tensor<U>::Leaf(layer.bias.Shape(), std::move(b), true);
      }
    }
    return out;
  }

 private:
  static Tensor<T> RandomLeaf(const std::vector<int> &shape, util::Rng *rng,
                              double stddev) {
    int64_t numel = 1;
    for (int d : shape) numel *= d;
    std::vector<T> data(static_cast<size_t>(numel));
    for (auto &v : data) v = static_cast<T>(stddev * rng->Normal());
    return Tensor<T>::Leaf(shape, std::move(data), true);
  }

  std::vector<Layer<T>> layers_;
};

}  // namespace nn
}  // namespace dysaug

#endif  // DYSAUG_NN_LAYERS_H_
