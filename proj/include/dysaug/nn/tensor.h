// include/dysaug/nn/tensor.h

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

#ifndef DYSAUG_NN_TENSOR_H_
#define DYSAUG_NN_TENSOR_H_

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <string>
#include <unordered_set>
#include <vector>

#include "dysaug/util/error.h"

namespace dysaug {
namespace nn {

DYSAUG_DEFINE_ERROR(NotScalar);
DYSAUG_DEFINE_ERROR(DetachedGraph);
DYSAUG_DEFINE_ERROR(MissingGrads);

namespace internal {

template <typename T>
struct Node {
  std::vector<int> shape;
  std::vector<T> value;
  std::vector<T> grad;  // same size as value once backward touches the node
  bool requires_grad = false;
  std::vector<std::shared_ptr<Node>> parents;
  std::function<void(Node &)> backward;  // scatter self.grad into parents

  int64_t NumEl() const { return static_cast<int64_t>(value.size()); }
  void EnsureGrad() {
    if (grad.size() != value.size()) grad.assign(value.size(), T(0));
  }
};

}  // namespace internal

// Shared handle to a node of the dynamic computation graph. Ops build fresh
// nodes each forward pass; leaves (parameters, inputs) persist across
// iterations and accumulate gradients until an optimizer step clears them.
template <typename T>
class Tensor {
 public:
  using NodePtr = std::shared_ptr<internal::Node<T>>;

  Tensor() = default;
  explicit Tensor(NodePtr node) : node_(std::move(node)) {}

  static Tensor Leaf(std::vector<int> shape, std::vector<T> data,
                     bool requires_grad = false) {
    int64_t numel = 1;
    for (int d : shape) numel *= d;
    if (numel != static_cast<int64_t>(data.size()))
      throw ShapeMismatch("Tensor: data length does not match shape");
    auto node = std::make_shared<internal::Node<T>>();
    node->shape = std::move(shape);
    node->value = std::move(data);
    node->requires_grad = requires_grad;
    return Tensor(std::move(node));
  }

  static Tensor Zeros(std::vector<int> shape, bool requires_grad = false) {
    int64_t numel = 1;
    for (int d : shape) numel *= d;
    return Leaf(std::move(shape),
                std::vector<T>(static_cast<size_t>(numel), T(0)),
                requires_grad);
  }

  bool Defined() const { return node_ != nullptr; }
  const std::vector<int> &Shape() const { return node_->shape; }
  int64_t NumEl() const { return node_->NumEl(); }
  std::vector<T> &Data() { return node_->value; }
  const std::vector<T> &Data() const { return node_->value; }
  std::vector<T> &Grad() { return node_->grad; }
  const std::vector<T> &Grad() const { return node_->grad; }
  bool RequiresGrad() const { return node_->requires_grad; }
  bool HasGrad() const { return node_->grad.size() == node_->value.size(); }
  void ZeroGrad() { node_->grad.clear(); }

  // Copies values into a fresh untracked leaf (cuts the graph).
  Tensor Detach() const {
    return Leaf(node_->shape, node_->value, false);
  }

  NodePtr node() const { return node_; }

 private:
  NodePtr node_;
};

namespace internal {

template <typename T>
std::shared_ptr<Node<T>> MakeOp(std::vector<int> shape, std::vector<T> value,
                                std::vector<std::shared_ptr<Node<T>>> parents,
                                std::function<void(Node<T> &)> backward) {
  auto node = std::make_shared<Node<T>>();
  node->shape = std::move(shape);
  node->value = std::move(value);
  node->parents = std::move(parents);
  node->backward = std::move(backward);
  for (const auto &p : node->parents)
    if (p->requires_grad) node->requires_grad = true;
  return node;
}

template <typename T>
void CheckSameShape(const Tensor<T> &a, const Tensor<T> &b, const char *op) {
  if (a.Shape() != b.Shape())
    throw ShapeMismatch(std::string(op) + ": operand shapes differ");
}

}  // namespace internal

// ----- elementwise arithmetic -----

template <typename T>
Tensor<T> Add(const Tensor<T> &a, const Tensor<T> &b) {
  internal::CheckSameShape(a, b, "Add");
  std::vector<T> out(a.Data().size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = a.Data()[i] + b.Data()[i];
  auto node = internal::MakeOp<T>(
      a.Shape(), std::move(out), {a.node(), b.node()},
      [](internal::Node<T> &self) {
        for (int side = 0; side < 2; ++side) {
          auto &p = self.parents[side];
          if (!p->requires_grad) continue;
          p->EnsureGrad();
          for (size_t i = 0; i < self.grad.size(); ++i)
            p->grad[i] += self.grad[i];
        }
      });
  return Tensor<T>(node);
}

template <typename T>
Tensor<T> Sub(const Tensor<T> &a, const Tensor<T> &b) {
  internal::CheckSameShape(a, b, "Sub");
  std::vector<T> out(a.Data().size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = a.Data()[i] - b.Data()[i];
  auto node = internal::MakeOp<T>(
      a.Shape(), std::move(out), {a.node(), b.node()},
      [](internal::Node<T> &self) {
        auto &pa = self.parents[0];
        auto &pb = self.parents[1];
        if (pa->requires_grad) {
          pa->EnsureGrad();
          for (size_t i = 0; i < self.grad.size(); ++i)
            pa->grad[i] += self.grad[i];
        }
        if (pb->requires_grad) {
          pb->EnsureGrad();
          for (size_t i = 0; i < self.grad.size(); ++i)
            pb->grad[i] -= self.grad[i];
        }
      });
  return Tensor<T>(node);
}

template <typename T>
Tensor<T> Mul(const Tensor<T> &a, const Tensor<T> &b) {
  internal::CheckSameShape(a, b, "Mul");
  std::vector<T> out(a.Data().size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = a.Data()[i] * b.Data()[i];
  auto node = internal::MakeOp<T>(
      a.Shape(), std::move(out), {a.node(), b.node()},
      [](internal::Node<T> &self) {
        auto &pa = self.parents[0];
        auto &pb = self.parents[1];
        if (pa->requires_grad) {
          pa->EnsureGrad();
          for (size_t i = 0; i < self.grad.size(); ++i)
            pa->grad[i] += self.grad[i] * pb->value[i];
        }
        if (pb->requires_grad) {
          pb->EnsureGrad();
          for (size_t i = 0; i < self.grad.size(); ++i)
            pb->grad[i] += self.grad[i] * pa->value[i];
        }
      });
  return Tensor<T>(node);
}

template <typename T>
Tensor<T> Scale(const Tensor<T> &a, double c) {
  std::vector<T> out(a.Data().size());
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = a.Data()[i] * static_cast<T>(c);
  auto node = internal::MakeOp<T>(
      a.Shape(), std::move(out), {a.node()},
      [c](internal::Node<T> &self) {
        auto &p = self.parents[0];
        if (!p->requires_grad) return;
        p->EnsureGrad();
        for (size_t i = 0; i < self.grad.size(); ++i)
          p->grad[i] += self.grad[i] * static_cast<T>(c);
      });
  return Tensor<T>(node);
}

// ----- reductions -----

template <typename T>
Tensor<T> Sum(const Tensor<T> &a) {
  T total = std::accumulate(a.Data().begin(), a.Data().end(), T(0));
  auto node = internal::MakeOp<T>(
      {1}, {total}, {a.node()}, [](internal::Node<T> &self) {
        auto &p = self.parents[0];
        if (!p->requires_grad) return;
        p->EnsureGrad();
        const T g = self.grad[0];
        for (size_t i = 0; i < p->grad.size(); ++i) p->grad[i] += g;
      });
  return Tensor<T>(node);
}

template <typename T>
Tensor<T> Mean(const Tensor<T> &a) {
  return Scale(Sum(a), 1.0 / static_cast<double>(a.NumEl()));
}

// ----- pointwise nonlinearities -----

template <typename T>
Tensor<T> Relu(const Tensor<T> &a) {
  std::vector<T> out(a.Data().size());
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = a.Data()[i] > T(0) ? a.Data()[i] : T(0);
  auto node = internal::MakeOp<T>(
      a.Shape(), std::move(out), {a.node()},
      [](internal::Node<T> &self) {
        auto &p = self.parents[0];
        if (!p->requires_grad) return;
        p->EnsureGrad();
        for (size_t i = 0; i < self.grad.size(); ++i)
          if (p->value[i] > T(0)) p->grad[i] += self.grad[i];
      });
  return Tensor<T>(node);
}

template <typename T>
Tensor<T> LeakyRelu(const Tensor<T> &a, double slope) {
  std::vector<T> out(a.Data().size());
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = a.Data()[i] > T(0) ? a.Data()[i]
                                : static_cast<T>(slope) * a.Data()[i];
  auto node = internal::MakeOp<T>(
      a.Shape(), std::move(out), {a.node()},
      [slope](internal::Node<T> &self) {
        auto &p = self.parents[0];
        if (!p->requires_grad) return;
        p->EnsureGrad();
        for (size_t i = 0; i < self.grad.size(); ++i)
          p->grad[i] += self.grad[i] * (p->value[i] > T(0)
                                            ? T(1)
                                            : static_cast<T>(slope));
      });
  return Tensor<T>(node);
}

template <typename T>
Tensor<T> Tanh(const Tensor<T> &a) {
  std::vector<T> out(a.Data().size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = std::tanh(a.Data()[i]);
  auto node = internal::MakeOp<T>(
      a.Shape(), std::move(out), {a.node()},
      [](internal::Node<T> &self) {
        auto &p = self.parents[0];
        if (!p->requires_grad) return;
        p->EnsureGrad();
        for (size_t i = 0; i < self.grad.size(); ++i) {
          const T y = self.value[i];
          p->grad[i] += self.grad[i] * (T(1) - y * y);
        }
      });
  return Tensor<T>(node);
}

template <typename T>
inline T StableSigmoid(T x) {
  if (x >= T(0)) {
    const T e = std::exp(-x);
    return T(1) / (T(1) + e);
  }
  const T e = std::exp(x);
  return e / (T(1) + e);
}

template <typename T>
Tensor<T> Sigmoid(const Tensor<T> &a) {
  std::vector<T> out(a.Data().size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = StableSigmoid(a.Data()[i]);
  auto node = internal::MakeOp<T>(
      a.Shape(), std::move(out), {a.node()},
      [](internal::Node<T> &self) {
        auto &p = self.parents[0];
        if (!p->requires_grad) return;
        p->EnsureGrad();
        for (size_t i = 0; i < self.grad.size(); ++i) {
          const T y = self.value[i];
          p->grad[i] += self.grad[i] * y * (T(1) - y);
        }
      });
  return Tensor<T>(node);
}

// log(sigmoid(x)) = -softplus(-x); safe for large |x|.
template <typename T>
Tensor<T> LogSigmoid(const Tensor<T> &a) {
  std::vector<T> out(a.Data().size());
  for (size_t i = 0; i < out.size(); ++i) {
    const T x = a.Data()[i];
    out[i] = x < T(0) ? x - std::log1p(std::exp(x))
                      : -std::log1p(std::exp(-x));
  }
  auto node = internal::MakeOp<T>(
      a.Shape(), std::move(out), {a.node()},
      [](internal::Node<T> &self) {
        auto &p = self.parents[0];
        if (!p->requires_grad) return;
        p->EnsureGrad();
        for (size_t i = 0; i < self.grad.size(); ++i)
          p->grad[i] += self.grad[i] * StableSigmoid(-p->value[i]);
      });
  return Tensor<T>(node);
}

// ----- shape ops -----

template <typename T>
Tensor<T> Reshape(const Tensor<T> &a, std::vector<int> shape) {
  int64_t numel = 1;
  for (int d : shape) numel *= d;
  if (numel != a.NumEl()) throw ShapeMismatch("Reshape: element count differs");
  auto node = internal::MakeOp<T>(
      std::move(shape), a.Data(), {a.node()},
      [](internal::Node<T> &self) {
        auto &p = self.parents[0];
        if (!p->requires_grad) return;
        p->EnsureGrad();
        for (size_t i = 0; i < self.grad.size(); ++i)
          p->grad[i] += self.grad[i];
      });
  return Tensor<T>(node);
}

// (N, C, H, W) -> (N, C*H*W).
template <typename T>
Tensor<T> Flatten(const Tensor<T> &a) {
  const auto &s = a.Shape();
  if (s.empty()) throw ShapeMismatch("Flatten: scalar input");
  int rest = 1;
  for (size_t i = 1; i < s.size(); ++i) rest *= s[i];
  return Reshape(a, {s[0], rest});
}

// ----- fully connected -----

// x: (N, F), weight: (O, F), bias: (O). Returns (N, O).
template <typename T>
Tensor<T> Linear(const Tensor<T> &x, const Tensor<T> &weight,
                 const Tensor<T> &bias) {
  const auto &xs = x.Shape();
  const auto &ws = weight.Shape();
  if (xs.size() != 2 || ws.size() != 2 || bias.Shape().size() != 1 ||
      xs[1] != ws[1] || bias.Shape()[0] != ws[0])
    throw ShapeMismatch("Linear: incompatible shapes");
  const int n = xs[0], f = xs[1], o = ws[0];

  std::vector<T> out(static_cast<size_t>(n) * o);
  const T *px = x.Data().data();
  const T *pw = weight.Data().data();
  const T *pb = bias.Data().data();
  for (int i = 0; i < n; ++i) {
    T *row = out.data() + static_cast<size_t>(i) * o;
    for (int j = 0; j < o; ++j) row[j] = pb[j];
    for (int k = 0; k < f; ++k) {
      const T xv = px[static_cast<size_t>(i) * f + k];
      if (xv == T(0)) continue;
      const T *wcol = pw;  // weight(j, k) strides by f
      for (int j = 0; j < o; ++j)
        row[j] += xv * wcol[static_cast<size_t>(j) * f + k];
    }
  }

  auto node = internal::MakeOp<T>(
      {n, o}, std::move(out), {x.node(), weight.node(), bias.node()},
      [n, f, o](internal::Node<T> &self) {
        auto &px_ = self.parents[0];
        auto &pw_ = self.parents[1];
        auto &pb_ = self.parents[2];
        const T *gy = self.grad.data();
        if (px_->requires_grad) {
          px_->EnsureGrad();
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < o; ++j) {
              const T g = gy[static_cast<size_t>(i) * o + j];
              if (g == T(0)) continue;
              const T *wrow = pw_->value.data() + static_cast<size_t>(j) * f;
              T *gx = px_->grad.data() + static_cast<size_t>(i) * f;
              for (int k = 0; k < f; ++k) gx[k] += g * wrow[k];
            }
        }
        if (pw_->requires_grad) {
          pw_->EnsureGrad();
          for (int i = 0; i < n; ++i) {
            const T *xrow = px_->value.data() + static_cast<size_t>(i) * f;
            for (int j = 0; j < o; ++j) {
              const T g = gy[static_cast<size_t>(i) * o + j];
              if (g == T(0)) continue;
              T *gw = pw_->grad.data() + static_cast<size_t>(j) * f;
              for (int k = 0; k < f; ++k) gw[k] += g * xrow[k];
            }
          }
        }
        if (pb_->requires_grad) {
          pb_->EnsureGrad();
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < o; ++j)
              pb_->grad[j] += gy[static_cast<size_t>(i) * o + j];
        }
      });
  return Tensor<T>(node);
}

// ----- replicate padding -----

// Pads the two trailing spatial dims of (N, C, H, W) by edge replication.
template <typename T>
Tensor<T> ReplicatePad2d(const Tensor<T> &x, int pad_top, int pad_bottom,
                         int pad_left, int pad_right) {
  const auto &s = x.Shape();
  if (s.size() != 4) throw ShapeMismatch("ReplicatePad2d: need 4-d input");
  if (pad_top < 0 || pad_bottom < 0 || pad_left < 0 || pad_right < 0)
    throw ShapeMismatch("ReplicatePad2d: negative padding");
  const int n = s[0], c = s[1], h = s[2], w = s[3];
  const int ho = h + pad_top + pad_bottom, wo = w + pad_left + pad_right;

  auto clamp = [](int v, int lo, int hi) {
    return v < lo ? lo : (v > hi ? hi : v);
  };

  std::vector<T> out(static_cast<size_t>(n) * c * ho * wo);
  const T *px = x.Data().data();
  for (int i = 0; i < n; ++i)
    for (int ch = 0; ch < c; ++ch) {
      const T *plane = px + (static_cast<size_t>(i) * c + ch) * h * w;
      T *oplane = out.data() + (static_cast<size_t>(i) * c + ch) * ho * wo;
      for (int r = 0; r < ho; ++r) {
        const int sr = clamp(r - pad_top, 0, h - 1);
        for (int col = 0; col < wo; ++col) {
          const int sc = clamp(col - pad_left, 0, w - 1);
          oplane[static_cast<size_t>(r) * wo + col] =
              plane[static_cast<size_t>(sr) * w + sc];
        }
      }
    }

  auto node = internal::MakeOp<T>(
      {n, c, ho, wo}, std::move(out), {x.node()},
      [n, c, h, w, ho, wo, pad_top, pad_left,
       clamp](internal::Node<T> &self) {
        auto &p = self.parents[0];
        if (!p->requires_grad) return;
        p->EnsureGrad();
        const T *gy = self.grad.data();
        for (int i = 0; i < n; ++i)
          for (int ch = 0; ch < c; ++ch) {
            T *gplane = p->grad.data() + (static_cast<size_t>(i) * c + ch) * h * w;
            const T *goplane =
                gy + (static_cast<size_t>(i) * c + ch) * ho * wo;
            for (int r = 0; r < ho; ++r) {
              const int sr = clamp(r - pad_top, 0, h - 1);
              for (int col = 0; col < wo; ++col) {
                const int sc = clamp(col - pad_left, 0, w - 1);
                gplane[static_cast<size_t>(sr) * w + sc] +=
                    goplane[static_cast<size_t>(r) * wo + col];
              }
            }
          }
      });
  return Tensor<T>(node);
}

// ----- 2-d convolution -----

// x: (N, Cin, H, W), weight: (Cout, Cin, KH, KW), bias: (Cout). No padding;
// output H' = floor((H - KH) / SH) + 1, likewise for W.
template <typename T>
Tensor<T> Conv2d(const Tensor<T> &x, const Tensor<T> &weight,
                 const Tensor<T> &bias, int stride_h, int stride_w) {
  const auto &xs = x.Shape();
  const auto &ws = weight.Shape();
  if (xs.size() != 4 || ws.size() != 4 || bias.Shape().size() != 1)
    throw ShapeMismatch("Conv2d: need 4-d input and weight");
  if (xs[1] != ws[1] || bias.Shape()[0] != ws[0])
    throw ShapeMismatch("Conv2d: channel counts disagree");
  if (stride_h < 1 || stride_w < 1)
    throw ShapeMismatch("Conv2d: stride must be >= 1");
  const int n = xs[0], cin = xs[1], h = xs[2], w = xs[3];
  const int cout = ws[0], kh = ws[2], kw = ws[3];
  if (h < kh || w < kw) throw ShapeMismatch("Conv2d: input smaller than kernel");
  const int ho = (h - kh) / stride_h + 1;
  const int wo = (w - kw) / stride_w + 1;

  std::vector<T> out(static_cast<size_t>(n) * cout * ho * wo);
  const T *px = x.Data().data();
  const T *pw = weight.Data().data();
  const T *pb = bias.Data().data();
  for (int i = 0; i < n; ++i)
    for (int oc = 0; oc < cout; ++oc) {
      T *oplane = out.data() + (static_cast<size_t>(i) * cout + oc) * ho * wo;
      for (size_t k = 0; k < static_cast<size_t>(ho) * wo; ++k)
        oplane[k] = pb[oc];
      for (int ic = 0; ic < cin; ++ic) {
        const T *plane = px + (static_cast<size_t>(i) * cin + ic) * h * w;
        const T *kern = pw + ((static_cast<size_t>(oc) * cin + ic)) * kh * kw;
        for (int r = 0; r < ho; ++r) {
          const int ir = r * stride_h;
          T *orow = oplane + static_cast<size_t>(r) * wo;
          for (int q = 0; q < kh; ++q) {
            const T *irow = plane + static_cast<size_t>(ir + q) * w;
            const T *krow = kern + static_cast<size_t>(q) * kw;
            for (int p = 0; p < kw; ++p) {
              const T kv = krow[p];
              if (kv == T(0)) continue;
              for (int col = 0; col < wo; ++col)
                orow[col] += kv * irow[col * stride_w + p];
            }
          }
        }
      }
    }

  auto node = internal::MakeOp<T>(
      {n, cout, ho, wo}, std::move(out),
      {x.node(), weight.node(), bias.node()},
      [n, cin, h, w, cout, kh, kw, stride_h, stride_w, ho,
       wo](internal::Node<T> &self) {
        auto &px_ = self.parents[0];
        auto &pw_ = self.parents[1];
        auto &pb_ = self.parents[2];
        const T *gy = self.grad.data();
        if (pb_->requires_grad) {
          pb_->EnsureGrad();
          for (int i = 0; i < n; ++i)
            for (int oc = 0; oc < cout; ++oc) {
              const T *gplane =
                  gy + (static_cast<size_t>(i) * cout + oc) * ho * wo;
              T acc = T(0);
              for (size_t k = 0; k < static_cast<size_t>(ho) * wo; ++k)
                acc += gplane[k];
              pb_->grad[oc] += acc;
            }
        }
        if (pw_->requires_grad) {
          pw_->EnsureGrad();
          for (int i = 0; i < n; ++i)
            for (int oc = 0; oc < cout; ++oc) {
              const T *gplane =
                  gy + (static_cast<size_t>(i) * cout + oc) * ho * wo;
              for (int ic = 0; ic < cin; ++ic) {
                const T *plane =
                    px_->value.data() + (static_cast<size_t>(i) * cin + ic) * h * w;
                T *gkern = pw_->grad.data() +
                           (static_cast<size_t>(oc) * cin + ic) * kh * kw;
                for (int q = 0; q < kh; ++q)
                  for (int p = 0; p < kw; ++p) {
                    T acc = T(0);
                    for (int r = 0; r < ho; ++r) {
                      const T *irow =
                          plane + static_cast<size_t>(r * stride_h + q) * w + p;
                      const T *grow = gplane + static_cast<size_t>(r) * wo;
                      for (int col = 0; col < wo; ++col)
                        acc += grow[col] * irow[col * stride_w];
                    }
                    gkern[static_cast<size_t>(q) * kw + p] += acc;
                  }
              }
            }
        }
        if (px_->requires_grad) {
          px_->EnsureGrad();
          for (int i = 0; i < n; ++i)
            for (int oc = 0; oc < cout; ++oc) {
              const T *gplane =
                  gy + (static_cast<size_t>(i) * cout + oc) * ho * wo;
              for (int ic = 0; ic < cin; ++ic) {
                T *gxplane = px_->grad.data() +
                             (static_cast<size_t>(i) * cin + ic) * h * w;
                const T *kern = pw_->value.data() +
                                (static_cast<size_t>(oc) * cin + ic) * kh * kw;
                for (int r = 0; r < ho; ++r) {
                  const int ir = r * stride_h;
                  const T *grow = gplane + static_cast<size_t>(r) * wo;
                  for (int q = 0; q < kh; ++q) {
                    T *gxrow = gxplane + static_cast<size_t>(ir + q) * w;
                    const T *krow = kern + static_cast<size_t>(q) * kw;
                    for (int p = 0; p < kw; ++p) {
                      const T kv = krow[p];
                      if (kv == T(0)) continue;
                      for (int col = 0; col < wo; ++col)
                        gxrow[col * stride_w + p] += grow[col] * kv;
                    }
                  }
                }
              }
            }
        }
      });
  return Tensor<T>(node);
}

// ----- backward pass -----

// Reverse-mode sweep from a scalar loss. Populates grads on every tracked
// node reachable from it; leaves keep their grads until explicitly cleared,
// so the same parameter leaves are reusable in the next forward pass.
template <typename T>
void Backward(const Tensor<T> &loss) {
  if (!loss.Defined() || loss.NumEl() != 1)
    throw NotScalar("Backward: loss must be a defined scalar");
  if (!loss.RequiresGrad())
    throw DetachedGraph("Backward: no tracked parameters reachable from loss");

  using NodeT = internal::Node<T>;
  std::vector<NodeT *> order;
  std::unordered_set<NodeT *> visited;
  std::vector<std::pair<NodeT *, size_t>> stack;
  stack.emplace_back(loss.node().get(), 0);
  visited.insert(loss.node().get());
  while (!stack.empty()) {
    auto &[node, next] = stack.back();
    if (next < node->parents.size()) {
      NodeT *parent = node->parents[next++].get();
      if (parent->requires_grad && !visited.count(parent)) {
        visited.insert(parent);
        stack.emplace_back(parent, 0);
      }
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }

  for (NodeT *node : order) node->EnsureGrad();
  loss.node()->grad[0] = T(1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    NodeT *node = *it;
    if (node->backward) node->backward(*node);
  }
}

}  // namespace nn
}  // namespace dysaug

#endif  // DYSAUG_NN_TENSOR_H_
