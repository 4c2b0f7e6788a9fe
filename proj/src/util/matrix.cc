// src/util/matrix.cc

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

#include "dysaug/util/matrix.h"

#include <algorithm>
#include <cmath>

namespace dysaug {
namespace util {

Matrix MatMul(const Matrix &a, const Matrix &b) {
  if (a.Cols() != b.Rows())
    throw ShapeMismatch("MatMul: inner dimensions disagree");
  Matrix out(a.Rows(), b.Cols());
  const int m = a.Rows(), k = a.Cols(), n = b.Cols();
  const double *pa = a.Data().data();
  const double *pb = b.Data().data();
  double *pc = out.Data().data();
  for (int i = 0; i < m; ++i) {
    for (int p = 0; p < k; ++p) {
      const double av = pa[static_cast<size_t>(i) * k + p];
      if (av == 0.0) continue;
      const double *brow = pb + static_cast<size_t>(p) * n;
      double *crow = pc + static_cast<size_t>(i) * n;
      for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
  return out;
}

Matrix Transpose(const Matrix &a) {
  Matrix out(a.Cols(), a.Rows());
  for (int r = 0; r < a.Rows(); ++r)
    for (int c = 0; c < a.Cols(); ++c) out(c, r) = a(r, c);
  return out;
}

Matrix Identity(int n) {
  Matrix out(n, n);
  for (int i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

double FrobeniusNorm(const Matrix &a) {
  double sum = 0.0;
  for (double v : a.Data()) sum += v * v;
  return std::sqrt(sum);
}

double FrobeniusDistance(const Matrix &a, const Matrix &b) {
  if (!a.SameShape(b))
    throw ShapeMismatch("FrobeniusDistance: shapes disagree");
  double sum = 0.0;
  for (size_t i = 0; i < a.Data().size(); ++i) {
    double d = a.Data()[i] - b.Data()[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

double MaxAbs(const Matrix &a) {
  double best = 0.0;
  for (double v : a.Data()) best = std::max(best, std::fabs(v));
  return best;
}

double MaxAbsDiff(const Matrix &a, const Matrix &b) {
  if (!a.SameShape(b)) throw ShapeMismatch("MaxAbsDiff: shapes disagree");
  double best = 0.0;
  for (size_t i = 0; i < a.Data().size(); ++i)
    best = std::max(best, std::fabs(a.Data()[i] - b.Data()[i]));
  return best;
}

Matrix AddScaled(const Matrix &a, const Matrix &b, double scale) {
  if (!a.SameShape(b)) throw ShapeMismatch("AddScaled: shapes disagree");
  Matrix out = a;
  for (size_t i = 0; i < out.Data().size(); ++i)
    out.Data()[i] += scale * b.Data()[i];
  return out;
}

bool AllFinite(const Matrix &a) {
  for (double v : a.Data())
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace util
}  // namespace dysaug
