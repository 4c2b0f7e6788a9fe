// include/dysaug/util/matrix.h

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

#ifndef DYSAUG_UTIL_MATRIX_H_
#define DYSAUG_UTIL_MATRIX_H_

#include <cstddef>
#include <vector>

#include "dysaug/util/error.h"

namespace dysaug {
namespace util {

// Dense row-major double matrix. Small and value-semantic; sized for
// spectrogram-scale work (tens to a few hundred rows/columns).
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols)
      : rows_(rows), cols_(cols),
        data_(static_cast<size_t>(rows) * cols, 0.0) {}

  int Rows() const { return rows_; }
  int Cols() const { return cols_; }

  double &operator()(int r, int c) {
    return data_[static_cast<size_t>(r) * cols_ + c];
  }
  double operator()(int r, int c) const {
    return data_[static_cast<size_t>(r) * cols_ + c];
  }

  std::vector<double> &Data() { return data_; }
  const std::vector<double> &Data() const { return data_; }

  bool SameShape(const Matrix &other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

Matrix MatMul(const Matrix &a, const Matrix &b);
Matrix Transpose(const Matrix &a);
Matrix Identity(int n);

double FrobeniusNorm(const Matrix &a);
double FrobeniusDistance(const Matrix &a, const Matrix &b);
double MaxAbs(const Matrix &a);
double MaxAbsDiff(const Matrix &a, const Matrix &b);

// a + scale * b, shapes must agree.
Matrix AddScaled(const Matrix &a, const Matrix &b, double scale);

bool AllFinite(const Matrix &a);

}  // namespace util
}  // namespace dysaug

#endif  // DYSAUG_UTIL_MATRIX_H_
