// include/dysaug/subspace/svd.h

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

#ifndef DYSAUG_SUBSPACE_SVD_H_
#define DYSAUG_SUBSPACE_SVD_H_

#include <vector>

#include "dysaug/signal/mel.h"
#include "dysaug/util/matrix.h"

namespace dysaug {
namespace subspace {

DYSAUG_DEFINE_ERROR(NonFiniteInput);

// Full S = U Sigma V^T factorization of a C x T spectrogram.
//   u      C x C, columns are the time-invariant spectral bases
//   sigma  min(C, T) singular values, descending
//   vt     T x T, rows are the time-variant temporal bases
// Sign convention: every column of U (and the matching row of V^T) is scaled
// so its largest-magnitude entry is positive, which pins down the otherwise
// arbitrary signs for reproducible downstream training.
struct SvdTriple {
  util::Matrix u;
  std::vector<double> sigma;
  util::Matrix vt;
  int rows = 0;  // C
  int cols = 0;  // T
};

SvdTriple SvdDecompose(const util::Matrix &m);
SvdTriple SvdDecompose(const signal::Spectrogram &spec);

// U * Sigma * V^T with Sigma embedded as a rows x cols rectangular diagonal.
util::Matrix RecomposeMatrix(const util::Matrix &u,
                             const std::vector<double> &sigma,
                             const util::Matrix &vt);
signal::Spectrogram Recompose(const util::Matrix &u,
                              const std::vector<double> &sigma,
                              const util::Matrix &vt, int frame_hop = 0,
                              int sample_rate = 0);

// U + lambda * delta_raw. delta_raw is a generator output with entries in
// [-1, 1]; the result is used directly in recomposition, with no
// re-orthogonalization.
util::Matrix ApplyPerturbation(const util::Matrix &u,
                               const util::Matrix &delta_raw, double lambda);

// Elementwise mean of a set of same-shape (sign-canonical) basis matrices.
util::Matrix MeanBases(const std::vector<const util::Matrix *> &bases);

}  // namespace subspace
}  // namespace dysaug

#endif  // DYSAUG_SUBSPACE_SVD_H_
