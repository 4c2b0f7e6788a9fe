// src/subspace/svd.cc

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

#include "dysaug/subspace/svd.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dysaug {
namespace subspace {

using util::Matrix;

namespace {

// One-sided Jacobi on a tall matrix A (m x n, m >= n): rotate column pairs
// until all are mutually orthogonal. On exit A holds U_thin * diag(sigma)
// and v accumulates the right rotations, so original A = A_out * v^T.
void OneSidedJacobi(Matrix *a, Matrix *v, std::vector<double> *sigma) {
  const int m = a->Rows(), n = a->Cols();
  *v = util::Identity(n);

  const int max_sweeps = 60;
  const double eps = 1e-15;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double app = 0.0, aqq = 0.0, apq = 0.0;
        for (int i = 0; i < m; ++i) {
          const double vp = (*a)(i, p), vq = (*a)(i, q);
          app += vp * vp;
          aqq += vq * vq;
          apq += vp * vq;
        }
        if (std::fabs(apq) <= eps * std::sqrt(app * aqq)) continue;
        rotated = true;

        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;

        for (int i = 0; i < m; ++i) {
          const double vp = (*a)(i, p), vq = (*a)(i, q);
          (*a)(i, p) = c * vp - s * vq;
          (*a)(i, q) = s * vp + c * vq;
        }
        for (int i = 0; i < n; ++i) {
          const double vp = (*v)(i, p), vq = (*v)(i, q);
          (*v)(i, p) = c * vp - s * vq;
          (*v)(i, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }

  sigma->assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    double norm = 0.0;
    for (int i = 0; i < m; ++i) norm += (*a)(i, j) * (*a)(i, j);
    (*sigma)[j] = std::sqrt(norm);
  }
}

// Extends k orthonormal columns of q (m x k, stored in the first k columns
// of an m x m matrix) to a full orthonormal basis using modified
// Gram-Schmidt over the standard basis vectors.
void CompleteBasis(Matrix *q, int k) {
  const int m = q->Rows();
  int filled = k;
  for (int e = 0; e < m && filled < m; ++e) {
    std::vector<double> cand(m, 0.0);
    cand[e] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < filled; ++j) {
        double dot = 0.0;
        for (int i = 0; i < m; ++i) dot += cand[i] * (*q)(i, j);
        for (int i = 0; i < m; ++i) cand[i] -= dot * (*q)(i, j);
      }
    }
    double norm = 0.0;
    for (int i = 0; i < m; ++i) norm += cand[i] * cand[i];
    norm = std::sqrt(norm);
    if (norm < 1e-8) continue;  // e_j nearly inside the span, try the next
    for (int i = 0; i < m; ++i) (*q)(i, filled) = cand[i] / norm;
    ++filled;
  }
}

// Scales column j of u and row j of vt so the largest-magnitude entry of the
// u column is positive. Ties take the first index of maximal magnitude.
void CanonicalizeSigns(Matrix *u, Matrix *vt) {
  const int c = u->Rows();
  const int paired = std::min(u->Cols(), vt->Rows());
  for (int j = 0; j < u->Cols(); ++j) {
    int arg = 0;
    double best = -1.0;
    for (int i = 0; i < c; ++i) {
      const double mag = std::fabs((*u)(i, j));
      if (mag > best) {
        best = mag;
        arg = i;
      }
    }
    if ((*u)(arg, j) < 0.0) {
      for (int i = 0; i < c; ++i) (*u)(i, j) = -(*u)(i, j);
      if (j < paired)
        for (int i = 0; i < vt->Cols(); ++i) (*vt)(j, i) = -(*vt)(j, i);
    }
  }
}

}  // namespace

SvdTriple SvdDecompose(const Matrix &m) {
  if (!util::AllFinite(m))
    throw NonFiniteInput("SvdDecompose: input has non-finite entries");
  const int rows = m.Rows(), cols = m.Cols();
  if (rows < 1 || cols < 1)
    throw ShapeMismatch("SvdDecompose: empty matrix");

  // Run Jacobi on the tall orientation, then map factors back. For A (C x T):
  //   wide  (T >= C): factor A^T = W diag(s) Z^T  =>  A = Z diag(s) W^T
  //   tall  (T < C):  factor A   = W diag(s) Z^T directly
  const bool wide = cols >= rows;
  Matrix work = wide ? util::Transpose(m) : m;  // tall: work is (max x min)
  const int tall_rows = work.Rows(), small = work.Cols();

  Matrix z;  // small x small rotations
  std::vector<double> sigma;
  OneSidedJacobi(&work, &z, &sigma);

  // Descending order of singular values.
  std::vector<int> order(small);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return sigma[a] > sigma[b]; });

  // Thin left factor W (tall_rows x small): normalized columns of work.
  Matrix w_full(tall_rows, tall_rows);
  int good = 0;
  for (int idx = 0; idx < small; ++idx) {
    const int j = order[idx];
    if (sigma[j] > 1e-300) {
      for (int i = 0; i < tall_rows; ++i)
        w_full(i, idx) = work(i, j) / sigma[j];
      good = idx + 1;
    }
  }
  CompleteBasis(&w_full, good);

  Matrix z_sorted(small, small);
  for (int idx = 0; idx < small; ++idx)
    for (int i = 0; i < small; ++i) z_sorted(i, idx) = z(i, order[idx]);

  std::vector<double> sigma_sorted(small);
  for (int idx = 0; idx < small; ++idx) sigma_sorted[idx] = sigma[order[idx]];

  SvdTriple out;
  out.rows = rows;
  out.cols = cols;
  out.sigma = std::move(sigma_sorted);
  if (wide) {
    // A = Z diag(s) W^T: U = Z (C x C), V = W (T x T).
    Matrix z_full(rows, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < small; ++j) z_full(i, j) = z_sorted(i, j);
    // small == rows here, so z_full is already complete.
    out.u = std::move(z_full);
    out.vt = util::Transpose(w_full);
  } else {
    // A = W diag(s) Z^T: U = W (C x C), V = Z (T x T).
    out.u = std::move(w_full);
    out.vt = util::Transpose(z_sorted);
  }
  CanonicalizeSigns(&out.u, &out.vt);
  return out;
}

SvdTriple SvdDecompose(const signal::Spectrogram &spec) {
  return SvdDecompose(spec.ToMatrix());
}

Matrix RecomposeMatrix(const Matrix &u, const std::vector<double> &sigma,
                       const Matrix &vt) {
  const int rows = u.Rows(), cols = vt.Cols();
  if (u.Cols() != rows || vt.Rows() != cols)
    throw ShapeMismatch("Recompose: U must be C x C and V^T must be T x T");
  const size_t want = static_cast<size_t>(std::min(rows, cols));
  if (sigma.size() != want)
    throw ShapeMismatch("Recompose: sigma length must be min(C, T)");

  // U * Sigma picks out the first min(C,T) columns of U scaled by sigma, so
  // the product only touches the matching leading rows of V^T.
  Matrix out(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (size_t k = 0; k < want; ++k) {
      const double scale = u(i, static_cast<int>(k)) * sigma[k];
      if (scale == 0.0) continue;
      for (int j = 0; j < cols; ++j)
        out(i, j) += scale * vt(static_cast<int>(k), j);
    }
  return out;
}

signal::Spectrogram Recompose(const Matrix &u, const std::vector<double> &sigma,
                              const Matrix &vt, int frame_hop,
                              int sample_rate) {
  return signal::Spectrogram::FromMatrix(RecomposeMatrix(u, sigma, vt),
                                         frame_hop, sample_rate);
}

Matrix ApplyPerturbation(const Matrix &u, const Matrix &delta_raw,
                         double lambda) {
  if (!u.SameShape(delta_raw))
    throw ShapeMismatch("ApplyPerturbation: shapes disagree");
  return util::AddScaled(u, delta_raw, lambda);
}

Matrix MeanBases(const std::vector<const Matrix *> &bases) {
  if (bases.empty()) throw ShapeMismatch("MeanBases: empty input");
  Matrix mean(bases[0]->Rows(), bases[0]->Cols());
  for (const Matrix *b : bases) {
    if (!b->SameShape(mean)) throw ShapeMismatch("MeanBases: shapes disagree");
    for (size_t i = 0; i < mean.Data().size(); ++i)
      mean.Data()[i] += b->Data()[i];
  }
  for (double &v : mean.Data()) v /= static_cast<double>(bases.size());
  return mean;
}

}  // namespace subspace
}  // namespace dysaug
