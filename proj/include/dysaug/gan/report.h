// include/dysaug/gan/report.h

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

#ifndef DYSAUG_GAN_REPORT_H_
#define DYSAUG_GAN_REPORT_H_

#include <string>
#include <vector>

#include "dysaug/util/error.h"

namespace dysaug {
namespace gan {

// Per-iteration training trace. sid_acc is NaN for models without a
// speaker-id head.
struct GanTrainReport {
  struct Iteration {
    int iter = 0;
    double lr = 0.0;
    double d_loss = 0.0;
    double g_loss = 0.0;
    double d_acc = 0.0;    // real/fake accuracy, equal real and fake counts
    double sid_acc = 0.0;  // argmax speaker accuracy on real inputs
  };
  std::vector<Iteration> iters;
  std::string checkpoint_prefix;

  // Mean discriminator accuracy over the final `fraction` of iterations.
  double FinalDiscAccuracy(double fraction = 0.1) const;
  double FinalSidAccuracy(double fraction = 0.1) const;
};

// Line-delimited numeric records: iter lr d_loss g_loss d_acc sid_acc.
void WriteReport(const std::string &path, const GanTrainReport &report);
GanTrainReport ReadReport(const std::string &path);

}  // namespace gan
}  // namespace dysaug

#endif  // DYSAUG_GAN_REPORT_H_
