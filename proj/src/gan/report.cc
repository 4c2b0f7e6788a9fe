// src/gan/report.cc

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

#include "dysaug/gan/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dysaug {
namespace gan {

namespace {

double TailMean(const std::vector<GanTrainReport::Iteration> &iters,
                double fraction, double GanTrainReport::Iteration::*field) {
  if (iters.empty()) return std::nan("");
  const size_t n = iters.size();
  size_t start = n - std::max<size_t>(1, static_cast<size_t>(fraction * n));
  double sum = 0.0;
  size_t count = 0;
  for (size_t i = start; i < n; ++i) {
    sum += iters[i].*field;
    ++count;
  }
  return sum / static_cast<double>(count);
}

}  // namespace

double GanTrainReport::FinalDiscAccuracy(double fraction) const {
  return TailMean(iters, fraction, &Iteration::d_acc);
}

double GanTrainReport::FinalSidAccuracy(double fraction) const {
  return TailMean(iters, fraction, &Iteration::sid_acc);
}

void WriteReport(const std::string &path, const GanTrainReport &report) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoError("WriteReport: cannot open " + path);
  char buf[256];
  for (const auto &it : report.iters) {
    std::snprintf(buf, sizeof(buf), "%d %.17g %.17g %.17g %.17g %.17g\n",
                  it.iter, it.lr, it.d_loss, it.g_loss, it.d_acc, it.sid_acc);
    os << buf;
  }
  if (!os) throw IoError("WriteReport: write failed for " + path);
}

GanTrainReport ReadReport(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw IoError("ReadReport: cannot open " + path);
  GanTrainReport report;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream iss(line);
    GanTrainReport::Iteration it;
    if (!(iss >> it.iter >> it.lr >> it.d_loss >> it.g_loss >> it.d_acc >>
          it.sid_acc))
      throw IoError(path + ": bad report line '" + line + "'");
    report.iters.push_back(it);
  }
  return report;
}

}  // namespace gan
}  // namespace dysaug
