// Copyright 2026 The planvec Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PLANVEC_EVALUATE_H_
#define PLANVEC_EVALUATE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "planvec/raster.h"

namespace planvec {

struct ConfusionMatrix {
  int n_classes = 0;
  std::vector<std::uint64_t> counts;  // row-major, counts[t * n + p]

  ConfusionMatrix() = default;
  explicit ConfusionMatrix(int n_classes);

  std::uint64_t& at(int truth, int pred) {
    return counts[static_cast<std::size_t>(truth) * n_classes + pred];
  }
  std::uint64_t at(int truth, int pred) const {
    return counts[static_cast<std::size_t>(truth) * n_classes + pred];
  }
  std::uint64_t total() const;
  std::uint64_t trace() const;
  ConfusionMatrix& operator+=(const ConfusionMatrix& other);
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

ConfusionMatrix confusion(const LabelMap& pred, const LabelMap& truth);

struct ClassMetrics {
  std::string name;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::uint64_t support = 0;  // true pixels of the class
};

struct MicroAverage {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Ratios with a zero denominator are 0. Names default to the class index.
std::vector<ClassMetrics> class_metrics(const ConfusionMatrix& cm,
                                        const std::vector<std::string>& names = {});
MicroAverage micro_average(const ConfusionMatrix& cm);

struct EvalReport {
  std::string method;       // "Original" when no SR was applied
  int scale_factor = 1;
  std::string aggregation;  // "pooled" or "per-image"
  std::vector<std::string> image_ids;
  ConfusionMatrix matrix;
  std::vector<ClassMetrics> per_class;
  MicroAverage micro;
};

EvalReport make_report(const ConfusionMatrix& cm, const std::vector<std::string>& names,
                       std::string method, int scale_factor, std::vector<std::string> image_ids,
                       std::string aggregation = "pooled");

// Relative change in percent; `before` must be positive.
double improvement(double after, double before);

enum class ReportFormat { kCsv, kMarkdown };

// Method columns ordered ESPCN, EDSR, FSRCNN, LapSRN, Original, then any
// other method names alphabetically.
std::string render_report(std::span<const EvalReport> reports, ReportFormat format);

std::string report_to_json(const EvalReport& report);
std::string reports_to_json(std::span<const EvalReport> reports);

}  // namespace planvec

#endif  // PLANVEC_EVALUATE_H_
