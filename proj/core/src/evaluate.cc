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

#include "planvec/evaluate.h"

#include <algorithm>
#include <array>
#include <cstdio>
#include <json.hpp>
#include <numeric>

#include "planvec/error.h"

namespace planvec {
namespace {

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

int method_rank(const std::string& method) {
  static const std::array<const char*, 5> kOrder = {"ESPCN", "EDSR", "FSRCNN", "LapSRN",
                                                    "Original"};
  for (std::size_t i = 0; i < kOrder.size(); ++i) {
    if (method == kOrder[i]) return static_cast<int>(i);
  }
  return static_cast<int>(kOrder.size());
}

std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::json metrics_json(const EvalReport& r) {
  nlohmann::json classes = nlohmann::json::array();
  for (const ClassMetrics& m : r.per_class) {
    classes.push_back({{"name", m.name},
                       {"precision", m.precision},
                       {"recall", m.recall},
                       {"f1", m.f1},
                       {"support", m.support}});
  }
  return {{"method", r.method},
          {"scale_factor", r.scale_factor},
          {"aggregation", r.aggregation},
          {"images", r.image_ids},
          {"classes", std::move(classes)},
          {"micro", {{"precision", r.micro.precision},
                     {"recall", r.micro.recall},
                     {"f1", r.micro.f1}}},
          {"confusion", {{"n_classes", r.matrix.n_classes}, {"counts", r.matrix.counts}}}};
}

}  // namespace

ConfusionMatrix::ConfusionMatrix(int n) : n_classes(n) {
  if (n < 1) fail(ErrorKind::kInvalidArgument, "confusion matrix needs at least one class");
  counts.assign(static_cast<std::size_t>(n) * n, 0);
}

std::uint64_t ConfusionMatrix::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

std::uint64_t ConfusionMatrix::trace() const {
  std::uint64_t t = 0;
  for (int c = 0; c < n_classes; ++c) t += at(c, c);
  return t;
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
  if (other.n_classes != n_classes) {
    fail(ErrorKind::kInconsistentClasses, "cannot add confusion matrices of different sizes");
  }
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
  return *this;
}

ConfusionMatrix confusion(const LabelMap& pred, const LabelMap& truth) {
  if (pred.height != truth.height || pred.width != truth.width) {
    fail(ErrorKind::kDimensionMismatch,
         "prediction is " + std::to_string(pred.width) + "x" + std::to_string(pred.height) +
             " but ground truth is " + std::to_string(truth.width) + "x" +
             std::to_string(truth.height));
  }
  if (pred.n_classes != truth.n_classes) {
    fail(ErrorKind::kInconsistentClasses, "prediction and ground truth class counts differ");
  }
  ConfusionMatrix cm(pred.n_classes);
  const int n = pred.n_classes;
  for (std::size_t i = 0; i < pred.classes.size(); ++i) {
    const int t = truth.classes[i], p = pred.classes[i];
    if (t >= n || p >= n) fail(ErrorKind::kInvalidArgument, "label outside the class range");
    ++cm.counts[static_cast<std::size_t>(t) * n + p];
  }
  return cm;
}

std::vector<ClassMetrics> class_metrics(const ConfusionMatrix& cm,
                                        const std::vector<std::string>& names) {
  const int n = cm.n_classes;
  if (!names.empty() && names.size() != static_cast<std::size_t>(n)) {
    fail(ErrorKind::kInconsistentClasses, "class name list does not match the matrix");
  }
  std::vector<std::uint64_t> row(n, 0), col(n, 0);
  for (int t = 0; t < n; ++t) {
    for (int p = 0; p < n; ++p) {
      row[t] += cm.at(t, p);
      col[p] += cm.at(t, p);
    }
  }
  std::vector<ClassMetrics> out(n);
  for (int c = 0; c < n; ++c) {
    const std::uint64_t tp = cm.at(c, c);
    const std::uint64_t fp = col[c] - tp, fn = row[c] - tp;
    ClassMetrics& m = out[c];
    m.name = names.empty() ? std::to_string(c) : names[c];
    m.precision = ratio(tp, tp + fp);
    m.recall = ratio(tp, tp + fn);
    m.f1 = ratio(2 * tp, 2 * tp + fp + fn);
    m.support = row[c];
  }
  return out;
}

MicroAverage micro_average(const ConfusionMatrix& cm) {
  // Every pixel has one true and one predicted label, so pooled FP == FN.
  const double v = ratio(cm.trace(), cm.total());
  return {v, v, v};
}

EvalReport make_report(const ConfusionMatrix& cm, const std::vector<std::string>& names,
                       std::string method, int scale_factor, std::vector<std::string> image_ids,
                       std::string aggregation) {
  EvalReport r;
  r.method = std::move(method);
  r.scale_factor = scale_factor;
  r.aggregation = std::move(aggregation);
  r.image_ids = std::move(image_ids);
  r.matrix = cm;
  r.per_class = class_metrics(cm, names);
  r.micro = micro_average(cm);
  return r;
}

double improvement(double after, double before) {
  if (!(before > 0.0)) {
    fail(ErrorKind::kUndefinedBaseline, "improvement needs a positive baseline, got " +
                                            std::to_string(before));
  }
  return 100.0 * (after - before) / before;
}

std::string render_report(std::span<const EvalReport> reports, ReportFormat format) {
  std::vector<const EvalReport*> order;
  for (const EvalReport& r : reports) order.push_back(&r);
  std::stable_sort(order.begin(), order.end(), [](const EvalReport* a, const EvalReport* b) {
    const int ra = method_rank(a->method), rb = method_rank(b->method);
    return ra != rb ? ra < rb : a->method < b->method;
  });
  if (!order.empty()) {
    const auto& first = order.front()->per_class;
    for (const EvalReport* r : order) {
      bool same = r->per_class.size() == first.size();
      for (std::size_t i = 0; same && i < first.size(); ++i) {
        same = r->per_class[i].name == first[i].name;
      }
      if (!same) {
        fail(ErrorKind::kInconsistentClasses,
             "report for " + r->method + " has a different class list");
      }
    }
  }

  std::vector<std::string> header = {"class"};
  for (const EvalReport* r : order) {
    for (const char* metric : {" precision", " recall", " f1-score"}) {
      header.push_back(r->method + metric);
    }
  }
  std::vector<std::vector<std::string>> rows;
  const std::size_t n_rows = order.empty() ? 0 : order.front()->per_class.size();
  for (std::size_t c = 0; c < n_rows; ++c) {
    std::vector<std::string> row = {order.front()->per_class[c].name};
    for (const EvalReport* r : order) {
      const ClassMetrics& m = r->per_class[c];
      row.insert(row.end(), {fixed3(m.precision), fixed3(m.recall), fixed3(m.f1)});
    }
    rows.push_back(std::move(row));
  }
  {
    std::vector<std::string> row = {"micro avg"};
    for (const EvalReport* r : order) {
      row.insert(row.end(), {fixed3(r->micro.precision), fixed3(r->micro.recall),
                             fixed3(r->micro.f1)});
    }
    rows.push_back(std::move(row));
  }

  std::string out;
  auto emit = [&](const std::vector<std::string>& cells) {
    if (format == ReportFormat::kCsv) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += csv_cell(cells[i]);
      }
    } else {
      out += '|';
      for (const std::string& cell : cells) out += ' ' + cell + " |";
    }
    out += '\n';
  };
  emit(header);
  if (format == ReportFormat::kMarkdown) {
    out += '|';
    for (std::size_t i = 0; i < header.size(); ++i) out += i == 0 ? " :-- |" : " --: |";
    out += '\n';
  }
  for (const auto& row : rows) emit(row);
  return out;
}

std::string report_to_json(const EvalReport& report) { return metrics_json(report).dump(1) + "\n"; }

std::string reports_to_json(std::span<const EvalReport> reports) {
  nlohmann::json list = nlohmann::json::array();
  for (const EvalReport& r : reports) list.push_back(metrics_json(r));
  return list.dump(1) + "\n";
}

}  // namespace planvec
