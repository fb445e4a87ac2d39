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

#include "planvec/log.h"

#include <iostream>
#include <mutex>
#include <string>
#include <utility>

namespace planvec {
namespace {

void default_sink(LogLevel level, std::string_view message) {
  std::cerr << (level == LogLevel::kWarning ? "warning: " : "") << message
            << '\n';
}

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

LogSink& current_sink() {
  static LogSink sink = default_sink;
  return sink;
}

void emit(LogLevel level, std::string_view message) {
  std::lock_guard<std::mutex> lock(sink_mutex());
  if (current_sink()) current_sink()(level, message);
}

}  // namespace

LogSink set_log_sink(LogSink sink) {
  std::lock_guard<std::mutex> lock(sink_mutex());
  return std::exchange(current_sink(), std::move(sink));
}

void log_info(std::string_view message) { emit(LogLevel::kInfo, message); }

void log_warning(std::string_view message) {
  emit(LogLevel::kWarning, message);
}

}  // namespace planvec
