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

#ifndef PLANVEC_ERROR_H_
#define PLANVEC_ERROR_H_

#include <stdexcept>
#include <string>

namespace planvec {

enum class ErrorKind {
  kInvalidArgument,
  kIo,
  // tensor format
  kEmptyDims,
  kZeroDim,
  kBadMagic,
  kUnsupportedVersion,
  kUnsupportedDtype,
  kTruncated,
  kWriteFailure,
  // weight bundles
  kManifest,
  kMissingBlob,
  kShapeMismatch,
  kDuplicateName,
  kMissingWeight,
  // networks and kernels
  kUnsupportedScale,
  kInvalidNetwork,
  // geometry / post-processing
  kDimensionMismatch,
  kPolygonExplosion,
  // ground truth
  kParse,
  // evaluation
  kUndefinedBaseline,
  kInconsistentClasses,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  // what() reads "<kind>: <detail>".
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
        kind_(kind),
        detail_(detail) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace planvec

#endif  // PLANVEC_ERROR_H_
