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

#include "planvec/error.h"

namespace planvec {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid argument";
    case ErrorKind::kIo: return "i/o error";
    case ErrorKind::kEmptyDims: return "empty dims";
    case ErrorKind::kZeroDim: return "zero dim";
    case ErrorKind::kBadMagic: return "bad magic";
    case ErrorKind::kUnsupportedVersion: return "unsupported version";
    case ErrorKind::kUnsupportedDtype: return "unsupported dtype";
    case ErrorKind::kTruncated: return "truncated";
    case ErrorKind::kWriteFailure: return "write failure";
    case ErrorKind::kManifest: return "invalid manifest";
    case ErrorKind::kMissingBlob: return "missing blob";
    case ErrorKind::kShapeMismatch: return "shape mismatch";
    case ErrorKind::kDuplicateName: return "duplicate name";
    case ErrorKind::kMissingWeight: return "missing weight";
    case ErrorKind::kUnsupportedScale: return "unsupported scale";
    case ErrorKind::kInvalidNetwork: return "invalid network";
    case ErrorKind::kDimensionMismatch: return "dimension mismatch";
    case ErrorKind::kPolygonExplosion: return "polygon explosion";
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kUndefinedBaseline: return "undefined baseline";
    case ErrorKind::kInconsistentClasses: return "inconsistent classes";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace planvec
