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

#include "planvec/tensorio.h"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "planvec/error.h"

namespace planvec {
namespace {

static_assert(std::numeric_limits<float>::is_iec559, "f32 payload needs IEEE-754");

void put_u32(std::uint32_t v, unsigned char* out) {
  out[0] = static_cast<unsigned char>(v);
  out[1] = static_cast<unsigned char>(v >> 8);
  out[2] = static_cast<unsigned char>(v >> 16);
  out[3] = static_cast<unsigned char>(v >> 24);
}

std::uint32_t get_u32(const unsigned char* in) {
  return static_cast<std::uint32_t>(in[0]) |
         (static_cast<std::uint32_t>(in[1]) << 8) |
         (static_cast<std::uint32_t>(in[2]) << 16) |
         (static_cast<std::uint32_t>(in[3]) << 24);
}

// Reads up to n bytes and returns how many arrived.
std::size_t read_some(std::istream& in, void* dst, std::size_t n) {
  in.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
  return static_cast<std::size_t>(in.gcount());
}

void read_exact(std::istream& in, void* dst, std::size_t n, const char* what) {
  if (read_some(in, dst, n) != n) {
    fail(ErrorKind::kTruncated, std::string("stream ended inside ") + what);
  }
}

void validate_dims(std::span<const std::size_t> dims) {
  if (dims.empty()) fail(ErrorKind::kEmptyDims, "tensor needs at least one dim");
  if (dims.size() > 255) {
    fail(ErrorKind::kInvalidArgument, "at most 255 dims are encodable");
  }
  for (std::size_t d : dims) {
    if (d == 0) fail(ErrorKind::kZeroDim, "tensor dims must be >= 1");
    if (d > std::numeric_limits<std::uint32_t>::max()) {
      fail(ErrorKind::kInvalidArgument, "dim exceeds u32 range");
    }
  }
}

constexpr std::size_t kChunkFloats = 1 << 16;

}  // namespace

std::size_t encoded_size(std::span<const std::size_t> dims) {
  return 7 + 4 * dims.size() + 4 * shape_numel(dims);
}

std::size_t write_tensor(std::span<const std::size_t> dims,
                         std::span<const float> data, std::ostream& out) {
  validate_dims(dims);
  const std::size_t numel = shape_numel(dims);
  if (data.size() != numel) {
    fail(ErrorKind::kShapeMismatch, "data length does not match dims");
  }

  std::vector<unsigned char> header(7 + 4 * dims.size());
  std::memcpy(header.data(), kTensorMagic, 4);
  header[4] = kTensorVersion;
  header[5] = kDtypeFloat32;
  header[6] = static_cast<unsigned char>(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) {
    put_u32(static_cast<std::uint32_t>(dims[i]), header.data() + 7 + 4 * i);
  }
  out.write(reinterpret_cast<const char*>(header.data()),
            static_cast<std::streamsize>(header.size()));

  std::vector<unsigned char> chunk;
  for (std::size_t begin = 0; begin < numel; begin += kChunkFloats) {
    const std::size_t n = std::min(kChunkFloats, numel - begin);
    chunk.resize(4 * n);
    for (std::size_t i = 0; i < n; ++i) {
      put_u32(std::bit_cast<std::uint32_t>(data[begin + i]), chunk.data() + 4 * i);
    }
    out.write(reinterpret_cast<const char*>(chunk.data()),
              static_cast<std::streamsize>(chunk.size()));
  }
  if (!out) fail(ErrorKind::kWriteFailure, "tensor sink rejected write");
  return header.size() + 4 * numel;
}

std::size_t write_tensor(const Tensor& t, std::ostream& out) {
  return write_tensor(t.dims(), t.data(), out);
}

Tensor read_tensor(std::istream& in) {
  std::array<unsigned char, 7> header{};
  const std::size_t got = read_some(in, header.data(), 4);
  if (got < 4) fail(ErrorKind::kTruncated, "stream ended inside magic");
  if (std::memcmp(header.data(), kTensorMagic, 4) != 0) {
    fail(ErrorKind::kBadMagic, "expected \"FPTN\"");
  }
  read_exact(in, header.data() + 4, 3, "header");
  if (header[4] != kTensorVersion) {
    fail(ErrorKind::kUnsupportedVersion,
         "version " + std::to_string(header[4]));
  }
  if (header[5] != kDtypeFloat32) {
    fail(ErrorKind::kUnsupportedDtype, "dtype " + std::to_string(header[5]));
  }
  const std::size_t ndim = header[6];
  if (ndim == 0) fail(ErrorKind::kEmptyDims, "header declares ndim = 0");

  std::vector<unsigned char> raw_dims(4 * ndim);
  read_exact(in, raw_dims.data(), raw_dims.size(), "dims");
  Shape dims(ndim);
  for (std::size_t i = 0; i < ndim; ++i) {
    dims[i] = get_u32(raw_dims.data() + 4 * i);
    if (dims[i] == 0) {
      fail(ErrorKind::kZeroDim, "dim " + std::to_string(i) + " is 0");
    }
  }
  const std::size_t numel = shape_numel(dims);

  // Grow in chunks so a lying header fails as truncated instead of
  // allocating the whole claimed payload up front.
  std::vector<float> data;
  std::vector<unsigned char> chunk;
  for (std::size_t begin = 0; begin < numel; begin += kChunkFloats) {
    const std::size_t n = std::min(kChunkFloats, numel - begin);
    chunk.resize(4 * n);
    if (read_some(in, chunk.data(), chunk.size()) != chunk.size()) {
      fail(ErrorKind::kTruncated,
           "payload declares " + std::to_string(numel) + " floats");
    }
    data.reserve(begin + n);
    for (std::size_t i = 0; i < n; ++i) {
      data.push_back(std::bit_cast<float>(get_u32(chunk.data() + 4 * i)));
    }
  }
  return Tensor(std::move(dims), std::move(data));
}

void save_tensor(const Tensor& t, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  write_tensor(t, out);
  out.flush();
  if (!out) fail(ErrorKind::kWriteFailure, "failed writing " + path.string());
}

Tensor load_tensor(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path.string());
  try {
    return read_tensor(in);
  } catch (const Error& e) {
    throw Error(e.kind(), e.detail() + " (" + path.string() + ")");
  }
}

void WeightBundle::insert(std::string name, Tensor tensor) {
  if (name.empty()) fail(ErrorKind::kInvalidArgument, "weight name is empty");
  for (unsigned char c : name) {
    if (c < 0x20 || c > 0x7e) {
      fail(ErrorKind::kInvalidArgument, "weight name must be printable ASCII");
    }
  }
  if (index_.count(name) != 0) fail(ErrorKind::kDuplicateName, name);
  index_.emplace(name, entries_.size());
  entries_.emplace_back(std::move(name), std::move(tensor));
}

const Tensor* WeightBundle::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &entries_[it->second].second;
}

const Tensor& WeightBundle::at(const std::string& name) const {
  const Tensor* t = find(name);
  if (t == nullptr) fail(ErrorKind::kMissingWeight, name);
  return *t;
}

WeightBundle load_weight_bundle(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  const fs::path manifest_path =
      fs::is_directory(path) ? path / "manifest.json" : path;
  const fs::path root = manifest_path.parent_path();

  std::ifstream in(manifest_path);
  if (!in) fail(ErrorKind::kManifest, "cannot open " + manifest_path.string());

  nlohmann::json manifest;
  try {
    in >> manifest;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kManifest, manifest_path.string() + ": " + e.what());
  }
  if (!manifest.is_array()) {
    fail(ErrorKind::kManifest, "manifest must be a JSON array");
  }

  WeightBundle bundle;
  for (const auto& entry : manifest) {
    if (!entry.is_object() || !entry.contains("name") ||
        !entry.contains("shape") || !entry.contains("file") ||
        !entry["name"].is_string() || !entry["shape"].is_array() ||
        !entry["file"].is_string()) {
      fail(ErrorKind::kManifest,
           "entry needs string \"name\", array \"shape\", string \"file\"");
    }
    std::string name = entry["name"].get<std::string>();
    if (bundle.contains(name)) fail(ErrorKind::kDuplicateName, name);

    Shape declared;
    for (const auto& d : entry["shape"]) {
      if (!d.is_number_integer() || d.get<long long>() < 1) {
        fail(ErrorKind::kManifest, "shape of " + name + " must be positive ints");
      }
      declared.push_back(d.get<std::size_t>());
    }

    const fs::path blob = root / entry["file"].get<std::string>();
    if (!fs::is_regular_file(blob)) {
      fail(ErrorKind::kMissingBlob, name + " -> " + blob.string());
    }
    Tensor t = load_tensor(blob);
    if (t.dims() != declared) {
      fail(ErrorKind::kShapeMismatch, name + ": manifest shape disagrees with blob");
    }
    bundle.insert(std::move(name), std::move(t));
  }
  return bundle;
}

void save_weight_bundle(const WeightBundle& bundle,
                        const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  nlohmann::json manifest = nlohmann::json::array();
  for (const auto& [name, tensor] : bundle.entries()) {
    std::string file;
    for (char c : name) file.push_back(c == '/' || c == '\\' ? '_' : c);
    file += ".fpt";
    save_tensor(tensor, dir / file);
    manifest.push_back({{"name", name}, {"shape", tensor.dims()}, {"file", file}});
  }
  std::ofstream out(dir / "manifest.json", std::ios::trunc);
  if (!out) fail(ErrorKind::kIo, "cannot write manifest in " + dir.string());
  out << manifest.dump(2) << '\n';
  if (!out) fail(ErrorKind::kWriteFailure, "manifest write failed");
}

}  // namespace planvec
