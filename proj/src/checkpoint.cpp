/**
 * Copyright 2026 The GCA Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "gca/checkpoint.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "gca/error.hpp"

namespace gca {
namespace {

constexpr char kMagic[4] = {'G', 'C', 'A', 'M'};
constexpr std::uint64_t kMaxDim = 1u << 24;

template <typename T>
void Put(std::ostream &out, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.write(reinterpret_cast<const char *>(bytes), sizeof(T));
}

template <typename T>
T Get(std::istream &in) {
  unsigned char bytes[sizeof(T)];
  in.read(reinterpret_cast<char *>(bytes), sizeof(T));
  GCA_CHECK(in.gcount() == static_cast<std::streamsize>(sizeof(T)), ErrorCode::kFormat, "checkpoint is truncated");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

template <typename M>
void PutBlock(std::ostream &out, const M &m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) Put<double>(out, m(i, j));
  }
}

template <typename M>
void GetBlock(std::istream &in, M &m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      m(i, j) = Get<double>(in);
      GCA_CHECK(std::isfinite(m(i, j)), ErrorCode::kNonFinite, "checkpoint holds a non-finite parameter");
    }
  }
}

}  // namespace

void WriteCheckpoint(std::ostream &out, const ModelParams &params) {
  out.write(kMagic, 4);
  Put<std::uint32_t>(out, kCheckpointVersion);
  Put<std::uint64_t>(out, static_cast<std::uint64_t>(params.input_dim()));
  Put<std::uint64_t>(out, static_cast<std::uint64_t>(params.hidden_dim()));
  Put<std::uint64_t>(out, static_cast<std::uint64_t>(params.output_dim()));
  Put<std::uint32_t>(out, static_cast<std::uint32_t>(params.activation));
  Put<double>(out, params.slope1);
  Put<double>(out, params.slope2);
  PutBlock(out, params.w1);
  PutBlock(out, params.w2);
  PutBlock(out, params.proj_w1);
  PutBlock(out, params.proj_b1);
  PutBlock(out, params.proj_w2);
  PutBlock(out, params.proj_b2);
  GCA_CHECK(out.good(), ErrorCode::kIo, "failed writing checkpoint");
}

ModelParams ReadCheckpoint(std::istream &in) {
  char magic[4] = {};
  in.read(magic, 4);
  GCA_CHECK(in.gcount() == 4 && std::memcmp(magic, kMagic, 4) == 0, ErrorCode::kFormat, "not a model checkpoint");
  const auto version = Get<std::uint32_t>(in);
  GCA_CHECK(version == kCheckpointVersion, ErrorCode::kFormat,
            "unsupported checkpoint version " + std::to_string(version));
  const auto f = Get<std::uint64_t>(in);
  const auto h = Get<std::uint64_t>(in);
  const auto o = Get<std::uint64_t>(in);
  GCA_CHECK(f >= 1 && h >= 1 && o >= 1 && f < kMaxDim && h < kMaxDim && o < kMaxDim, ErrorCode::kFormat,
            "checkpoint dimensions are invalid");
  const auto act = Get<std::uint32_t>(in);
  GCA_CHECK(act <= static_cast<std::uint32_t>(Activation::kLeaky), ErrorCode::kFormat,
            "unknown activation code " + std::to_string(act));
  ModelParams p = ZeroParams(f, h, o, static_cast<Activation>(act));
  p.slope1 = Get<double>(in);
  p.slope2 = Get<double>(in);
  GetBlock(in, p.w1);
  GetBlock(in, p.w2);
  GetBlock(in, p.proj_w1);
  GetBlock(in, p.proj_b1);
  GetBlock(in, p.proj_w2);
  GetBlock(in, p.proj_b2);
  return p;
}

void SaveCheckpoint(const std::filesystem::path &path, const ModelParams &params) {
  std::ofstream out(path, std::ios::binary);
  GCA_CHECK(out.is_open(), ErrorCode::kIo, "cannot write " + path.string());
  WriteCheckpoint(out, params);
}

ModelParams LoadCheckpoint(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  GCA_CHECK(in.is_open(), ErrorCode::kIo, "cannot open checkpoint " + path.string());
  return ReadCheckpoint(in);
}

}  // namespace gca
