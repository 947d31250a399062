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
#ifndef GCA_CHECKPOINT_HPP
#define GCA_CHECKPOINT_HPP

#include <filesystem>
#include <iosfwd>

#include "gca/encoder.hpp"

namespace gca {

/// Little-endian layout: "GCAM", u32 version, u64 F, H, F', u32 activation,
/// f64 slope1, slope2, then w1, w2, proj_w1, proj_b1, proj_w2, proj_b2 as
/// row-major f64.
inline constexpr std::uint32_t kCheckpointVersion = 1;

void WriteCheckpoint(std::ostream &out, const ModelParams &params);
ModelParams ReadCheckpoint(std::istream &in);

/// Throws Error(kIo) when the file cannot be opened, Error(kFormat) on a
/// bad magic, version or truncated body.
void SaveCheckpoint(const std::filesystem::path &path, const ModelParams &params);
ModelParams LoadCheckpoint(const std::filesystem::path &path);

}  // namespace gca

#endif  // GCA_CHECKPOINT_HPP
