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
#ifndef GCA_ERROR_HPP
#define GCA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace gca {

// Values mirror gca_status in gca.h.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kIo = 2,
  kFormat = 3,
  kCountMismatch = 4,
  kOutOfRange = 5,
  kNonFinite = 6,
  kNotConverged = 7,
  kDiverged = 8,
  kShape = 9,
  kInternal = 10,
};

const char *ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &msg) : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Iterative solvers report the residual they stopped at.
class NotConvergedError : public Error {
 public:
  NotConvergedError(const std::string &msg, double residual)
      : Error(ErrorCode::kNotConverged, msg + " (last residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

#define GCA_CHECK(cond, code, msg)       \
  do {                                   \
    if (!(cond)) {                       \
      throw ::gca::Error((code), (msg)); \
    }                                    \
  } while (0)

}  // namespace gca

#endif  // GCA_ERROR_HPP
