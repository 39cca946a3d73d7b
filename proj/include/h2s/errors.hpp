// Copyright 2026 The h2s Authors
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

#ifndef H2S_ERRORS_HPP
#define H2S_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace h2s {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input text could not be parsed. `line` is 1-based when known (0 otherwise);
/// `offset` is the byte offset when known.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t line, std::size_t offset)
      : Error(what), line_(line), offset_(offset) {}
  std::size_t line() const { return line_; }
  std::size_t offset() const { return offset_; }

 private:
  std::size_t line_;
  std::size_t offset_;
};

/// Parsed input violates a model invariant.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, int segment_id = -1)
      : Error(what), segment_id_(segment_id) {}
  int segment_id() const { return segment_id_; }

 private:
  int segment_id_;
};

/// A primitive kind cannot be fitted to the given geometry.
class FitError : public Error {
 public:
  using Error::Error;
};

/// A point cannot be projected (at or behind the eye plane), or the camera is
/// degenerate.
class ProjectionError : public Error {
 public:
  using Error::Error;
};

/// A guideline construction is undefined for the given face.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

}  // namespace h2s

#endif  // H2S_ERRORS_HPP
