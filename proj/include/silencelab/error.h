// include/silencelab/error.h

// Copyright 2026  SilenceLab Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SILENCELAB_ERROR_H_
#define SILENCELAB_ERROR_H_

#include <stdexcept>
#include <string>

namespace silencelab {

// Malformed file contents: bad RIFF structure, bad manifest line, ...
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string &msg) : std::runtime_error(msg) {}
};

// Structurally valid input we refuse to handle (codec, channel count).
class UnsupportedError : public std::runtime_error {
 public:
  explicit UnsupportedError(const std::string &msg) : std::runtime_error(msg) {}
};

// Bad configuration value (frame size that does not divide the rate, ...).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string &msg) : std::runtime_error(msg) {}
};

// Filesystem-level failure.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string &msg) : std::runtime_error(msg) {}
};

// Argument outside an op's documented domain (empty clip, rate mismatch).
class ValueError : public std::runtime_error {
 public:
  explicit ValueError(const std::string &msg) : std::runtime_error(msg) {}
};

}  // namespace silencelab

#endif  // SILENCELAB_ERROR_H_
