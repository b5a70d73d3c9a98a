// Copyright 2026 The Longtail Authors.
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
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace longtail {

// Base of every error raised by the library. The harness tags errors with
// the pipeline stage they escaped from; what() includes the tag once set.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message)
      : std::runtime_error(message), message_(message), full_(message) {}

  const char* what() const noexcept override { return full_.c_str(); }

  const std::string& message() const { return message_; }
  const std::string& stage() const { return stage_; }

  void set_stage(const std::string& stage) {
    stage_ = stage;
    full_ = stage.empty() ? message_ : "[" + stage + "] " + message_;
  }

 private:
  std::string message_;
  std::string stage_;
  std::string full_;
};

// Invalid parameters or configuration values. Maps to the CLI usage exit code.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

class EmptyAfterFilterError : public Error {
 public:
  EmptyAfterFilterError(const std::string& threshold, const std::string& message)
      : Error(message), threshold_(threshold) {}
  // "min_item_ratings" or "min_user_ratings".
  const std::string& threshold() const { return threshold_; }

 private:
  std::string threshold_;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class TrainingDivergedError : public Error {
 public:
  TrainingDivergedError(int epoch, const std::string& message)
      : Error("training diverged at epoch " + std::to_string(epoch) + ": " + message),
        epoch_(epoch) {}
  int epoch() const { return epoch_; }

 private:
  int epoch_;
};

class EmptyCandidatesError : public Error {
 public:
  using Error::Error;
};

class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  IoError(const std::string& path, const std::string& message)
      : Error(path + ": " + message), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace longtail
