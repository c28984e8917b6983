// lgpspoof/base.h

// Copyright 2026  The lgpspoof Authors

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

#ifndef LGPSPOOF_BASE_H_
#define LGPSPOOF_BASE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

namespace lgpspoof {

inline constexpr const char *kToolkitVersion = "1.0.0";

// Error taxonomy.  The CLI maps these onto exit codes: InvalidArgument and
// FormatError/IoError are data errors (3), NumericError is 4.

class InvalidArgument : public std::invalid_argument {
 public:
  explicit InvalidArgument(const std::string &what)
      : std::invalid_argument(what) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string &what) : std::runtime_error(what) {}
};

/// Malformed on-disk data.  Carries the byte offset (binary containers) or
/// the 1-based line number (text files) where parsing failed.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string &what, std::uint64_t position)
      : std::runtime_error(what + " (at " + std::to_string(position) + ")"),
        position_(position) {}
  std::uint64_t position() const { return position_; }

 private:
  std::uint64_t position_;
};

/// Non-finite values during training or scoring.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string &what) : std::runtime_error(what) {}
};

/// FNV-1a over raw bytes; used for content fingerprints stored in
/// checkpoints.
class Fnv1a {
 public:
  void Update(const void *data, std::size_t size) {
    const auto *p = static_cast<const unsigned char *>(data);
    for (std::size_t i = 0; i < size; ++i) {
      state_ ^= p[i];
      state_ *= 0x100000001b3ULL;
    }
  }
  // Each value is rounded to float32 first so that an in-memory object and
  // its reloaded checkpoint fingerprint identically.
  void UpdateAsFloat32(std::span<const double> values) {
    for (double v : values) {
      float f = static_cast<float>(v);
      Update(&f, sizeof(f));
    }
  }
  std::uint64_t Digest() const { return state_; }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

/// Independent seed for sub-stream `stream` of `base` (splitmix64 finalizer).
inline std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace lgpspoof

#endif  // LGPSPOOF_BASE_H_
