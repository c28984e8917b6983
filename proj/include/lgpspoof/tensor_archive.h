// lgpspoof/tensor_archive.h

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

#ifndef LGPSPOOF_TENSOR_ARCHIVE_H_
#define LGPSPOOF_TENSOR_ARCHIVE_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lgpspoof/tensor.h"

namespace lgpspoof {

/*
  Named-tensor container used for every checkpoint (GMMs, LGP statistics,
  networks).  Layout, all integers little-endian:

    "LGPN"              4 bytes magic
    version             u16 (currently 1)
    count               u32
    count times:
      name_length       u32
      name              UTF-8 bytes
      rank              u32 (1..3)
      extents           rank x u64
      values            prod(extents) x IEEE-754 float32

  Values are stored as float32, so only float-representable doubles survive
  a round trip unchanged; a second write of a loaded archive is byte-identical.
*/
class TensorArchive {
 public:
  static constexpr std::uint16_t kVersion = 1;

  /// Appends, or replaces an existing entry of the same name in place.
  void Put(const std::string &name, Tensor tensor);
  void PutScalar(const std::string &name, double value);
  /// Stores a 64-bit value as four exact 16-bit limbs.
  void PutUint64(const std::string &name, std::uint64_t value);

  bool Has(std::string_view name) const;
  /// Throws FormatError(0) if the entry is missing.
  const Tensor &Get(std::string_view name) const;
  double GetScalar(std::string_view name) const;
  std::uint64_t GetUint64(std::string_view name) const;

  const std::vector<std::pair<std::string, Tensor>> &Entries() const {
    return entries_;
  }

  std::string Serialize() const;
  static TensorArchive Deserialize(std::string_view bytes);

  void Write(const std::string &path) const;
  static TensorArchive Read(const std::string &path);

 private:
  std::vector<std::pair<std::string, Tensor>> entries_;
};

/// Whole-file helpers shared by the binary containers.
std::string ReadFileBytes(const std::string &path);
void WriteFileBytes(const std::string &path, std::string_view bytes);

}  // namespace lgpspoof

#endif  // LGPSPOOF_TENSOR_ARCHIVE_H_
