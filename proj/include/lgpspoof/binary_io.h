// lgpspoof/binary_io.h

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

#ifndef LGPSPOOF_BINARY_IO_H_
#define LGPSPOOF_BINARY_IO_H_

#include <bit>
#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>

#include "lgpspoof/base.h"

namespace lgpspoof {

// Little-endian byte streams, independent of host byte order.

class ByteWriter {
 public:
  void Raw(const void *data, std::size_t size) {
    buf_.append(static_cast<const char *>(data), size);
  }
  void U16(std::uint16_t v) { Le(v, 2); }
  void U32(std::uint32_t v) { Le(v, 4); }
  void U64(std::uint64_t v) { Le(v, 8); }
  void F32(float v) { U32(std::bit_cast<std::uint32_t>(v)); }
  std::string Take() { return std::move(buf_); }

 private:
  void Le(std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i)
      buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  std::string buf_;
};

class ByteReader {
 public:
  explicit ByteReader(std::string_view bytes) : bytes_(bytes) {}

  std::string_view Take(std::size_t size) {
    Need(size);
    std::string_view s = bytes_.substr(pos_, size);
    pos_ += size;
    return s;
  }
  void Raw(void *out, std::size_t size) {
    std::string_view s = Take(size);
    std::memcpy(out, s.data(), size);
  }
  std::uint16_t U16() { return static_cast<std::uint16_t>(Le(2)); }
  std::uint32_t U32() { return static_cast<std::uint32_t>(Le(4)); }
  std::uint64_t U64() { return Le(8); }
  float F32() { return std::bit_cast<float>(U32()); }
  std::size_t Offset() const { return pos_; }

 private:
  void Need(std::size_t size) const {
    if (bytes_.size() - pos_ < size)
      throw FormatError("unexpected end of data, need " +
                            std::to_string(size) + " bytes", pos_);
  }
  std::uint64_t Le(int bytes) {
    Need(static_cast<std::size_t>(bytes));
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i)
      v |= static_cast<std::uint64_t>(
               static_cast<unsigned char>(bytes_[pos_ + i]))
           << (8 * i);
    pos_ += static_cast<std::size_t>(bytes);
    return v;
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace lgpspoof

#endif  // LGPSPOOF_BINARY_IO_H_
