// lgpspoof/tensor_archive.cc

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

#include "lgpspoof/tensor_archive.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "lgpspoof/base.h"
#include "lgpspoof/binary_io.h"

namespace lgpspoof {

void TensorArchive::Put(const std::string &name, Tensor tensor) {
  for (auto &entry : entries_) {
    if (entry.first == name) {
      entry.second = std::move(tensor);
      return;
    }
  }
  entries_.emplace_back(name, std::move(tensor));
}

void TensorArchive::PutScalar(const std::string &name, double value) {
  Put(name, Tensor({1}, {value}));
}

void TensorArchive::PutUint64(const std::string &name, std::uint64_t value) {
  std::vector<double> limbs(4);
  for (int i = 0; i < 4; ++i)
    limbs[i] = static_cast<double>((value >> (16 * i)) & 0xffffu);
  Put(name, Tensor({4}, std::move(limbs)));
}

bool TensorArchive::Has(std::string_view name) const {
  for (const auto &entry : entries_)
    if (entry.first == name) return true;
  return false;
}

const Tensor &TensorArchive::Get(std::string_view name) const {
  for (const auto &entry : entries_)
    if (entry.first == name) return entry.second;
  throw FormatError("tensor archive: missing entry '" + std::string(name) + "'",
                    0);
}

double TensorArchive::GetScalar(std::string_view name) const {
  const Tensor &t = Get(name);
  if (t.Size() != 1)
    throw FormatError("tensor archive: entry '" + std::string(name) +
                          "' is not a scalar", 0);
  return t[0];
}

std::uint64_t TensorArchive::GetUint64(std::string_view name) const {
  const Tensor &t = Get(name);
  if (t.Size() != 4)
    throw FormatError("tensor archive: entry '" + std::string(name) +
                          "' is not a 64-bit value", 0);
  std::uint64_t value = 0;
  for (int i = 0; i < 4; ++i)
    value |= static_cast<std::uint64_t>(t[i]) << (16 * i);
  return value;
}

std::string TensorArchive::Serialize() const {
  ByteWriter w;
  w.Raw("LGPN", 4);
  w.U16(kVersion);
  w.U32(static_cast<std::uint32_t>(entries_.size()));
  for (const auto &[name, tensor] : entries_) {
    w.U32(static_cast<std::uint32_t>(name.size()));
    w.Raw(name.data(), name.size());
    w.U32(static_cast<std::uint32_t>(tensor.Rank()));
    for (std::size_t extent : tensor.Shape()) w.U64(extent);
    for (double v : tensor.Data()) w.F32(static_cast<float>(v));
  }
  return w.Take();
}

TensorArchive TensorArchive::Deserialize(std::string_view bytes) {
  ByteReader r(bytes);
  char magic[4];
  r.Raw(magic, 4);
  if (std::memcmp(magic, "LGPN", 4) != 0)
    throw FormatError("tensor archive: bad magic", 0);
  const std::uint16_t version = r.U16();
  if (version != kVersion)
    throw FormatError("tensor archive: unsupported version " +
                          std::to_string(version), 4);
  const std::uint32_t count = r.U32();
  TensorArchive archive;
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::uint32_t name_len = r.U32();
    std::string name(r.Take(name_len));
    const std::uint64_t rank_at = r.Offset();
    const std::uint32_t rank = r.U32();
    if (rank < 1 || rank > 3)
      throw FormatError("tensor archive: bad rank " + std::to_string(rank),
                        rank_at);
    std::vector<std::size_t> shape(rank);
    std::uint64_t total = 1;
    for (auto &extent : shape) {
      extent = r.U64();
      total *= extent;
    }
    if (total > (bytes.size() - r.Offset()) / 4)
      throw FormatError("tensor archive: truncated values for '" + name + "'",
                        r.Offset());
    std::vector<double> values(total);
    for (auto &v : values) v = r.F32();
    if (archive.Has(name))
      throw FormatError("tensor archive: duplicate entry '" + name + "'",
                        rank_at);
    archive.entries_.emplace_back(std::move(name),
                                  Tensor(std::move(shape), std::move(values)));
  }
  if (r.Offset() != bytes.size())
    throw FormatError("tensor archive: trailing bytes", r.Offset());
  return archive;
}

void TensorArchive::Write(const std::string &path) const {
  WriteFileBytes(path, Serialize());
}

TensorArchive TensorArchive::Read(const std::string &path) {
  return Deserialize(ReadFileBytes(path));
}

std::string ReadFileBytes(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFileBytes(const std::string &path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace lgpspoof
