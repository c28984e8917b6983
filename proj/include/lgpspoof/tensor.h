// lgpspoof/tensor.h

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

#ifndef LGPSPOOF_TENSOR_H_
#define LGPSPOOF_TENSOR_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace lgpspoof {

/// Dense row-major tensor of doubles, rank 1 to 3.  Activations inside the
/// networks are (batch, channels, time); vectors and matrices use rank 1/2.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<std::size_t> shape, double fill = 0.0);
  Tensor(std::vector<std::size_t> shape, std::vector<double> data);

  static Tensor Vector(std::initializer_list<double> values);

  std::size_t Rank() const { return shape_.size(); }
  std::size_t Dim(std::size_t axis) const { return shape_.at(axis); }
  const std::vector<std::size_t> &Shape() const { return shape_; }
  std::size_t Size() const { return data_.size(); }
  bool Empty() const { return data_.empty(); }

  double &operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  double &At(std::size_t i, std::size_t j) { return data_[i * shape_[1] + j]; }
  double At(std::size_t i, std::size_t j) const {
    return data_[i * shape_[1] + j];
  }
  double &At(std::size_t i, std::size_t j, std::size_t k) {
    return data_[(i * shape_[1] + j) * shape_[2] + k];
  }
  double At(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * shape_[1] + j) * shape_[2] + k];
  }

  std::span<double> Data() { return data_; }
  std::span<const double> Data() const { return data_; }

  /// Returns a copy with a new shape of identical element count.
  Tensor Reshaped(std::vector<std::size_t> shape) const;

  void Fill(double value);
  bool AllFinite() const;
  bool SameShape(const Tensor &other) const { return shape_ == other.shape_; }

  std::string ShapeString() const;

  friend bool operator==(const Tensor &a, const Tensor &b) {
    return a.shape_ == b.shape_ && a.data_ == b.data_;
  }

 private:
  std::vector<std::size_t> shape_;
  std::vector<double> data_;
};

/// Throws InvalidArgument naming `what` unless `t` has exactly `shape`.
void CheckShape(const Tensor &t, const std::vector<std::size_t> &shape,
                const char *what);

}  // namespace lgpspoof

#endif  // LGPSPOOF_TENSOR_H_
