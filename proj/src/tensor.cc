// lgpspoof/tensor.cc

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

#include "lgpspoof/tensor.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "lgpspoof/base.h"

namespace lgpspoof {

namespace {

std::size_t ElementCount(const std::vector<std::size_t> &shape) {
  if (shape.empty() || shape.size() > 3)
    throw InvalidArgument("tensor rank must be 1..3, got " +
                          std::to_string(shape.size()));
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                         std::multiplies<>());
}

}  // namespace

Tensor::Tensor(std::vector<std::size_t> shape, double fill)
    : shape_(std::move(shape)), data_(ElementCount(shape_), fill) {}

Tensor::Tensor(std::vector<std::size_t> shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (ElementCount(shape_) != data_.size())
    throw InvalidArgument("tensor data length " + std::to_string(data_.size()) +
                          " does not match shape " + ShapeString());
}

Tensor Tensor::Vector(std::initializer_list<double> values) {
  return Tensor({values.size()}, std::vector<double>(values));
}

Tensor Tensor::Reshaped(std::vector<std::size_t> shape) const {
  return Tensor(std::move(shape), data_);
}

void Tensor::Fill(double value) { std::fill(data_.begin(), data_.end(), value); }

bool Tensor::AllFinite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

std::string Tensor::ShapeString() const {
  std::string s = "(";
  for (std::size_t i = 0; i < shape_.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(shape_[i]);
  }
  return s + ")";
}

void CheckShape(const Tensor &t, const std::vector<std::size_t> &shape,
                const char *what) {
  if (t.Shape() != shape) {
    std::string expected = "(";
    for (std::size_t i = 0; i < shape.size(); ++i)
      expected += (i ? ", " : "") + std::to_string(shape[i]);
    throw InvalidArgument(std::string(what) + ": expected shape " + expected +
                          "), got " + t.ShapeString());
  }
}

}  // namespace lgpspoof
