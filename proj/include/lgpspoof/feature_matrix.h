// lgpspoof/feature_matrix.h

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

#ifndef LGPSPOOF_FEATURE_MATRIX_H_
#define LGPSPOOF_FEATURE_MATRIX_H_

#include <cstddef>
#include <span>
#include <vector>

namespace lgpspoof {

/// T x D matrix of acoustic frames, one frame per row.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t frames, std::size_t dim)
      : frames_(frames), dim_(dim), data_(frames * dim, 0.0) {}
  FeatureMatrix(std::size_t frames, std::size_t dim, std::vector<double> data);

  std::size_t NumFrames() const { return frames_; }
  std::size_t Dim() const { return dim_; }
  bool Empty() const { return frames_ == 0; }

  std::span<double> Row(std::size_t t) { return {data_.data() + t * dim_, dim_}; }
  std::span<const double> Row(std::size_t t) const {
    return {data_.data() + t * dim_, dim_};
  }
  double &operator()(std::size_t t, std::size_t d) { return data_[t * dim_ + d]; }
  double operator()(std::size_t t, std::size_t d) const {
    return data_[t * dim_ + d];
  }

  std::span<const double> Data() const { return data_; }
  void AppendFrame(std::span<const double> frame);

  friend bool operator==(const FeatureMatrix &a, const FeatureMatrix &b) {
    return a.frames_ == b.frames_ && a.dim_ == b.dim_ && a.data_ == b.data_;
  }

 private:
  std::size_t frames_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

}  // namespace lgpspoof

#endif  // LGPSPOOF_FEATURE_MATRIX_H_
