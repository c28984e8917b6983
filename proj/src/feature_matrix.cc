// lgpspoof/feature_matrix.cc

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

#include "lgpspoof/feature_matrix.h"

#include <string>

#include "lgpspoof/base.h"

namespace lgpspoof {

FeatureMatrix::FeatureMatrix(std::size_t frames, std::size_t dim,
                             std::vector<double> data)
    : frames_(frames), dim_(dim), data_(std::move(data)) {
  if (data_.size() != frames * dim)
    throw InvalidArgument("feature matrix: " + std::to_string(data_.size()) +
                          " values for " + std::to_string(frames) + "x" +
                          std::to_string(dim));
}

void FeatureMatrix::AppendFrame(std::span<const double> frame) {
  if (frames_ == 0 && dim_ == 0) dim_ = frame.size();
  if (frame.size() != dim_)
    throw InvalidArgument("feature matrix: frame of dim " +
                          std::to_string(frame.size()) + ", expected " +
                          std::to_string(dim_));
  data_.insert(data_.end(), frame.begin(), frame.end());
  ++frames_;
}

}  // namespace lgpspoof
