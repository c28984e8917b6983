// lgpspoof/adam.h

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

#ifndef LGPSPOOF_ADAM_H_
#define LGPSPOOF_ADAM_H_

#include <cstdint>
#include <span>
#include <vector>

#include "lgpspoof/tensor.h"

namespace lgpspoof {

struct AdamState {
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::int64_t t = 0;
  std::vector<Tensor> m, v;  // one per parameter, created on the first step
};

/// One bias-corrected Adam update of every parameter in `params`.
/// The parameter list must keep the same order and shapes across calls.
void AdamStep(std::span<Tensor *const> params,
              std::span<const Tensor *const> grads, AdamState &state);

}  // namespace lgpspoof

#endif  // LGPSPOOF_ADAM_H_
