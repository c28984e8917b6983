// lgpspoof/adam.cc

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

#include "lgpspoof/adam.h"

#include <cmath>

#include "lgpspoof/base.h"

namespace lgpspoof {

void AdamStep(std::span<Tensor *const> params,
              std::span<const Tensor *const> grads, AdamState &state) {
  if (params.size() != grads.size())
    throw InvalidArgument("adam: parameter/gradient count mismatch");
  if (state.m.empty()) {
    for (const Tensor *p : params) {
      state.m.emplace_back(p->Shape());
      state.v.emplace_back(p->Shape());
    }
  }
  if (state.m.size() != params.size())
    throw InvalidArgument("adam: parameter count changed between steps");
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!params[i]->SameShape(*grads[i]) || !params[i]->SameShape(state.m[i]))
      throw InvalidArgument("adam: shape mismatch for parameter " +
                            std::to_string(i));
  }

  ++state.t;
  const double c1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.t));
  const double c2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.t));
  for (std::size_t i = 0; i < params.size(); ++i) {
    Tensor &p = *params[i];
    const Tensor &g = *grads[i];
    Tensor &m = state.m[i];
    Tensor &v = state.v[i];
    for (std::size_t j = 0; j < p.Size(); ++j) {
      m[j] = state.beta1 * m[j] + (1.0 - state.beta1) * g[j];
      v[j] = state.beta2 * v[j] + (1.0 - state.beta2) * g[j] * g[j];
      const double m_hat = m[j] / c1;
      const double v_hat = v[j] / c2;
      p[j] -= state.lr * m_hat / (std::sqrt(v_hat) + state.epsilon);
    }
  }
}

}  // namespace lgpspoof
