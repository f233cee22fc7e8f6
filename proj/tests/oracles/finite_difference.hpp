// Copyright 2026 The ArTS Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>

// Central finite differences over a flat parameter vector. Only the
// forward loss is evaluated; nothing from the analytic backward pass is used.
namespace arts::oracle {

inline double central_difference(std::span<double> params, std::size_t index,
                                 const std::function<double()>& loss, double epsilon) {
  const double saved = params[index];
  params[index] = saved + epsilon;
  const double plus = loss();
  params[index] = saved - epsilon;
  const double minus = loss();
  params[index] = saved;
  return (plus - minus) / (2.0 * epsilon);
}

// |a - n| / max(|a|, |n|, floor). Central differences carry round-off of
// about eps_machine * |loss| / epsilon (~1e-10 here), so near-zero gradients
// are compared on an absolute scale set by the floor.
inline double relative_error(double analytic, double numeric, double floor = 1e-4) {
  const double scale = std::max({std::abs(analytic), std::abs(numeric), floor});
  return std::abs(analytic - numeric) / scale;
}

}  // namespace arts::oracle
