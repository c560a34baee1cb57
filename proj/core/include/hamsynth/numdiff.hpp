// Copyright 2026 The hamsynth Authors
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

#include <limits>
#include <type_traits>
#include <utility>

namespace hamsynth {

/// Second-order first derivative of f at t with step h. Uses the central
/// stencil inside [lo, hi] and the one-sided three-point stencils when t is
/// within h of an end.
template <typename F>
auto derivative(F&& f, double t, double h,
                double lo = -std::numeric_limits<double>::infinity(),
                double hi = std::numeric_limits<double>::infinity()) {
    using R = std::decay_t<decltype(f(t))>;
    if (t - h < lo) {
        R f0 = f(t);
        R f1 = f(t + h);
        R f2 = f(t + 2 * h);
        return R((-3.0 * f0 + 4.0 * f1 - f2) / (2 * h));
    }
    if (t + h > hi) {
        R f0 = f(t);
        R f1 = f(t - h);
        R f2 = f(t - 2 * h);
        return R((3.0 * f0 - 4.0 * f1 + f2) / (2 * h));
    }
    R fp = f(t + h);
    R fm = f(t - h);
    return R((fp - fm) / (2 * h));
}

}  // namespace hamsynth
