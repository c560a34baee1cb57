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

#include "hamsynth/spline.hpp"

#include <algorithm>

#include "hamsynth/errors.hpp"

namespace hamsynth {

NaturalCubicSpline::NaturalCubicSpline(std::span<const double> x, std::span<const double> y)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()), m_(x.size(), 0.0) {
    const std::size_t n = x_.size();
    if (n != y_.size() || n < 2)
        throw Error(ErrorCode::InvalidFamilyParameter, "spline needs >= 2 matching samples");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1]))
            throw Error(ErrorCode::InvalidFamilyParameter, "spline abscissae must be strictly increasing");
    if (n == 2) return;

    // Thomas algorithm on the interior second derivatives; m_0 = m_{n-1} = 0.
    const std::size_t k = n - 2;
    std::vector<double> diag(k), upper(k), rhs(k);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double h0 = x_[i] - x_[i - 1];
        double h1 = x_[i + 1] - x_[i];
        diag[i - 1] = 2.0 * (h0 + h1);
        upper[i - 1] = h1;
        rhs[i - 1] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
    }
    for (std::size_t i = 1; i < k; ++i) {
        double lower = x_[i + 1] - x_[i];  // h_{i}, sub-diagonal of row i
        double w = lower / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    m_[k] = rhs[k - 1] / diag[k - 1];
    for (std::size_t i = k - 1; i >= 1; --i) m_[i] = (rhs[i - 1] - upper[i - 1] * m_[i + 1]) / diag[i - 1];
}

std::size_t NaturalCubicSpline::segment(double x) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    return std::min(i, x_.size() - 2);
}

double NaturalCubicSpline::value(double x) const {
    std::size_t i = segment(x);
    double h = x_[i + 1] - x_[i];
    double a = (x_[i + 1] - x) / h;
    double b = (x - x_[i]) / h;
    return a * y_[i] + b * y_[i + 1] +
           ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double NaturalCubicSpline::derivative(double x) const {
    std::size_t i = segment(x);
    double h = x_[i + 1] - x_[i];
    double a = (x_[i + 1] - x) / h;
    double b = (x - x_[i]) / h;
    return (y_[i + 1] - y_[i]) / h +
           (-(3.0 * a * a - 1.0) * m_[i] + (3.0 * b * b - 1.0) * m_[i + 1]) * h / 6.0;
}

double NaturalCubicSpline::second_derivative(double x) const {
    std::size_t i = segment(x);
    double h = x_[i + 1] - x_[i];
    double a = (x_[i + 1] - x) / h;
    double b = (x - x_[i]) / h;
    return a * m_[i] + b * m_[i + 1];
}

}  // namespace hamsynth
