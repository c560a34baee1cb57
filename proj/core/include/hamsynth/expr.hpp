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

#include <map>
#include <memory>
#include <string>
#include <string_view>

namespace hamsynth {

/// Scalar expression in t over + - * / ^, unary minus, parentheses, sin, cos,
/// tan, sqrt, exp, log, atan, abs and the constant pi. Additional named
/// constants (omega, theta0, ...) are bound at parse time.
class Expression {
public:
    using Bindings = std::map<std::string, double, std::less<>>;

    /// Throws InvalidExpression on syntax errors or unknown identifiers.
    static Expression parse(std::string_view source, const Bindings& bindings = {});

    double operator()(double t) const;
    const std::string& source() const { return source_; }

    struct Node;

private:
    Expression(std::string source, std::shared_ptr<const Node> root)
        : source_(std::move(source)), root_(std::move(root)) {}

    std::string source_;
    std::shared_ptr<const Node> root_;
};

}  // namespace hamsynth
