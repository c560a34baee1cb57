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

#include "hamsynth/expr.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

#include "hamsynth/errors.hpp"
#include "hamsynth/geomphase.hpp"
#include "hamsynth/unitary_synth.hpp"

using namespace hamsynth;
using std::numbers::pi;

namespace {

double eval(std::string_view src, double t, const Expression::Bindings& b = {}) {
    return Expression::parse(src, b)(t);
}

}  // namespace

TEST(expr, arithmetic_and_precedence) {
    EXPECT_DOUBLE_EQ(eval("1+2*3", 0.0), 7.0);
    EXPECT_DOUBLE_EQ(eval("(1+2)*3", 0.0), 9.0);
    EXPECT_DOUBLE_EQ(eval("2^3^2", 0.0), 512.0);
    EXPECT_DOUBLE_EQ(eval("-t^2", 3.0), -9.0);
    EXPECT_DOUBLE_EQ(eval("8/4/2", 0.0), 1.0);
    EXPECT_DOUBLE_EQ(eval("1-t-t", 1.0), -1.0);
    EXPECT_DOUBLE_EQ(eval("1.5e-1*t", 2.0), 0.3);
    EXPECT_DOUBLE_EQ(eval(" 2 * pi ", 0.0), 2 * pi);
}

TEST(expr, functions_and_bindings) {
    const double t = 0.7;
    EXPECT_DOUBLE_EQ(eval("sin(t)", t), std::sin(t));
    EXPECT_DOUBLE_EQ(eval("cos(t)+tan(t)", t), std::cos(t) + std::tan(t));
    EXPECT_DOUBLE_EQ(eval("sqrt(t)*exp(t)-log(t)", t), std::sqrt(t) * std::exp(t) - std::log(t));
    EXPECT_DOUBLE_EQ(eval("atan(t)+abs(-t)", t), std::atan(t) + t);
    EXPECT_DOUBLE_EQ(eval("omega*t", t, {{"omega", 2.5}}), 2.5 * t);
}

TEST(expr, syntax_errors) {
    for (const char* bad : {"", "1+", "(t", "t)", "foo(t)", "x*t", "2**t", "sin t", "1 2", "t..1"}) {
        try {
            (void)Expression::parse(bad);
            ADD_FAILURE() << "accepted: " << bad;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::InvalidExpression) << bad;
        }
    }
}

TEST(expr, alpha_gauges_from_expressions) {
    const double theta0 = std::acos(2.0 / 3.0);
    PathSpec c = family_circle(0.5, theta0, 1.0);
    AlphaGauge parallel = parallel_alphas(c, TimeGrid(1000, c.tau()));
    Expression a1 = Expression::parse("0.5*cos(theta0)*t", {{"theta0", theta0}});
    for (double t : {0.0, 1.0, 4.0}) EXPECT_NEAR(a1(t), parallel.alpha(1, t), 1e-12);

    EXPECT_NO_THROW(AlphaGauge(Expression::parse("sin(t)"), Expression::parse("0")));
    try {
        AlphaGauge(Expression::parse("1+t"), Expression::parse("0"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonzeroAlphaAtZero);
    }
}
