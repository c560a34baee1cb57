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

#include <cctype>
#include <cmath>
#include <numbers>

#include "hamsynth/errors.hpp"

namespace hamsynth {

struct Expression::Node {
    enum class Kind { Constant, Variable, Unary, Binary, Call } kind;
    double value = 0.0;
    char op = 0;
    double (*fn)(double) = nullptr;
    std::shared_ptr<const Node> lhs, rhs;

    double eval(double t) const {
        switch (kind) {
            case Kind::Constant: return value;
            case Kind::Variable: return t;
            case Kind::Unary: return -lhs->eval(t);
            case Kind::Call: return fn(lhs->eval(t));
            case Kind::Binary: {
                const double a = lhs->eval(t), b = rhs->eval(t);
                switch (op) {
                    case '+': return a + b;
                    case '-': return a - b;
                    case '*': return a * b;
                    case '/': return a / b;
                    case '^': return std::pow(a, b);
                }
            }
        }
        return std::nan("");
    }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Kind = Expression::Node::Kind;

NodePtr constant(double v) {
    auto n = std::make_shared<Expression::Node>();
    n->kind = Kind::Constant;
    n->value = v;
    return n;
}

double (*lookup_function(std::string_view name))(double) {
    if (name == "sin") return [](double x) { return std::sin(x); };
    if (name == "cos") return [](double x) { return std::cos(x); };
    if (name == "tan") return [](double x) { return std::tan(x); };
    if (name == "sqrt") return [](double x) { return std::sqrt(x); };
    if (name == "exp") return [](double x) { return std::exp(x); };
    if (name == "log") return [](double x) { return std::log(x); };
    if (name == "atan") return [](double x) { return std::atan(x); };
    if (name == "abs") return [](double x) { return std::abs(x); };
    return nullptr;
}

class Parser {
public:
    Parser(std::string_view src, const Expression::Bindings& bindings)
        : src_(src), bindings_(bindings) {}

    NodePtr parse() {
        NodePtr n = expr();
        skip();
        if (pos_ != src_.size()) error("unexpected trailing input");
        return n;
    }

private:
    [[noreturn]] void error(const std::string& what) const {
        throw Error(ErrorCode::InvalidExpression, "expression '" + std::string(src_) + "' at offset " +
                                                      std::to_string(pos_) + ": " + what);
    }

    void skip() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr binary(char op, NodePtr a, NodePtr b) {
        auto n = std::make_shared<Expression::Node>();
        n->kind = Kind::Binary;
        n->op = op;
        n->lhs = std::move(a);
        n->rhs = std::move(b);
        return n;
    }

    NodePtr expr() {
        NodePtr n = term();
        for (;;) {
            if (accept('+')) n = binary('+', n, term());
            else if (accept('-')) n = binary('-', n, term());
            else return n;
        }
    }

    NodePtr term() {
        NodePtr n = unary();
        for (;;) {
            if (accept('*')) n = binary('*', n, unary());
            else if (accept('/')) n = binary('/', n, unary());
            else return n;
        }
    }

    NodePtr unary() {
        if (accept('-')) {
            auto n = std::make_shared<Expression::Node>();
            n->kind = Kind::Unary;
            n->lhs = unary();
            return n;
        }
        if (accept('+')) return unary();
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (accept('^')) return binary('^', base, unary());
        return base;
    }

    NodePtr primary() {
        skip();
        if (pos_ >= src_.size()) error("unexpected end of input");
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr n = expr();
            if (!accept(')')) error("expected ')'");
            return n;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        error(std::string("unexpected character '") + c + "'");
    }

    NodePtr number() {
        const std::string rest(src_.substr(pos_));
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(rest, &used);
        } catch (const std::exception&) {
            error("malformed number");
        }
        pos_ += used;
        return constant(v);
    }

    NodePtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        const std::string_view name = src_.substr(start, pos_ - start);
        if (auto fn = lookup_function(name)) {
            if (!accept('(')) error("expected '(' after " + std::string(name));
            auto n = std::make_shared<Expression::Node>();
            n->kind = Kind::Call;
            n->fn = fn;
            n->lhs = expr();
            if (!accept(')')) error("expected ')'");
            return n;
        }
        if (name == "t") {
            auto n = std::make_shared<Expression::Node>();
            n->kind = Kind::Variable;
            return n;
        }
        if (name == "pi") return constant(std::numbers::pi);
        if (auto it = bindings_.find(name); it != bindings_.end()) return constant(it->second);
        error("unknown identifier '" + std::string(name) + "'");
    }

    std::string_view src_;
    const Expression::Bindings& bindings_;
    std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(std::string_view source, const Bindings& bindings) {
    Parser p(source, bindings);
    NodePtr root = p.parse();
    return Expression(std::string(source), std::move(root));
}

double Expression::operator()(double t) const { return root_->eval(t); }

}  // namespace hamsynth
