#include "conemc/curvature.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace conemc {

namespace {

enum class NodeOp { number, var_x, var_y, var_z, var_r2, add, sub, mul, div, pow_op, neg, exp_fn, sin_fn, cos_fn, sqrt_fn };

}  // namespace

struct PrescribedCurvature::Node {
    NodeOp op;
    double value = 0.0;
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
};

namespace {

using NodePtr = std::shared_ptr<const PrescribedCurvature::Node>;

NodePtr make_node(NodeOp op, NodePtr a = nullptr, NodePtr b = nullptr, double value = 0.0) {
    auto n = std::make_shared<PrescribedCurvature::Node>();
    n->op = op;
    n->value = value;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

class Parser {
  public:
    explicit Parser(const std::string& text) : text_(text) {}

    NodePtr parse() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

    bool uses_xy = false;
    bool uses_r2 = false;
    bool uses_z = false;

  private:
    const std::string& text_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("H expression: " + msg + " at position " +
                                    std::to_string(pos_));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    NodePtr expr() {
        NodePtr left = term();
        for (;;) {
            if (eat('+')) {
                left = make_node(NodeOp::add, left, term());
            } else if (eat('-')) {
                left = make_node(NodeOp::sub, left, term());
            } else {
                return left;
            }
        }
    }

    NodePtr term() {
        NodePtr left = factor();
        for (;;) {
            if (eat('*')) {
                left = make_node(NodeOp::mul, left, factor());
            } else if (eat('/')) {
                left = make_node(NodeOp::div, left, factor());
            } else {
                return left;
            }
        }
    }

    NodePtr factor() {
        NodePtr base = unary();
        if (eat('^')) {
            return make_node(NodeOp::pow_op, base, factor());  // right associative
        }
        return base;
    }

    NodePtr unary() {
        if (eat('-')) return make_node(NodeOp::neg, unary());
        if (eat('+')) return unary();
        return primary();
    }

    NodePtr primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        if (c == '(') {
            ++pos_;
            NodePtr e = expr();
            if (!eat(')')) fail("missing ')'");
            return e;
        }
        fail("unexpected character");
    }

    NodePtr number() {
        const char* begin = text_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) fail("bad number");
        pos_ += static_cast<size_t>(end - begin);
        return make_node(NodeOp::number, nullptr, nullptr, v);
    }

    NodePtr identifier() {
        const size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string name = text_.substr(start, pos_ - start);
        if (name == "x") {
            uses_xy = true;
            return make_node(NodeOp::var_x);
        }
        if (name == "y") {
            uses_xy = true;
            return make_node(NodeOp::var_y);
        }
        if (name == "z") {
            uses_z = true;
            return make_node(NodeOp::var_z);
        }
        if (name == "r2") {
            uses_r2 = true;
            return make_node(NodeOp::var_r2);
        }
        if (peek() != '(') fail("unknown identifier '" + name + "'");
        ++pos_;  // consume '('
        NodePtr arg = expr();
        if (!eat(')')) fail("missing ')'");
        if (name == "exp") return make_node(NodeOp::exp_fn, arg);
        if (name == "sin") return make_node(NodeOp::sin_fn, arg);
        if (name == "cos") return make_node(NodeOp::cos_fn, arg);
        if (name == "sqrt") return make_node(NodeOp::sqrt_fn, arg);
        fail("unknown function '" + name + "'");
    }
};

double eval_node(const PrescribedCurvature::Node& n, const LVec3& p) {
    switch (n.op) {
        case NodeOp::number: return n.value;
        case NodeOp::var_x: return p.x;
        case NodeOp::var_y: return p.y;
        case NodeOp::var_z: return p.z;
        case NodeOp::var_r2: return p.x * p.x + p.y * p.y;
        case NodeOp::add: return eval_node(*n.a, p) + eval_node(*n.b, p);
        case NodeOp::sub: return eval_node(*n.a, p) - eval_node(*n.b, p);
        case NodeOp::mul: return eval_node(*n.a, p) * eval_node(*n.b, p);
        case NodeOp::div: return eval_node(*n.a, p) / eval_node(*n.b, p);
        case NodeOp::pow_op: return std::pow(eval_node(*n.a, p), eval_node(*n.b, p));
        case NodeOp::neg: return -eval_node(*n.a, p);
        case NodeOp::exp_fn: return std::exp(eval_node(*n.a, p));
        case NodeOp::sin_fn: return std::sin(eval_node(*n.a, p));
        case NodeOp::cos_fn: return std::cos(eval_node(*n.a, p));
        case NodeOp::sqrt_fn: return std::sqrt(eval_node(*n.a, p));
    }
    return 0.0;
}

}  // namespace

PrescribedCurvature::PrescribedCurvature() {
    root_ = make_node(NodeOp::number, nullptr, nullptr, 1.0);
    kind_ = Kind::constant;
    text_ = "1";
}

PrescribedCurvature PrescribedCurvature::constant(double value) {
    PrescribedCurvature h;
    h.root_ = make_node(NodeOp::number, nullptr, nullptr, value);
    h.kind_ = Kind::constant;
    h.text_ = std::to_string(value);
    return h;
}

PrescribedCurvature PrescribedCurvature::expression(const std::string& text) {
    Parser parser(text);
    PrescribedCurvature h;
    h.root_ = parser.parse();
    if (!parser.uses_xy && !parser.uses_r2 && !parser.uses_z) {
        h.kind_ = Kind::constant;
    } else if (!parser.uses_xy) {
        h.kind_ = Kind::rotationally_symmetric;
    } else {
        h.kind_ = Kind::general;
    }
    h.text_ = text;
    return h;
}

double PrescribedCurvature::operator()(const LVec3& p) const { return eval_node(*root_, p); }

}  // namespace conemc
