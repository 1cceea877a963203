#include "speclab/expression.hpp"

#include "speclab/errors.hpp"

#include <cctype>
#include <cstdlib>
#include <numbers>
#include <vector>

namespace speclab {

struct Expression::Node {
    enum class Op { number, variable, neg, add, sub, mul, div, pow, call };
    enum class Fn { sin, cos, sinh, cosh, exp, log, sqrt };

    Op op = Op::number;
    double value = 0.0;
    int index = 0;
    Fn fn = Fn::sin;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Op op, NodePtr lhs, NodePtr rhs = nullptr)
{
    auto n = std::make_shared<Node>();
    n->op = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    NodePtr parse()
    {
        auto n = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return n;
    }

    int arity() const { return arity_; }

private:
    [[noreturn]] void fail(const std::string& why) const
    {
        raise(ErrorKind::config, "expression \"" + s_ + "\" at offset " + std::to_string(pos_) + ": " + why);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr()
    {
        auto n = term();
        for (;;) {
            if (accept('+')) n = make(Node::Op::add, n, term());
            else if (accept('-')) n = make(Node::Op::sub, n, term());
            else return n;
        }
    }

    NodePtr term()
    {
        auto n = unary();
        for (;;) {
            if (accept('*')) n = make(Node::Op::mul, n, unary());
            else if (accept('/')) n = make(Node::Op::div, n, unary());
            else return n;
        }
    }

    NodePtr unary()
    {
        if (accept('-')) return make(Node::Op::neg, unary());
        if (accept('+')) return unary();
        return power();
    }

    NodePtr power()
    {
        auto base = primary();
        if (accept('^')) return make(Node::Op::pow, base, unary());
        return base;
    }

    NodePtr primary()
    {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            auto n = expr();
            if (!accept(')')) fail("expected ')'");
            return n;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        fail("unexpected '" + std::string(1, c) + "'");
    }

    NodePtr number()
    {
        const char* begin = s_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) fail("malformed number");
        pos_ += static_cast<std::size_t>(end - begin);
        auto n = std::make_shared<Node>();
        n->value = v;
        return n;
    }

    NodePtr identifier()
    {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        const std::string name = s_.substr(start, pos_ - start);

        auto n = std::make_shared<Node>();
        if (name == "pi") {
            n->value = std::numbers::pi;
            return n;
        }
        if (name == "e") {
            n->value = std::numbers::e;
            return n;
        }
        if (name == "x1" || name == "x" || name == "u") return variable(0);
        if (name == "x2" || name == "y" || name == "v") return variable(1);

        static const std::pair<const char*, Node::Fn> functions[] = {
            {"sin", Node::Fn::sin},   {"cos", Node::Fn::cos}, {"sinh", Node::Fn::sinh}, {"cosh", Node::Fn::cosh},
            {"exp", Node::Fn::exp},   {"log", Node::Fn::log}, {"sqrt", Node::Fn::sqrt},
        };
        for (const auto& [fname, fn] : functions) {
            if (name == fname) {
                if (!accept('(')) fail("expected '(' after " + name);
                n->op = Node::Op::call;
                n->fn = fn;
                n->lhs = expr();
                if (!accept(')')) fail("expected ')'");
                return n;
            }
        }
        fail("unknown identifier '" + name + "'");
    }

    NodePtr variable(int index)
    {
        auto n = std::make_shared<Node>();
        n->op = Node::Op::variable;
        n->index = index;
        arity_ = std::max(arity_, index + 1);
        return n;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
    int arity_ = 0;
};

Jet eval(const Node& n, const JetPoint& xi)
{
    switch (n.op) {
    case Node::Op::number: return Jet(n.value);
    case Node::Op::variable: return xi[static_cast<std::size_t>(n.index)];
    case Node::Op::neg: return -eval(*n.lhs, xi);
    case Node::Op::add: return eval(*n.lhs, xi) + eval(*n.rhs, xi);
    case Node::Op::sub: return eval(*n.lhs, xi) - eval(*n.rhs, xi);
    case Node::Op::mul: return eval(*n.lhs, xi) * eval(*n.rhs, xi);
    case Node::Op::div: return eval(*n.lhs, xi) / eval(*n.rhs, xi);
    case Node::Op::pow: return pow(eval(*n.lhs, xi), eval(*n.rhs, xi));
    case Node::Op::call: {
        const Jet a = eval(*n.lhs, xi);
        switch (n.fn) {
        case Node::Fn::sin: return sin(a);
        case Node::Fn::cos: return cos(a);
        case Node::Fn::sinh: return sinh(a);
        case Node::Fn::cosh: return cosh(a);
        case Node::Fn::exp: return exp(a);
        case Node::Fn::log: return log(a);
        case Node::Fn::sqrt: return sqrt(a);
        }
    }
    }
    return Jet();
}

}  // namespace

Expression Expression::parse(const std::string& text)
{
    Parser p(text);
    Expression e;
    e.root_ = p.parse();
    e.text_ = text;
    e.arity_ = p.arity();
    return e;
}

Jet Expression::evaluate(const JetPoint& xi) const { return eval(*root_, xi); }

double Expression::evaluate(double x1, double x2) const
{
    return eval(*root_, {Jet(x1), Jet(x2)}).v;
}

}  // namespace speclab
