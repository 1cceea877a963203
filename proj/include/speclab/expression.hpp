#pragma once

#include "speclab/jet.hpp"

#include <memory>
#include <string>

namespace speclab {

/// Arithmetic expression over chart coordinates, evaluated on jets so the
/// result carries exact first and second derivatives.
///
/// Grammar: numbers, `pi`, `e`, the variables `x1`/`x2` (aliases `x`/`y`,
/// `u`/`v`), binary `+ - * / ^` (`^` right-associative, binds tighter than
/// unary minus), unary `-`, parentheses, and the functions
/// `sin cos sinh cosh exp log sqrt`.
class Expression {
public:
    struct Node;

    static Expression parse(const std::string& text);

    Jet evaluate(const JetPoint& xi) const;
    double evaluate(double x1, double x2 = 0.0) const;

    const std::string& text() const noexcept { return text_; }

    /// Highest variable index referenced plus one (0 for constants).
    int arity() const noexcept { return arity_; }

private:
    std::string text_;
    std::shared_ptr<const Node> root_;
    int arity_ = 0;
};

}  // namespace speclab
