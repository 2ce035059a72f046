#pragma once

#include <functional>

#include "bajra/interval.hpp"

namespace bajra {

// A real function on an open interval with derivatives through order 4
// available pointwise.  Immutable value type: combinators return new objects
// and never mutate their inputs.  The evaluator receives (order, x) with
// order in 0..4; all derivatives are exact (closed form or algebraic
// recursion), never finite differences.
class C4Function {
public:
    using Evaluator = std::function<double(int, double)>;

    C4Function(Interval domain, Evaluator ev);

    double eval(int order, double x) const;
    double operator()(double x) const { return eval(0, x); }

    const Interval& domain() const noexcept { return domain_; }

    // Same function on a narrower domain.  sub must lie inside domain().
    C4Function restricted(const Interval& sub) const;

private:
    Interval domain_;
    Evaluator ev_;
};

// Pointwise combinators.  Domains intersect; DomainEmpty if disjoint.
C4Function constant(double c, const Interval& domain);
C4Function affine(double alpha, double beta, const C4Function& f);  // alpha*f + beta
C4Function product(const C4Function& f, const C4Function& g);
C4Function sum(const C4Function& f, const C4Function& g);

// f/g via d^k(f) = d^k(num) resolved from Leibniz on num = f*g.  The caller
// guarantees g has no zero on the common domain; a zero surfaces as inf/nan
// in the values, not as an exception.
C4Function quotient(const C4Function& f, const C4Function& g);

// outer(inner(x)) by the chain rule through order 4.  Values of inner must
// stay inside outer's domain; violations throw OutOfDomain at eval time.
C4Function compose(const C4Function& outer, const C4Function& inner);

}  // namespace bajra
