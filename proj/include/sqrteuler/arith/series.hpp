#pragma once

#include "sqrteuler/arith/polynomial.hpp"

namespace se::arith {

// Truncated power-series operations on polynomials. Degree-0 variables are
// treated as coefficients, so "constant term" means the weighted-degree-0 part.

// 1/f up to `cap`; the degree-0 part of f must be a nonzero rational.
Polynomial series_inverse(const Polynomial& f, int cap);

// The unique g with g(0) = 1 and g^2 = f up to `cap`; needs f(0) = 1.
Polynomial series_sqrt(const Polynomial& f, int cap);

// exp(f) for f without degree-0 part.
Polynomial series_exp(const Polynomial& f, int cap);

// log(f) for f with f(0) = 1.
Polynomial series_log(const Polynomial& f, int cap);

}  // namespace se::arith
