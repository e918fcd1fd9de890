#pragma once

#include <cstdint>
#include <vector>

#include "quadrisig/numeric.hpp"
#include "quadrisig/polynomial.hpp"

namespace quadrisig {

/// Dense univariate polynomial over Z, coefficient of t^i at index i.
/// Normalized: no trailing zero coefficients (zero polynomial is empty).
struct IntPoly {
    std::vector<Int> coeffs;

    std::int64_t degree() const { return static_cast<std::int64_t>(coeffs.size()) - 1; }
    bool is_zero() const { return coeffs.empty(); }
    void normalize();

    bool operator==(const IntPoly&) const = default;
};

IntPoly intpoly_mul(const IntPoly& a, const IntPoly& b);

/// Exact division; throws InternalError if the division leaves a remainder.
IntPoly intpoly_div_exact(const IntPoly& num, const IntPoly& den);

/// The p-th cyclotomic polynomial, by iterated exact division of t^p - 1
/// by the cyclotomic polynomials of the proper divisors of p.
IntPoly cyclotomic_polynomial(std::int64_t p);

/// Element of Z[x,y][t] / (t^p - 1): slot j holds the coefficient of t^j.
class CyclotomicElement {
public:
    explicit CyclotomicElement(std::int64_t p);

    std::int64_t order() const { return static_cast<std::int64_t>(slots_.size()); }
    const SparseExactPolynomial& slot(std::int64_t j) const { return slots_[j]; }

    static CyclotomicElement one(std::int64_t p);

    /// this *= (1 - x t^a - y t^b), exponents wrapping mod p.
    void multiply_trinomial(std::int64_t a, std::int64_t b);

    /// Reduces mod the p-th cyclotomic polynomial and returns the t-constant
    /// value. Throws InternalError("non-constant residue") if the residue has
    /// positive degree in t.
    SparseExactPolynomial reduce_to_constant() const;

private:
    std::vector<SparseExactPolynomial> slots_;
};

}  // namespace quadrisig
