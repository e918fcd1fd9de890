#pragma once

#include <cstdint>
#include <vector>

#include "quadrisig/numeric.hpp"

namespace quadrisig {

/// Sparse bivariate polynomial over Z with arbitrary-precision coefficients.
/// Terms are kept sorted by (r, s) and never store a zero coefficient.
class SparseExactPolynomial {
public:
    struct Term {
        std::int64_t r;
        std::int64_t s;
        Int coeff;
    };

    SparseExactPolynomial() = default;

    static SparseExactPolynomial constant(Int c);

    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Coefficient of x^r y^s (zero if the monomial is absent).
    Int coefficient(std::int64_t r, std::int64_t s) const;

    /// Adds c * x^r y^s, erasing the term if it cancels.
    void add_term(std::int64_t r, std::int64_t s, const Int& c);

    /// this += scale * x^dr * y^ds * src. Linear-time ordered merge.
    void accumulate(const SparseExactPolynomial& src, const Int& scale,
                    std::int64_t dr = 0, std::int64_t ds = 0);

    /// Applies the substitution y -> -y (negates odd-s coefficients).
    void flip_y();

    std::int64_t max_total_degree() const;

    Rat evaluate(const Rat& x, const Rat& y) const;

    bool operator==(const SparseExactPolynomial& other) const;

private:
    std::vector<Term> terms_;
};

/// Exact evaluation of a polynomial at a rational point.
Rat evaluate(const SparseExactPolynomial& poly, const Rat& x, const Rat& y);

}  // namespace quadrisig
