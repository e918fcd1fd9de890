#include "quadrisig/cyclotomic.hpp"

namespace quadrisig {

void IntPoly::normalize() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

IntPoly intpoly_mul(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    IntPoly out;
    out.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    }
    out.normalize();
    return out;
}

IntPoly intpoly_div_exact(const IntPoly& num, const IntPoly& den) {
    if (den.is_zero()) throw InternalError("division by zero polynomial");
    IntPoly rem = num;
    rem.normalize();
    const std::int64_t dd = den.degree();
    if (rem.degree() < dd) {
        if (!rem.is_zero()) throw InternalError("inexact polynomial division");
        return {};
    }
    IntPoly quot;
    quot.coeffs.assign(rem.degree() - dd + 1, Int(0));
    const Int& lead = den.coeffs.back();
    for (std::int64_t d = rem.degree(); d >= dd; --d) {
        Int& top = rem.coeffs[d];
        if (top == 0) continue;
        if (top % lead != 0) throw InternalError("inexact polynomial division");
        Int q = top / lead;
        for (std::int64_t i = 0; i <= dd; ++i)
            rem.coeffs[d - dd + i] -= q * den.coeffs[i];
        quot.coeffs[d - dd] = std::move(q);
    }
    rem.normalize();
    if (!rem.is_zero()) throw InternalError("inexact polynomial division");
    quot.normalize();
    return quot;
}

IntPoly cyclotomic_polynomial(std::int64_t p) {
    if (p < 1) throw ParamError("cyclotomic_polynomial requires p >= 1");
    // t^p - 1
    IntPoly num;
    num.coeffs.assign(static_cast<std::size_t>(p) + 1, Int(0));
    num.coeffs[0] = -1;
    num.coeffs[static_cast<std::size_t>(p)] = 1;
    for (std::int64_t d = 1; d < p; ++d) {
        if (p % d != 0) continue;
        num = intpoly_div_exact(num, cyclotomic_polynomial(d));
    }
    return num;
}

CyclotomicElement::CyclotomicElement(std::int64_t p) {
    if (p < 1) throw ParamError("ring order must be >= 1");
    slots_.resize(static_cast<std::size_t>(p));
}

CyclotomicElement CyclotomicElement::one(std::int64_t p) {
    CyclotomicElement e(p);
    e.slots_[0] = SparseExactPolynomial::constant(1);
    return e;
}

void CyclotomicElement::multiply_trinomial(std::int64_t a, std::int64_t b) {
    const std::int64_t p = order();
    a = ((a % p) + p) % p;
    b = ((b % p) + p) % p;
    std::vector<SparseExactPolynomial> next(slots_.size());
    static const Int kMinusOne(-1);
    for (std::int64_t j = 0; j < p; ++j) {
        SparseExactPolynomial& dst = next[static_cast<std::size_t>(j)];
        dst = slots_[static_cast<std::size_t>(j)];
        dst.accumulate(slots_[static_cast<std::size_t>((j - a + p) % p)], kMinusOne, 1, 0);
        dst.accumulate(slots_[static_cast<std::size_t>((j - b + p) % p)], kMinusOne, 0, 1);
    }
    slots_ = std::move(next);
}

SparseExactPolynomial CyclotomicElement::reduce_to_constant() const {
    const std::int64_t p = order();
    const IntPoly phi = cyclotomic_polynomial(p);
    const std::int64_t dd = phi.degree();

    std::vector<SparseExactPolynomial> work = slots_;
    for (std::int64_t d = p - 1; d >= dd; --d) {
        SparseExactPolynomial lead = std::move(work[static_cast<std::size_t>(d)]);
        work[static_cast<std::size_t>(d)] = {};
        if (lead.empty()) continue;
        // subtract lead * t^(d-dd) * phi; phi is monic so t^d cancels exactly
        for (std::int64_t i = 0; i < dd; ++i) {
            const Int& c = phi.coeffs[static_cast<std::size_t>(i)];
            if (c == 0) continue;
            work[static_cast<std::size_t>(d - dd + i)].accumulate(lead, -c);
        }
    }
    for (std::int64_t j = 1; j < dd; ++j) {
        if (!work[static_cast<std::size_t>(j)].empty())
            throw InternalError("non-constant residue");
    }
    return work[0];
}

}  // namespace quadrisig
