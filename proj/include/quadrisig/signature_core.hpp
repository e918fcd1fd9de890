#pragma once

#include <cstdint>
#include <vector>

#include "quadrisig/numeric.hpp"

namespace quadrisig {

/// Which Hermitian form the source hyperquadric carries.
enum class Form : std::uint8_t {
    Definite,    // U(2), source sphere Q(2,0)
    Indefinite,  // U(1,1), source Q(1,1)
};

const char* form_name(Form form);  // "u2" / "u11"

/// Cyclic diagonal group parameters: the order-p group generated by
/// diag(w^q1, w^q2) with w a primitive p-th root of unity.
struct GroupParams {
    std::int64_t p = 1;
    std::int64_t q1 = 0;
    std::int64_t q2 = 0;
    Form form = Form::Definite;

    bool operator==(const GroupParams&) const = default;
};

/// Throws ParamError unless p >= 1, 0 <= q1,q2 < p and gcd(p,q1,q2) = 1.
void validate(const GroupParams& params);

/// One monomial x^r y^s of the invariant polynomial's support, with its
/// weight l = (r q1 + s q2)/p and the sign predicted by the sign law.
struct SupportEntry {
    std::int64_t r;
    std::int64_t s;
    std::int64_t l;
    int sign;  // +1 or -1

    bool operator==(const SupportEntry&) const = default;
};

struct SignaturePair {
    std::int64_t n_plus = 0;
    std::int64_t n_minus = 0;

    std::int64_t total() const { return n_plus + n_minus; }
    bool operator==(const SignaturePair&) const = default;
};

/// Result of canonicalize together with how the representative was reached.
/// `swapped` can only be true for the Definite form, where the coordinate
/// swap (q1,q2) -> (q2,q1) is admitted; it mirrors the polynomial in x/y.
struct CanonicalParams {
    GroupParams params;
    bool swapped = false;
};

/// Minimal representative of the same group: lexicographic minimum of
/// (k q1 mod p, k q2 mod p) over units k mod p; for the Definite form the
/// coordinate swap is admitted before minimization.
GroupParams canonicalize(std::int64_t p, std::int64_t q1, std::int64_t q2, Form form);
CanonicalParams canonicalize_ex(std::int64_t p, std::int64_t q1, std::int64_t q2, Form form);

/// Streams the support set {(r,s): r,s >= 0, 0 < r+s <= p, p | (r q1 + s q2)}
/// ordered by (l, r, s), in O(p) time. fn receives (r, s, l).
template <typename F>
void for_each_support(const GroupParams& params, F&& fn);

/// Materialized support with predicted signs, sorted by (l, r).
std::vector<SupportEntry> support(const GroupParams& params);

/// Sign law. Definite: +1 iff gcd(r,s,l) is odd.
/// Indefinite: +1 iff s + gcd(r,s,l) is odd. Throws if (r,s) is outside
/// the support of params.
int classify_sign(const GroupParams& params, std::int64_t r, std::int64_t s);

/// Counts signs over the support without expanding the polynomial. O(p).
SignaturePair signature(const GroupParams& params);

/// Closed form for the order-p subgroup of SU(1,1): (2, p/2) for even p,
/// (1, (p+1)/2) for odd p. Requires p >= 2.
SignaturePair su11_signature(std::int64_t p);

/// N+ / (N+ + N-) as an exact rational.
Rat positivity_ratio(const GroupParams& params);

// ---------------------------------------------------------------------------
// implementation of the support walker (header-only so counting loops inline)

namespace detail {

// Smallest non-negative r on the line r*q1 + s*q2 = L, r congruent to the
// unique admissible class mod q2/g; returns false if the line is empty.
struct LineWalk {
    std::int64_t r0, s0;     // first solution (minimal r, maximal s)
    std::int64_t rstep, sstep;  // consecutive solutions differ by (+rstep, -sstep)
    std::int64_t count;      // number of admissible solutions
};

bool solve_line(std::int64_t p, std::int64_t q1, std::int64_t q2, std::int64_t g12,
                std::int64_t u_mod, std::int64_t l, LineWalk& out);

}  // namespace detail

template <typename F>
void for_each_support(const GroupParams& params, F&& fn) {
    validate(params);
    const std::int64_t p = params.p;
    const std::int64_t q1 = params.q1;
    const std::int64_t q2 = params.q2;

    if (q1 == 0 && q2 == 0) {  // p == 1, trivial group
        fn(std::int64_t{0}, std::int64_t{1}, std::int64_t{0});
        fn(std::int64_t{1}, std::int64_t{0}, std::int64_t{0});
        return;
    }
    if (q1 == 0) {  // weight-0 line of pure-x terms, then the single y^p term
        for (std::int64_t r = 1; r <= p; ++r) fn(r, std::int64_t{0}, std::int64_t{0});
        fn(std::int64_t{0}, p, q2);
        return;
    }
    if (q2 == 0) {
        for (std::int64_t s = 1; s <= p; ++s) fn(std::int64_t{0}, s, std::int64_t{0});
        fn(p, std::int64_t{0}, q1);
        return;
    }

    const std::int64_t g12 = std::gcd(q1, q2);
    // Bezout coefficient u with u*(q1/g) == 1 (mod q2/g), reduced.
    std::int64_t u_mod = 0;
    {
        const std::int64_t a = q1 / g12, m = q2 / g12;
        // extended Euclid for a^{-1} mod m (m == 1 -> inverse 0)
        std::int64_t old_r = a, rr = m, old_s = 1, ss = 0;
        while (rr != 0) {
            const std::int64_t q = old_r / rr;
            std::int64_t tmp = old_r - q * rr;
            old_r = rr;
            rr = tmp;
            tmp = old_s - q * ss;
            old_s = ss;
            ss = tmp;
        }
        u_mod = m == 0 ? 0 : ((old_s % m) + m) % m;
    }

    const std::int64_t lmax = std::max(q1, q2);
    for (std::int64_t l = 1; l <= lmax; ++l) {
        detail::LineWalk walk;
        if (!detail::solve_line(p, q1, q2, g12, u_mod, l, walk)) continue;
        std::int64_t r = walk.r0, s = walk.s0;
        for (std::int64_t i = 0; i < walk.count; ++i) {
            fn(r, s, l);
            r += walk.rstep;
            s -= walk.sstep;
        }
    }
}

}  // namespace quadrisig
