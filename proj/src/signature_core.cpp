#include "quadrisig/signature_core.hpp"

#include <algorithm>

namespace quadrisig {

const char* form_name(Form form) {
    return form == Form::Definite ? "u2" : "u11";
}

void validate(const GroupParams& params) {
    if (params.p < 1) throw ParamError("group order p must be >= 1");
    if (params.q1 < 0 || params.q1 >= params.p || params.q2 < 0 || params.q2 >= params.p)
        throw ParamError("exponents must satisfy 0 <= q1, q2 < p");
    if (gcd3(params.p, params.q1, params.q2) != 1)
        throw ParamError("not a faithful order-p parameterization: gcd(p, q1, q2) != 1");
}

namespace detail {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
    // b > 0
    return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

}  // namespace

bool solve_line(std::int64_t p, std::int64_t q1, std::int64_t q2, std::int64_t g12,
                std::int64_t u_mod, std::int64_t l, LineWalk& out) {
    const std::int64_t big = l * p;
    if (big % g12 != 0) return false;
    const std::int64_t lred = big / g12;
    const std::int64_t q1r = q1 / g12;
    const std::int64_t q2r = q2 / g12;

    // minimal non-negative r with r == u * lred (mod q2r)
    std::int64_t r0 = 0;
    if (q2r > 1) {
        r0 = static_cast<std::int64_t>(
            (static_cast<__int128>(u_mod) * (lred % q2r)) % q2r);
    }
    const std::int64_t rem = big - r0 * q1;
    if (rem < 0) return false;
    const std::int64_t s0 = rem / q2;

    // t-range under s >= 0 and r + s <= p
    std::int64_t t_lo = 0;
    std::int64_t t_hi = s0 / q1r;
    const std::int64_t sum0 = r0 + s0;
    const std::int64_t drift = q2r - q1r;  // change of r+s per step
    if (drift > 0) {
        if (sum0 > p) return false;
        t_hi = std::min(t_hi, (p - sum0) / drift);
    } else if (drift < 0) {
        if (sum0 > p) t_lo = std::max(t_lo, ceil_div(sum0 - p, -drift));
    } else {
        if (sum0 > p) return false;
    }
    if (t_lo > t_hi) return false;

    out.r0 = r0 + q2r * t_lo;
    out.s0 = s0 - q1r * t_lo;
    out.rstep = q2r;
    out.sstep = q1r;
    out.count = t_hi - t_lo + 1;
    return true;
}

}  // namespace detail

CanonicalParams canonicalize_ex(std::int64_t p, std::int64_t q1, std::int64_t q2, Form form) {
    GroupParams input{p, q1, q2, form};
    validate(input);
    if (p == 1) return {GroupParams{1, 0, 0, form}, false};

    std::pair<std::int64_t, std::int64_t> best{-1, -1};
    std::pair<std::int64_t, std::int64_t> best_swapped{-1, -1};
    for (std::int64_t k = 1; k < p; ++k) {
        if (std::gcd(k, p) != 1) continue;
        const std::int64_t a = (k * q1) % p;
        const std::int64_t b = (k * q2) % p;
        if (best.first < 0 || std::make_pair(a, b) < best) best = {a, b};
        if (form == Form::Definite &&
            (best_swapped.first < 0 || std::make_pair(b, a) < best_swapped))
            best_swapped = {b, a};
    }
    bool swapped = false;
    if (form == Form::Definite && best_swapped < best) {
        best = best_swapped;
        swapped = true;
    }
    return {GroupParams{p, best.first, best.second, form}, swapped};
}

GroupParams canonicalize(std::int64_t p, std::int64_t q1, std::int64_t q2, Form form) {
    return canonicalize_ex(p, q1, q2, form).params;
}

namespace {

int sign_of(Form form, std::int64_t r, std::int64_t s, std::int64_t l) {
    const std::int64_t g = gcd3(r, s, l);
    const bool positive = form == Form::Definite ? is_odd(g) : is_odd(s + g);
    return positive ? +1 : -1;
}

}  // namespace

std::vector<SupportEntry> support(const GroupParams& params) {
    std::vector<SupportEntry> out;
    for_each_support(params, [&](std::int64_t r, std::int64_t s, std::int64_t l) {
        out.push_back({r, s, l, sign_of(params.form, r, s, l)});
    });
    return out;
}

int classify_sign(const GroupParams& params, std::int64_t r, std::int64_t s) {
    validate(params);
    if (r < 0 || s < 0 || r + s == 0 || r + s > params.p)
        throw ParamError("(r,s) outside support: need 0 < r+s <= p");
    const std::int64_t w = r * params.q1 + s * params.q2;
    if (w % params.p != 0) throw ParamError("(r,s) outside support: p does not divide r*q1 + s*q2");
    return sign_of(params.form, r, s, w / params.p);
}

SignaturePair signature(const GroupParams& params) {
    SignaturePair sig;
    for_each_support(params, [&](std::int64_t r, std::int64_t s, std::int64_t l) {
        if (sign_of(params.form, r, s, l) > 0)
            ++sig.n_plus;
        else
            ++sig.n_minus;
    });
    return sig;
}

SignaturePair su11_signature(std::int64_t p) {
    if (p < 2) throw ParamError("su11_signature requires p >= 2");
    if (p % 2 == 0) return {2, p / 2};
    return {1, (p + 1) / 2};
}

Rat positivity_ratio(const GroupParams& params) {
    const SignaturePair sig = signature(params);
    if (sig.total() == 0) throw InternalError("empty support");
    return Rat(sig.n_plus, sig.total());
}

}  // namespace quadrisig
