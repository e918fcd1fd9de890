#include "quadrisig/expansion.hpp"

#include <algorithm>
#include <cmath>

#include "quadrisig/cyclotomic.hpp"

namespace quadrisig {

SparseExactPolynomial expand(const GroupParams& params) {
    validate(params);
    const std::int64_t p = params.p;

    CyclotomicElement product = CyclotomicElement::one(p);
    for (std::int64_t j = 0; j < p; ++j)
        product.multiply_trinomial((params.q1 * j) % p, (params.q2 * j) % p);

    SparseExactPolynomial det = product.reduce_to_constant();

    // phi = 1 - det; the determinant has constant term 1, so phi has none.
    SparseExactPolynomial phi;
    phi.add_term(0, 0, 1);
    phi.accumulate(det, Int(-1));
    if (phi.coefficient(0, 0) != 0) throw InternalError("nonzero constant term in expansion");

    if (params.form == Form::Indefinite) phi.flip_y();
    return phi;
}

// ---------------------------------------------------------------------------
// modular backend

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128(a) * b) % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
    u64 acc = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1) acc = mulmod(acc, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return acc;
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<u64> primes_one_mod_p(std::int64_t p, int count) {
    // descending from just below 2^62 keeps mulmod comfortably in 128 bits
    std::vector<u64> out;
    const u64 top = (u64(1) << 62);
    for (u64 k = (top - 2) / static_cast<u64>(p); k >= 1 && static_cast<int>(out.size()) < count; --k) {
        const u64 cand = k * static_cast<u64>(p) + 1;
        if (is_prime_u64(cand)) out.push_back(cand);
    }
    return out;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
    std::vector<std::int64_t> fs;
    for (std::int64_t f = 2; f * f <= n; ++f) {
        if (n % f == 0) {
            fs.push_back(f);
            while (n % f == 0) n /= f;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

u64 element_of_order(std::int64_t p, u64 ell) {
    if (p == 1) return 1;
    const std::vector<std::int64_t> fs = prime_factors(p);
    for (u64 g = 2; g < ell; ++g) {
        const u64 eta = powmod(g, (ell - 1) / static_cast<u64>(p), ell);
        if (eta == 1) continue;
        bool exact = true;
        for (std::int64_t f : fs) {
            if (powmod(eta, static_cast<u64>(p / f), ell) == 1) {
                exact = false;
                break;
            }
        }
        if (exact) return eta;
    }
    throw InternalError("no element of the requested order (non-prime modulus?)");
}

// Definite-form product over F_ell, dense grid indexed r*(p+1)+s.
std::vector<u64> expand_mod_prime(const GroupParams& params, u64 ell) {
    const std::int64_t p = params.p;
    const std::size_t n = static_cast<std::size_t>(p) + 1;
    const u64 eta = element_of_order(p, ell);

    std::vector<u64> eta_pow(static_cast<std::size_t>(p));
    eta_pow[0] = 1 % ell;
    for (std::int64_t i = 1; i < p; ++i)
        eta_pow[static_cast<std::size_t>(i)] = mulmod(eta_pow[static_cast<std::size_t>(i - 1)], eta, ell);

    std::vector<u64> grid(n * n, 0);
    grid[0] = 1 % ell;
    for (std::int64_t j = 0; j < p; ++j) {
        const u64 a = eta_pow[static_cast<std::size_t>((params.q1 * j) % p)];
        const u64 b = eta_pow[static_cast<std::size_t>((params.q2 * j) % p)];
        for (std::int64_t r = std::min<std::int64_t>(j + 1, p); r >= 0; --r) {
            for (std::int64_t s = std::min<std::int64_t>(j + 1 - r, p - r); s >= 0; --s) {
                u64 v = grid[static_cast<std::size_t>(r) * n + static_cast<std::size_t>(s)];
                if (r > 0) {
                    const u64 left = grid[static_cast<std::size_t>(r - 1) * n + static_cast<std::size_t>(s)];
                    v = (v + ell - mulmod(a, left, ell)) % ell;
                }
                if (s > 0) {
                    const u64 down = grid[static_cast<std::size_t>(r) * n + static_cast<std::size_t>(s - 1)];
                    v = (v + ell - mulmod(b, down, ell)) % ell;
                }
                grid[static_cast<std::size_t>(r) * n + static_cast<std::size_t>(s)] = v;
            }
        }
    }
    // phi = 1 - det
    for (u64& v : grid) v = (ell - v) % ell;
    grid[0] = (grid[0] + 1) % ell;
    return grid;
}

Int crt_symmetric(const std::vector<u64>& residues, const std::vector<u64>& moduli, std::size_t m) {
    Int modulus = 1;
    Int x = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const u64 ell = moduli[i];
        // x' = x + modulus * t with t = (v - x) / modulus mod ell
        const u64 x_mod = static_cast<u64>(((x % ell) + ell) % ell);
        u64 diff = (residues[i] + ell - x_mod) % ell;
        const u64 mod_inv = powmod(static_cast<u64>(modulus % ell), ell - 2, ell);
        diff = mulmod(diff, mod_inv, ell);
        x += modulus * diff;
        modulus *= ell;
    }
    if (x * 2 > modulus) x -= modulus;
    return x;
}

}  // namespace

SparseExactPolynomial expand_modular(const GroupParams& params, int prime_pool) {
    validate(params);
    if (prime_pool < 1) throw ParamError("prime pool must be >= 1");
    const std::int64_t p = params.p;
    const std::size_t n = static_cast<std::size_t>(p) + 1;

    const std::vector<u64> pool = primes_one_mod_p(p, prime_pool);
    if (pool.empty()) throw ParamError("insufficient primes");

    // binomial table for the coefficient bound B(r,s) = C(p,r) C(p-r,s)
    std::vector<std::vector<Int>> binom(n, std::vector<Int>(n, Int(0)));
    for (std::size_t i = 0; i < n; ++i) {
        binom[i][0] = 1;
        for (std::size_t j = 1; j <= i; ++j)
            binom[i][j] = binom[i - 1][j - 1] + (j <= i - 1 ? binom[i - 1][j] : Int(0));
    }

    std::vector<std::vector<u64>> grids;
    grids.reserve(pool.size());

    auto ensure_grids = [&](std::size_t m) {
        while (grids.size() < m) grids.push_back(expand_mod_prime(params, pool[grids.size()]));
    };
    ensure_grids(1);

    SparseExactPolynomial phi;
    std::vector<u64> residues(pool.size());
    for (std::int64_t r = 0; r <= p; ++r) {
        for (std::int64_t s = 0; s <= p - r; ++s) {
            const Int bound = 2 * binom[static_cast<std::size_t>(p)][static_cast<std::size_t>(r)] *
                              binom[static_cast<std::size_t>(p - r)][static_cast<std::size_t>(s)];
            Int prod = 1;
            std::size_t m = 0;
            while (prod <= bound) {
                if (m == pool.size()) throw ParamError("insufficient primes");
                prod *= pool[m];
                ++m;
            }
            ensure_grids(m);
            bool any = false;
            for (std::size_t i = 0; i < m; ++i) {
                residues[i] = grids[i][static_cast<std::size_t>(r) * n + static_cast<std::size_t>(s)];
                any = any || residues[i] != 0;
            }
            if (!any) continue;
            Int c = crt_symmetric(residues, pool, m);
            if (c != 0) phi.add_term(r, s, c);
        }
    }

    if (params.form == Form::Indefinite) phi.flip_y();
    return phi;
}

CRMap cr_map(const GroupParams& params) {
    const SparseExactPolynomial phi = expand(params);
    CRMap map;
    for (const auto& t : phi.terms()) {
        const double mag = std::sqrt(std::abs(t.coeff.convert_to<double>()));
        if (t.coeff > 0)
            map.f_terms.push_back({mag, t.r, t.s});
        else
            map.g_terms.push_back({mag, t.r, t.s});
    }
    return map;
}

}  // namespace quadrisig
