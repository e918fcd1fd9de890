#pragma once

#include <cstdint>
#include <vector>

#include "quadrisig/polynomial.hpp"
#include "quadrisig/signature_core.hpp"

namespace quadrisig {

/// Exact expansion of the invariant polynomial for `params`:
///   Definite:   1 - prod_j (1 - x w^(q1 j) - y w^(q2 j))
///   Indefinite: the same product with +y inside each factor,
/// computed in Z[x,y][t]/(t^p - 1) with a final reduction modulo the p-th
/// cyclotomic polynomial. Reference backend, intended for desk-scale p.
SparseExactPolynomial expand(const GroupParams& params);

/// Same value as expand, via expansions over word-size prime fields with
/// an order-p root of unity, recombined by Chinese remaindering against the
/// coefficient bound C(p,r)*C(p-r,s). Throws if the prime pool (of size
/// `prime_pool`) cannot cover the bound.
SparseExactPolynomial expand_modular(const GroupParams& params, int prime_pool = 16);

/// One component of the induced CR map, magnitude * z1^r * z2^s.
struct CRComponent {
    double magnitude;
    std::int64_t r;
    std::int64_t s;
};

/// F (positive part) and G (negative part) of phi = F (+) G, so that
/// ||F||^2 - ||G||^2 reproduces the invariant polynomial.
struct CRMap {
    std::vector<CRComponent> f_terms;
    std::vector<CRComponent> g_terms;
};

CRMap cr_map(const GroupParams& params);

}  // namespace quadrisig
