#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quadrisig/numeric.hpp"
#include "quadrisig/signature_core.hpp"

namespace quadrisig {

/// Per-weight support counts N_l for 1 <= l <= max(q1,q2), with the exact
/// inequality checks |N_l - l p/(q1 q2)| <= 1 (1 <= l <= q1) and
/// |N_l - (q2-l) p/(q2(q2-q1))| <= 1 (q1 < l <= q2).
struct WeightProfile {
    GroupParams params;
    std::vector<std::int64_t> counts;  // counts[l], index 0 unused
    std::int64_t n_total = 0;
    std::int64_t n_even = 0;  // even-weight terms
    std::int64_t n_odd = 0;
    bool bounds_ok = true;
    std::vector<std::string> violations;
};

/// Requires 1 <= q1 <= q2 < p, gcd(p,q1,q2) = 1 and gcd(q1,q2) = 1
/// (the inequalities fail without coprime exponents). O(p).
WeightProfile weight_profile(const GroupParams& params);

enum class Parity : std::uint8_t { Odd, Even };

inline Parity parity_of(std::int64_t p) { return is_odd(p) ? Parity::Odd : Parity::Even; }

/// Closed-form limit of N+/N as p -> infinity, by parity case; the parity
/// of p matters only for the Indefinite form with q1 even and q2 odd.
/// Requires 1 <= q1 <= q2 and gcd(q1,q2) = 1 (so q1 = q2 only as (1,1)).
Rat limit_ratio(std::int64_t q1, std::int64_t q2, Form form, Parity p_parity);

struct RatioRow {
    std::int64_t p = 0;
    bool skipped = false;
    std::string note;
    SignaturePair sig;
    Rat empirical;
    Rat limit;
    Rat abs_err;
    Rat n_half_gap;  // |N - p/2|
};

struct RatioReport {
    std::int64_t q1, q2;
    Form form;
    std::vector<RatioRow> rows;  // sorted by p
};

/// Empirical-vs-limit sweep over p_list using the O(p) counting path.
/// Rows with gcd(p,q1,q2) != 1 are emitted skipped with a note.
RatioReport convergence_table(std::int64_t q1, std::int64_t q2, Form form,
                              std::vector<std::int64_t> p_list, int threads = 1);

}  // namespace quadrisig
