#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quadrisig/polynomial.hpp"
#include "quadrisig/signature_core.hpp"

namespace quadrisig {

/// Default cap for the exponential backtracking oracles.
inline constexpr std::int64_t kOracleSizeGuard = 12;

enum class StepKind : std::uint8_t { Fixed, Q1, Q2 };

/// First-row description of the sparse circulant whose determinant gives
/// 1 - phi: d_1 = 1, d_{q1+1} = -x, d_{q2+1} = -y, zero elsewhere.
struct CirculantSpec {
    std::int64_t p;
    std::int64_t q1;
    std::int64_t q2;

    enum class RowEntry : std::uint8_t { Zero, One, MinusX, MinusY };

    std::vector<RowEntry> first_row() const;
    /// Matrix entry at row i, column j (1-based); row i is the first row
    /// rotated right by i-1.
    RowEntry entry(std::int64_t i, std::int64_t j) const;
};

/// Requires 1 <= q1 < q2 < p (step labels must be distinct and nonzero).
CirculantSpec circulant_spec(const GroupParams& params);

/// A cyclically ordered list of points of [p]; sigma(points[i]) = points[i+1],
/// wrapping at the end.
struct Cycle {
    std::vector<std::int64_t> points;

    bool operator==(const Cycle&) const = default;
};

/// Permutation of [p] = {1..p} whose every step sigma(j)-j is 0, q1, or q2
/// mod p, with its nontrivial cycles (each started at its minimal point).
struct SteppedPermutation {
    std::int64_t p, q1, q2;
    std::vector<std::int64_t> image;  // 1-based; image[0] unused
    std::vector<StepKind> step;       // 1-based label per index
    std::vector<Cycle> cycles;        // nontrivial cycles, by minimal point
    std::int64_t r = 0;               // number of q1-steps
    std::int64_t s = 0;               // number of q2-steps

    /// (-1)^(p - #cycles), fixed points included in the cycle count.
    int sign() const;

    bool operator==(const SteppedPermutation& o) const { return image == o.image; }
};

/// Builds and validates a stepped permutation from its one-line images.
SteppedPermutation make_stepped_permutation(std::int64_t p, std::int64_t q1, std::int64_t q2,
                                            const std::vector<std::int64_t>& image_one_based);

/// Builds from nontrivial cycles (all other points fixed).
SteppedPermutation make_stepped_permutation(std::int64_t p, std::int64_t q1, std::int64_t q2,
                                            const std::vector<Cycle>& cycles);

/// All of T(r,s): permutations with r q1-steps, s q2-steps, rest fixed.
/// Deterministic order (depth-first over indices, step choice 0 < q1 < q2).
std::vector<SteppedPermutation> enumerate_T(const GroupParams& params, std::int64_t r,
                                            std::int64_t s, std::int64_t max_p = kOracleSizeGuard);

/// 1 - det(circulant) via the signed permutation sum over stepped
/// permutations; must agree with expand().
SparseExactPolynomial det_via_permutations(const GroupParams& params,
                                           std::int64_t max_p = kOracleSizeGuard);

/// Per-cycle statistics and the cycle-structure lemma checks.
struct CycleStats {
    struct PerCycle {
        Cycle cycle;
        std::int64_t r_i, s_i, l_i;
    };
    std::vector<PerCycle> cycles;
    std::int64_t k;        // number of nontrivial cycles
    std::int64_t r, s, l;
    std::int64_t gcd_rsl;
    int sign;
    bool lemma_ok;                      // all structure assertions held
    std::vector<std::string> violations;
};

CycleStats cycle_stats(const SteppedPermutation& sigma);

/// True iff all points are congruent mod gcd(p,m) and the clockwise
/// traversal of [p] by m-steps from points[0] meets them in order.
/// Throws if the sequence length is outside [3, lcm(m,p)/m].
bool is_m_ordered(const std::vector<std::int64_t>& points, std::int64_t m, std::int64_t p);

/// The d/e points, matching U, and V/W sets of a cycle with at least one
/// q2-step. Lists follow traversal order along the q1-orbit.
struct CycleGeometry {
    Cycle cycle;  // rotated so the start is the image of a q2-step
    std::vector<std::int64_t> d_points;
    std::vector<std::int64_t> e_points;
    std::vector<std::int64_t> matching;  // matching[j] = U(j+1), 1-based
    std::vector<std::vector<std::int64_t>> v_sets;
    std::vector<std::vector<std::int64_t>> w_sets;
};

CycleGeometry cycle_geometry(const Cycle& cycle, const GroupParams& params);

/// Greedy staircase from (0,0) to (r,s): x-step iff s*x <= r*y (ties to x),
/// subject to the step budgets. Word entries map x-steps to Q1.
struct LatticePath {
    std::vector<std::pair<std::int64_t, std::int64_t>> vertices;
    std::vector<StepKind> word;
};

LatticePath lattice_path(std::int64_t r, std::int64_t s);

/// The constructive witness: k = gcd(r,s,l) cycles, each following the
/// lattice-path word for (r/k, s/k), started at 1 + (j-1)(q2 - q1).
/// Throws ParamError("not in support") when p does not divide r q1 + s q2.
SteppedPermutation canonical_element(const GroupParams& params, std::int64_t r, std::int64_t s);

}  // namespace quadrisig
