#include "quadrisig/permutation_oracle.hpp"

#include <algorithm>
#include <unordered_map>

namespace quadrisig {

namespace {

std::int64_t mod1(std::int64_t x, std::int64_t p) {
    // representative in [p] = {1..p}
    return ((x - 1) % p + p) % p + 1;
}

void require_oracle_params(const GroupParams& params) {
    validate(params);
    if (params.q1 < 1 || params.q1 >= params.q2)
        throw ParamError("permutation oracle requires 1 <= q1 < q2 < p");
}

}  // namespace

std::vector<CirculantSpec::RowEntry> CirculantSpec::first_row() const {
    std::vector<RowEntry> row(static_cast<std::size_t>(p), RowEntry::Zero);
    row[0] = RowEntry::One;
    row[static_cast<std::size_t>(q1)] = RowEntry::MinusX;
    row[static_cast<std::size_t>(q2)] = RowEntry::MinusY;
    return row;
}

CirculantSpec::RowEntry CirculantSpec::entry(std::int64_t i, std::int64_t j) const {
    const std::int64_t off = ((j - i) % p + p) % p;
    if (off == 0) return RowEntry::One;
    if (off == q1) return RowEntry::MinusX;
    if (off == q2) return RowEntry::MinusY;
    return RowEntry::Zero;
}

CirculantSpec circulant_spec(const GroupParams& params) {
    require_oracle_params(params);
    return {params.p, params.q1, params.q2};
}

int SteppedPermutation::sign() const {
    const std::int64_t fixed = p - r - s;
    const std::int64_t cycle_count = static_cast<std::int64_t>(cycles.size()) + fixed;
    return is_odd(p - cycle_count) ? -1 : +1;
}

SteppedPermutation make_stepped_permutation(std::int64_t p, std::int64_t q1, std::int64_t q2,
                                            const std::vector<std::int64_t>& image_one_based) {
    if (static_cast<std::int64_t>(image_one_based.size()) != p + 1)
        throw ParamError("image array must have size p+1 (1-based)");
    SteppedPermutation sigma;
    sigma.p = p;
    sigma.q1 = q1;
    sigma.q2 = q2;
    sigma.image = image_one_based;
    sigma.step.assign(static_cast<std::size_t>(p) + 1, StepKind::Fixed);

    std::vector<bool> seen(static_cast<std::size_t>(p) + 1, false);
    for (std::int64_t j = 1; j <= p; ++j) {
        const std::int64_t im = sigma.image[static_cast<std::size_t>(j)];
        if (im < 1 || im > p || seen[static_cast<std::size_t>(im)])
            throw ParamError("images do not form a permutation of [p]");
        seen[static_cast<std::size_t>(im)] = true;
        const std::int64_t d = ((im - j) % p + p) % p;
        if (d == 0) {
            sigma.step[static_cast<std::size_t>(j)] = StepKind::Fixed;
        } else if (d == q1) {
            sigma.step[static_cast<std::size_t>(j)] = StepKind::Q1;
            ++sigma.r;
        } else if (d == q2) {
            sigma.step[static_cast<std::size_t>(j)] = StepKind::Q2;
            ++sigma.s;
        } else {
            throw ParamError("step is not 0, q1, or q2 mod p");
        }
    }

    std::vector<bool> visited(static_cast<std::size_t>(p) + 1, false);
    for (std::int64_t j = 1; j <= p; ++j) {
        if (visited[static_cast<std::size_t>(j)] || sigma.image[static_cast<std::size_t>(j)] == j)
            continue;
        Cycle c;
        std::int64_t x = j;
        do {
            visited[static_cast<std::size_t>(x)] = true;
            c.points.push_back(x);
            x = sigma.image[static_cast<std::size_t>(x)];
        } while (x != j);
        sigma.cycles.push_back(std::move(c));
    }
    return sigma;
}

SteppedPermutation make_stepped_permutation(std::int64_t p, std::int64_t q1, std::int64_t q2,
                                            const std::vector<Cycle>& cycles) {
    std::vector<std::int64_t> image(static_cast<std::size_t>(p) + 1);
    for (std::int64_t j = 0; j <= p; ++j) image[static_cast<std::size_t>(j)] = j;
    for (const Cycle& c : cycles) {
        if (c.points.size() < 2) throw ParamError("cycles must be nontrivial");
        for (std::size_t i = 0; i < c.points.size(); ++i) {
            const std::int64_t from = c.points[i];
            const std::int64_t to = c.points[(i + 1) % c.points.size()];
            if (from < 1 || from > p) throw ParamError("cycle point outside [p]");
            if (image[static_cast<std::size_t>(from)] != from)
                throw ParamError("cycles are not disjoint");
            image[static_cast<std::size_t>(from)] = to;
        }
    }
    return make_stepped_permutation(p, q1, q2, image);
}

namespace {

struct StepSearch {
    std::int64_t p, q1, q2;
    std::vector<std::int64_t> image;  // 1-based, 0 = unassigned
    std::vector<bool> used;

    template <typename Leaf>
    void run(std::int64_t idx, std::int64_t rem_f, std::int64_t rem_r, std::int64_t rem_s,
             Leaf&& leaf) {
        if (idx > p) {
            leaf(*this);
            return;
        }
        const std::int64_t offsets[3] = {0, q1, q2};
        const std::int64_t* budgets[3] = {&rem_f, &rem_r, &rem_s};
        for (int c = 0; c < 3; ++c) {
            if (*budgets[c] == 0) continue;
            const std::int64_t im = mod1(idx + offsets[c], p);
            if (used[static_cast<std::size_t>(im)]) continue;
            used[static_cast<std::size_t>(im)] = true;
            image[static_cast<std::size_t>(idx)] = im;
            run(idx + 1, rem_f - (c == 0), rem_r - (c == 1), rem_s - (c == 2),
                std::forward<Leaf>(leaf));
            used[static_cast<std::size_t>(im)] = false;
        }
        image[static_cast<std::size_t>(idx)] = 0;
    }

    std::int64_t cycle_count() const {
        std::vector<bool> visited(static_cast<std::size_t>(p) + 1, false);
        std::int64_t count = 0;
        for (std::int64_t j = 1; j <= p; ++j) {
            if (visited[static_cast<std::size_t>(j)]) continue;
            ++count;
            std::int64_t x = j;
            while (!visited[static_cast<std::size_t>(x)]) {
                visited[static_cast<std::size_t>(x)] = true;
                x = image[static_cast<std::size_t>(x)];
            }
        }
        return count;
    }
};

StepSearch make_search(const GroupParams& params) {
    StepSearch search;
    search.p = params.p;
    search.q1 = params.q1;
    search.q2 = params.q2;
    search.image.assign(static_cast<std::size_t>(params.p) + 1, 0);
    search.used.assign(static_cast<std::size_t>(params.p) + 1, false);
    return search;
}

}  // namespace

std::vector<SteppedPermutation> enumerate_T(const GroupParams& params, std::int64_t r,
                                            std::int64_t s, std::int64_t max_p) {
    require_oracle_params(params);
    if (r < 0 || s < 0 || r + s > params.p)
        throw ParamError("enumerate_T requires r, s >= 0 with r + s <= p");
    if (params.p > max_p) throw SizeGuardError("size guard: p exceeds the oracle bound");

    std::vector<SteppedPermutation> out;
    StepSearch search = make_search(params);
    search.run(1, params.p - r - s, r, s, [&](const StepSearch& st) {
        out.push_back(make_stepped_permutation(st.p, st.q1, st.q2, st.image));
    });
    return out;
}

SparseExactPolynomial det_via_permutations(const GroupParams& params, std::int64_t max_p) {
    require_oracle_params(params);
    if (params.p > max_p) throw SizeGuardError("size guard: p exceeds the oracle bound");

    const std::int64_t p = params.p;
    const std::size_t n = static_cast<std::size_t>(p) + 1;
    std::vector<std::int64_t> det(n * n, 0);

    StepSearch search = make_search(params);
    search.run(1, p, p, p, [&](const StepSearch& st) {
        std::int64_t r = 0, s = 0;
        for (std::int64_t j = 1; j <= p; ++j) {
            const std::int64_t d = ((st.image[static_cast<std::size_t>(j)] - j) % p + p) % p;
            if (d == st.q1)
                ++r;
            else if (d == st.q2)
                ++s;
        }
        const std::int64_t sgn = is_odd(p - st.cycle_count()) ? -1 : +1;
        // entry product contributes (-x)^r (-y)^s
        det[static_cast<std::size_t>(r) * n + static_cast<std::size_t>(s)] +=
            is_odd(r + s) ? -sgn : sgn;
    });

    SparseExactPolynomial phi;
    for (std::int64_t r = 0; r <= p; ++r) {
        for (std::int64_t s = 0; s <= p - r; ++s) {
            if (r == 0 && s == 0) continue;  // constant of 1 - det cancels
            const std::int64_t c = det[static_cast<std::size_t>(r) * n + static_cast<std::size_t>(s)];
            if (c != 0) phi.add_term(r, s, Int(-c));
        }
    }
    if (params.form == Form::Indefinite) phi.flip_y();
    return phi;
}

CycleStats cycle_stats(const SteppedPermutation& sigma) {
    CycleStats stats;
    stats.r = sigma.r;
    stats.s = sigma.s;
    stats.k = static_cast<std::int64_t>(sigma.cycles.size());
    stats.sign = sigma.sign();
    stats.lemma_ok = true;

    auto violate = [&stats](std::string msg) {
        stats.lemma_ok = false;
        stats.violations.push_back(std::move(msg));
    };

    const std::int64_t w = sigma.r * sigma.q1 + sigma.s * sigma.q2;
    if (w % sigma.p != 0) {
        violate("p does not divide r*q1 + s*q2");
        stats.l = -1;
        return stats;
    }
    stats.l = w / sigma.p;
    stats.gcd_rsl = gcd3(sigma.r, sigma.s, stats.l);

    for (const Cycle& c : sigma.cycles) {
        CycleStats::PerCycle pc;
        pc.cycle = c;
        pc.r_i = pc.s_i = 0;
        for (std::int64_t x : c.points) {
            if (sigma.step[static_cast<std::size_t>(x)] == StepKind::Q1)
                ++pc.r_i;
            else if (sigma.step[static_cast<std::size_t>(x)] == StepKind::Q2)
                ++pc.s_i;
        }
        const std::int64_t wi = pc.r_i * sigma.q1 + pc.s_i * sigma.q2;
        if (wi % sigma.p != 0) {
            violate("cycle weight is not an integer");
            pc.l_i = -1;
        } else {
            pc.l_i = wi / sigma.p;
        }
        stats.cycles.push_back(std::move(pc));
    }

    if (stats.k > 0) {
        if (stats.gcd_rsl != stats.k) violate("k != gcd(r,s,l)");
        for (const auto& pc : stats.cycles) {
            if (pc.r_i * stats.k != sigma.r) violate("r_i != r/k");
            if (pc.s_i * stats.k != sigma.s) violate("s_i != s/k");
            if (pc.l_i >= 0 && pc.l_i * stats.k != stats.l) violate("l_i != l/k");
            if (pc.l_i >= 0 && gcd3(pc.r_i, pc.s_i, pc.l_i) != 1) violate("gcd(r_i,s_i,l_i) != 1");
        }
    }
    const int predicted = is_odd(sigma.r + sigma.s + stats.gcd_rsl) ? -1 : +1;
    if (stats.k > 0 && predicted != stats.sign) violate("sign != (-1)^(r+s+gcd(r,s,l))");
    return stats;
}

// ---------------------------------------------------------------------------
// m-ordered traversal

namespace {

std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
    std::int64_t old_r = a % m, rr = m, old_s = 1, ss = 0;
    while (rr != 0) {
        const std::int64_t q = old_r / rr;
        std::int64_t tmp = old_r - q * rr;
        old_r = rr;
        rr = tmp;
        tmp = old_s - q * ss;
        old_s = ss;
        ss = tmp;
    }
    return ((old_s % m) + m) % m;
}

// Smallest t >= 1 with from + t*m == to (mod p); requires congruence mod g.
std::int64_t traversal_time(std::int64_t from, std::int64_t to, std::int64_t m, std::int64_t p) {
    const std::int64_t g = std::gcd(m, p);
    const std::int64_t orbit = p / g;
    if (orbit == 1) return 1;
    const std::int64_t delta = (((to - from) % p) + p) % p;
    std::int64_t t = static_cast<std::int64_t>(
        (static_cast<__int128>(delta / g) * inv_mod(m / g, orbit)) % orbit);
    return t == 0 ? orbit : t;
}

}  // namespace

bool is_m_ordered(const std::vector<std::int64_t>& points, std::int64_t m, std::int64_t p) {
    if (p < 1) throw ParamError("p must be >= 1");
    if (m < 1 || m > p - 1) throw ParamError("m must satisfy 1 <= m <= p-1");
    const std::int64_t g = std::gcd(m, p);
    const std::int64_t n = static_cast<std::int64_t>(points.size());
    if (n < 3 || n > p / g) throw ParamError("length out of range: need 3 <= n <= lcm(m,p)/m");
    for (std::int64_t x : points)
        if (x < 1 || x > p) throw ParamError("point outside [p]");

    for (std::int64_t x : points)
        if ((x - points[0]) % g != 0) return false;

    std::int64_t prev = 0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        const std::int64_t t = traversal_time(points[0], points[i], m, p);
        if (t <= prev) return false;
        prev = t;
    }
    return true;
}

// ---------------------------------------------------------------------------
// cycle geometry

CycleGeometry cycle_geometry(const Cycle& cycle, const GroupParams& params) {
    require_oracle_params(params);
    const std::int64_t p = params.p, q1 = params.q1, q2 = params.q2;
    const std::int64_t len = static_cast<std::int64_t>(cycle.points.size());
    if (len < 2) throw ParamError("cycle must be nontrivial");

    std::vector<StepKind> out_step(static_cast<std::size_t>(len));
    std::int64_t s_k = 0;
    for (std::int64_t i = 0; i < len; ++i) {
        const std::int64_t from = cycle.points[static_cast<std::size_t>(i)];
        const std::int64_t to = cycle.points[static_cast<std::size_t>((i + 1) % len)];
        const std::int64_t d = ((to - from) % p + p) % p;
        if (d == q1) {
            out_step[static_cast<std::size_t>(i)] = StepKind::Q1;
        } else if (d == q2) {
            out_step[static_cast<std::size_t>(i)] = StepKind::Q2;
            ++s_k;
        } else {
            throw ParamError("not a stepped cycle: step is neither q1 nor q2");
        }
    }
    if (s_k == 0) throw ParamError("no q2-step");

    // start must be the image of a q2-step; rotate forward to the first one
    std::int64_t start = 0;
    for (std::int64_t i = 0; i < len; ++i) {
        if (out_step[static_cast<std::size_t>((i + len - 1) % len)] == StepKind::Q2) {
            start = i;
            break;
        }
    }

    CycleGeometry geo;
    geo.cycle.points.reserve(static_cast<std::size_t>(len));
    for (std::int64_t i = 0; i < len; ++i)
        geo.cycle.points.push_back(cycle.points[static_cast<std::size_t>((start + i) % len)]);
    std::vector<StepKind> step(static_cast<std::size_t>(len));
    for (std::int64_t i = 0; i < len; ++i)
        step[static_cast<std::size_t>(i)] = out_step[static_cast<std::size_t>((start + i) % len)];

    // d_i = image of the previous q2-step, e_i = point carrying the next one
    std::int64_t pos = 0;
    for (std::int64_t i = 0; i < s_k; ++i) {
        geo.d_points.push_back(geo.cycle.points[static_cast<std::size_t>(pos)]);
        while (step[static_cast<std::size_t>(pos)] == StepKind::Q1) pos = (pos + 1) % len;
        geo.e_points.push_back(geo.cycle.points[static_cast<std::size_t>(pos)]);
        pos = (pos + 1) % len;
    }

    std::unordered_map<std::int64_t, std::int64_t> d_index;
    for (std::int64_t i = 0; i < s_k; ++i) d_index.emplace(geo.d_points[static_cast<std::size_t>(i)], i + 1);

    // U(j): first d-point on the q1-traversal from e_j; V_j: points before it
    for (std::int64_t j = 0; j < s_k; ++j) {
        std::vector<std::int64_t> v;
        std::int64_t x = geo.e_points[static_cast<std::size_t>(j)];
        std::int64_t matched = 0;
        for (std::int64_t t = 1; t <= p; ++t) {
            x = mod1(x + q1, p);
            auto it = d_index.find(x);
            if (it != d_index.end()) {
                matched = it->second;
                break;
            }
            v.push_back(x);
        }
        if (matched == 0) throw InternalError("q1-traversal met no d-point");
        geo.matching.push_back(matched);
        geo.v_sets.push_back(std::move(v));
    }

    // W_j spans the q1-interval between d_{j+1} and e_{j+1}, endpoints widened
    for (std::int64_t j = 0; j < s_k; ++j) {
        const std::int64_t dn = geo.d_points[static_cast<std::size_t>((j + 1) % s_k)];
        const std::int64_t en = geo.e_points[static_cast<std::size_t>((j + 1) % s_k)];
        const std::int64_t a = mod1(dn - q1, p);
        const std::int64_t b = mod1(en + q1, p);
        std::vector<std::int64_t> w;
        std::int64_t x = a;
        for (std::int64_t t = 1; t <= p; ++t) {
            x = mod1(x + q1, p);
            if (x == b) break;
            w.push_back(x);
            if (x == a) throw InternalError("q1-interval endpoint unreachable");
        }
        geo.w_sets.push_back(std::move(w));
    }
    return geo;
}

// ---------------------------------------------------------------------------
// lattice path and the canonical witness

LatticePath lattice_path(std::int64_t r, std::int64_t s) {
    if (r < 0 || s < 0 || r + s < 1) throw ParamError("lattice_path requires r,s >= 0, r+s >= 1");
    LatticePath path;
    path.vertices.emplace_back(0, 0);
    std::int64_t x = 0, y = 0;
    while (x < r || y < s) {
        bool x_step;
        if (x == r)
            x_step = false;
        else if (y == s)
            x_step = true;
        else
            x_step = s * x <= r * y;
        if (x_step) {
            ++x;
            path.word.push_back(StepKind::Q1);
        } else {
            ++y;
            path.word.push_back(StepKind::Q2);
        }
        path.vertices.emplace_back(x, y);
    }
    return path;
}

SteppedPermutation canonical_element(const GroupParams& params, std::int64_t r, std::int64_t s) {
    require_oracle_params(params);
    const std::int64_t p = params.p, q1 = params.q1, q2 = params.q2;
    if (r < 0 || s < 0 || r + s < 1 || r + s > p)
        throw ParamError("canonical_element requires 0 < r + s <= p");
    const std::int64_t w = r * q1 + s * q2;
    if (w % p != 0) throw ParamError("not in support");
    const std::int64_t l = w / p;
    const std::int64_t k = gcd3(r, s, l);

    const LatticePath path = lattice_path(r / k, s / k);
    std::vector<Cycle> cycles;
    for (std::int64_t j = 1; j <= k; ++j) {
        Cycle c;
        std::int64_t x = mod1(1 + (j - 1) * (q2 - q1), p);
        for (const StepKind kind : path.word) {
            c.points.push_back(x);
            x = mod1(x + (kind == StepKind::Q1 ? q1 : q2), p);
        }
        if (x != c.points.front()) throw InternalError("witness cycle did not close");
        cycles.push_back(std::move(c));
    }
    try {
        return make_stepped_permutation(p, q1, q2, cycles);
    } catch (const ParamError&) {
        throw InternalError("witness construction produced colliding cycles");
    }
}

}  // namespace quadrisig
