#include "quadrisig/asymptotics.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace quadrisig {

WeightProfile weight_profile(const GroupParams& params) {
    validate(params);
    const std::int64_t p = params.p, q1 = params.q1, q2 = params.q2;
    if (q1 < 1 || q1 > q2) throw ParamError("weight_profile requires 1 <= q1 <= q2 < p");
    if (std::gcd(q1, q2) != 1)
        throw ParamError("weight_profile requires coprime exponents (canonical parameters)");

    WeightProfile prof;
    prof.params = params;
    prof.counts.assign(static_cast<std::size_t>(q2) + 1, 0);
    for_each_support(params, [&](std::int64_t, std::int64_t, std::int64_t l) {
        ++prof.counts[static_cast<std::size_t>(l)];
        ++prof.n_total;
        if (is_odd(l))
            ++prof.n_odd;
        else
            ++prof.n_even;
    });

    auto violate = [&prof](std::int64_t l, const char* what) {
        prof.bounds_ok = false;
        prof.violations.push_back("bound violated at l=" + std::to_string(l) + ": " + what);
    };
    // exact checks by cross-multiplication
    const auto over = [](__int128 lhs, __int128 denom) {
        return lhs > denom || lhs < -denom;
    };
    for (std::int64_t l = 1; l <= q1; ++l) {
        const __int128 denom = static_cast<__int128>(q1) * q2;
        const __int128 lhs = prof.counts[static_cast<std::size_t>(l)] * denom -
                             static_cast<__int128>(l) * p;
        if (over(lhs, denom)) violate(l, "|N_l - l p/(q1 q2)| > 1");
    }
    if (q1 < q2) {
        const __int128 denom = static_cast<__int128>(q2) * (q2 - q1);
        for (std::int64_t l = q1 + 1; l <= q2; ++l) {
            const __int128 lhs = prof.counts[static_cast<std::size_t>(l)] * denom -
                                 static_cast<__int128>(q2 - l) * p;
            if (over(lhs, denom)) violate(l, "|N_l - (q2-l) p/(q2(q2-q1))| > 1");
        }
    }
    return prof;
}

Rat limit_ratio(std::int64_t q1, std::int64_t q2, Form form, Parity p_parity) {
    if (q1 < 1 || q2 < q1) throw ParamError("limit_ratio requires 1 <= q1 <= q2");
    if (std::gcd(q1, q2) != 1) throw ParamError("limit_ratio requires coprime exponents");

    const bool q1_odd = is_odd(q1);
    const bool q2_odd = is_odd(q2);
    if (!q1_odd && !q2_odd) throw ParamError("q1 and q2 cannot both be even");

    if (form == Form::Indefinite) {
        if (q1_odd && q2_odd) return Rat(q1 * q2 + 1, 4 * q1 * q2);
        if (q1_odd) return Rat(q1 * (q2 - q1) + 1, 4 * q1 * (q2 - q1));
        // q1 even, q2 odd: distinct limits along the odd-p / even-p subsequences
        if (p_parity == Parity::Odd) return Rat(q2 * (q2 - q1) + 1, 4 * q2 * (q2 - q1));
        return Rat(3 * q2 * (q2 - q1) - 1, 4 * q2 * (q2 - q1));
    }
    if (q1_odd && !q2_odd) return Rat(3 * q1 * (q2 - q1) + 1, 4 * q1 * (q2 - q1));
    if (q1_odd) return Rat(3 * q1 * q2 + 1, 4 * q1 * q2);
    return Rat(3 * q2 * (q2 - q1) - 1, 4 * q2 * (q2 - q1));
}

RatioReport convergence_table(std::int64_t q1, std::int64_t q2, Form form,
                              std::vector<std::int64_t> p_list, int threads) {
    if (q1 < 1 || q2 < q1) throw ParamError("convergence_table requires 1 <= q1 <= q2");
    if (std::gcd(q1, q2) != 1) throw ParamError("convergence_table requires coprime exponents");
    std::sort(p_list.begin(), p_list.end());

    RatioReport report{q1, q2, form, {}};
    report.rows.resize(p_list.size());

    auto compute_row = [&](std::size_t i) {
        RatioRow& row = report.rows[i];
        row.p = p_list[i];
        if (row.p <= q2) {
            row.skipped = true;
            row.note = "p must exceed q2";
            return;
        }
        if (gcd3(row.p, q1, q2) != 1) {
            row.skipped = true;
            row.note = "gcd(p,q1,q2) != 1";
            return;
        }
        const GroupParams params{row.p, q1, q2, form};
        row.sig = signature(params);
        row.empirical = Rat(row.sig.n_plus, row.sig.total());
        row.limit = limit_ratio(q1, q2, form, parity_of(row.p));
        row.abs_err = abs(row.empirical - row.limit);
        row.n_half_gap = abs(Rat(2 * row.sig.total() - row.p, 2));
    };

    if (threads <= 1 || p_list.size() <= 1) {
        for (std::size_t i = 0; i < p_list.size(); ++i) compute_row(i);
        return report;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int n_workers = std::min<int>(threads, static_cast<int>(p_list.size()));
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int w = 0; w < n_workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < report.rows.size(); i = next.fetch_add(1))
                compute_row(i);
        });
    }
    for (std::thread& t : pool) t.join();
    return report;
}

}  // namespace quadrisig
