#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "quadrisig/asymptotics.hpp"

using namespace quadrisig;

TEST_CASE("weight profile goldens") {
    const WeightProfile w623 = weight_profile(GroupParams{6, 2, 3, Form::Definite});
    REQUIRE(w623.counts.size() == 4);
    CHECK(w623.counts[1] == 2);
    CHECK(w623.counts[2] == 3);
    CHECK(w623.counts[3] == 1);
    CHECK(w623.n_total == 6);
    CHECK(w623.n_odd == 3);
    CHECK(w623.n_even == 3);
    CHECK(w623.bounds_ok);

    const WeightProfile w211 = weight_profile(GroupParams{2, 1, 1, Form::Indefinite});
    REQUIRE(w211.counts.size() == 2);
    CHECK(w211.counts[1] == 3);
    CHECK(w211.bounds_ok);
}

TEST_CASE("weight profile preconditions") {
    CHECK_THROWS_AS(weight_profile(GroupParams{5, 0, 1, Form::Definite}), ParamError);
    // the inequalities require coprime exponents: (5;2,4) has an empty l=1
    // line where the first bound would predict ~p/8 terms
    CHECK_THROWS_AS(weight_profile(GroupParams{5, 2, 4, Form::Definite}), ParamError);
}

TEST_CASE("weight bounds hold exhaustively at small scale") {
    for (std::int64_t p = 3; p <= 120; ++p) {
        for (std::int64_t q1 = 1; q1 < p; ++q1) {
            for (std::int64_t q2 = q1; q2 < p; ++q2) {
                if (std::gcd(q1, q2) != 1 || gcd3(p, q1, q2) != 1) continue;
                if (q2 > 10) continue;
                const WeightProfile prof = weight_profile(GroupParams{p, q1, q2, Form::Definite});
                CHECK(prof.bounds_ok);
                if (q1 < q2) CHECK(std::abs(2 * prof.n_total - p) <= 2 * q2);
            }
        }
    }
}

TEST_CASE("limit ratio closed forms") {
    CHECK(limit_ratio(1, 1, Form::Indefinite, Parity::Odd) == Rat(1, 2));
    CHECK(limit_ratio(1, 2, Form::Definite, Parity::Odd) == Rat(1));
    CHECK(limit_ratio(1, 3, Form::Definite, Parity::Even) == Rat(5, 6));
    CHECK(limit_ratio(2, 3, Form::Definite, Parity::Odd) == Rat(2, 3));
    CHECK(limit_ratio(2, 3, Form::Definite, Parity::Even) == Rat(2, 3));  // parity irrelevant
    CHECK(limit_ratio(1, 2, Form::Indefinite, Parity::Odd) == Rat(1, 2));
    CHECK(limit_ratio(1, 3, Form::Indefinite, Parity::Odd) == Rat(1, 3));
    CHECK(limit_ratio(2, 3, Form::Indefinite, Parity::Odd) == Rat(1, 3));
    CHECK(limit_ratio(2, 3, Form::Indefinite, Parity::Even) == Rat(2, 3));
    CHECK(limit_ratio(2, 5, Form::Indefinite, Parity::Odd) == Rat(16, 60));
    CHECK(limit_ratio(3, 4, Form::Definite, Parity::Odd) == Rat(10, 12));
    CHECK_THROWS_AS(limit_ratio(0, 1, Form::Definite, Parity::Odd), ParamError);
    CHECK_THROWS_AS(limit_ratio(2, 4, Form::Definite, Parity::Odd), ParamError);
    CHECK_THROWS_AS(limit_ratio(3, 2, Form::Definite, Parity::Odd), ParamError);
}

TEST_CASE("convergence table for the SU(1,1)-like family (1,1)") {
    const RatioReport report =
        convergence_table(1, 1, Form::Indefinite, {101, 1001, 10001});
    REQUIRE(report.rows.size() == 3);
    Rat prev_err(1);
    for (const RatioRow& row : report.rows) {
        REQUIRE_FALSE(row.skipped);
        // (x - y)^p at odd p: exactly half the p+1 terms have even s
        CHECK(row.sig.total() == row.p + 1);
        CHECK(row.sig.n_plus == (row.p + 1) / 2);
        CHECK(row.limit == Rat(1, 2));
        CHECK(row.abs_err <= prev_err);
        prev_err = row.abs_err;
    }
    CHECK(report.rows.back().abs_err == Rat(0));
}

TEST_CASE("convergence table skips out-of-range rows with a note") {
    const RatioReport report = convergence_table(2, 3, Form::Definite, {2, 3, 7});
    REQUIRE(report.rows.size() == 3);
    CHECK(report.rows[0].skipped);
    CHECK(report.rows[1].skipped);
    CHECK_FALSE(report.rows[2].skipped);
}

TEST_CASE("empirical ratios approach the stated limits") {
    struct Probe {
        std::int64_t q1, q2, p;
        Form form;
        Rat limit;
    };
    const std::vector<Probe> probes = {
        {1, 2, 99991, Form::Definite, Rat(1)},
        {2, 3, 3001, Form::Definite, Rat(2, 3)},
        {2, 3, 2001, Form::Indefinite, Rat(1, 3)},   // odd-p subsequence
        {2, 3, 2000, Form::Indefinite, Rat(2, 3)},   // even-p subsequence
        {3, 4, 1999, Form::Indefinite, Rat(4, 12)},
        {2, 5, 1999, Form::Indefinite, Rat(16, 60)},
        {2, 5, 2000, Form::Indefinite, Rat(44, 60)},
    };
    for (const Probe& probe : probes) {
        REQUIRE(gcd3(probe.p, probe.q1, probe.q2) == 1);
        const Rat emp = positivity_ratio(GroupParams{probe.p, probe.q1, probe.q2, probe.form});
        CHECK(limit_ratio(probe.q1, probe.q2, probe.form, parity_of(probe.p)) == probe.limit);
        CHECK(abs(emp - probe.limit) <= Rat(5 * probe.q2 * probe.q2, probe.p));
    }
}

TEST_CASE("convergence table is deterministic under threading") {
    std::vector<std::int64_t> ps;
    for (std::int64_t p = 1000; p < 1100; ++p) ps.push_back(p);
    const RatioReport serial = convergence_table(2, 3, Form::Indefinite, ps, 1);
    const RatioReport parallel = convergence_table(2, 3, Form::Indefinite, ps, 4);
    REQUIRE(serial.rows.size() == parallel.rows.size());
    for (std::size_t i = 0; i < serial.rows.size(); ++i) {
        CHECK(serial.rows[i].p == parallel.rows[i].p);
        CHECK(serial.rows[i].empirical == parallel.rows[i].empirical);
        CHECK(serial.rows[i].abs_err == parallel.rows[i].abs_err);
    }
}

TEST_CASE("|N - p/2| stays within q2 for q1 < q2") {
    std::mt19937_64 rng(0xbeef);
    for (int i = 0; i < 50; ++i) {
        std::uniform_int_distribution<std::int64_t> pd(500, 200000);
        const std::int64_t p = pd(rng);
        std::uniform_int_distribution<std::int64_t> qd(1, 40);
        std::int64_t q1 = qd(rng), q2 = qd(rng);
        if (q1 > q2) std::swap(q1, q2);
        if (q1 == q2 || std::gcd(q1, q2) != 1 || gcd3(p, q1, q2) != 1) continue;
        const WeightProfile prof = weight_profile(GroupParams{p, q1, q2, Form::Definite});
        CHECK(prof.bounds_ok);
        CHECK(std::abs(2 * prof.n_total - p) <= 2 * q2);
    }
}
