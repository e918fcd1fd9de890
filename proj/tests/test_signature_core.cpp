#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "quadrisig/signature_core.hpp"

using namespace quadrisig;

namespace {

// brute-force companion for canonicalize: full scan over unit multipliers
// (and swaps for the Definite form)
GroupParams brute_canonical(std::int64_t p, std::int64_t q1, std::int64_t q2, Form form) {
    if (p == 1) return {1, 0, 0, form};
    std::pair<std::int64_t, std::int64_t> best{p, p};
    for (std::int64_t k = 1; k < p; ++k) {
        if (std::gcd(k, p) != 1) continue;
        const std::pair<std::int64_t, std::int64_t> cand{(k * q1) % p, (k * q2) % p};
        best = std::min(best, cand);
        if (form == Form::Definite)
            best = std::min(best, std::make_pair(cand.second, cand.first));
    }
    return {p, best.first, best.second, form};
}

// quadratic support oracle
std::vector<SupportEntry> brute_support(const GroupParams& g) {
    std::vector<SupportEntry> out;
    for (std::int64_t l = 0; l <= std::max(g.q1, g.q2); ++l) {
        for (std::int64_t r = 0; r <= g.p; ++r) {
            for (std::int64_t s = 0; r + s <= g.p; ++s) {
                if (r + s == 0) continue;
                if (r * g.q1 + s * g.q2 != l * g.p) continue;
                out.push_back({r, s, l, 0});
            }
        }
    }
    return out;
}

}  // namespace

TEST_CASE("validate rejects bad parameters") {
    CHECK_THROWS_AS(validate(GroupParams{0, 0, 0, Form::Definite}), ParamError);
    CHECK_THROWS_AS(validate(GroupParams{5, 5, 1, Form::Definite}), ParamError);
    CHECK_THROWS_AS(validate(GroupParams{5, -1, 1, Form::Definite}), ParamError);
    CHECK_THROWS_AS(validate(GroupParams{6, 2, 4, Form::Definite}), ParamError);
    CHECK_NOTHROW(validate(GroupParams{1, 0, 0, Form::Definite}));
    CHECK_NOTHROW(validate(GroupParams{8, 2, 1, Form::Indefinite}));  // unordered is legal
}

TEST_CASE("canonicalize golden examples") {
    CHECK(canonicalize(7, 2, 4, Form::Definite) == GroupParams{7, 1, 2, Form::Definite});
    CHECK(canonicalize(5, 1, 2, Form::Definite) == GroupParams{5, 1, 2, Form::Definite});
    CHECK(canonicalize(6, 2, 3, Form::Definite) == GroupParams{6, 2, 3, Form::Definite});
    CHECK_THROWS_AS(canonicalize(6, 2, 4, Form::Definite), ParamError);
    // the U(1,1) orbit of (8;2,1) has no smaller representative; the swap is
    // not admitted, so the canonical pair stays unordered
    CHECK(canonicalize(8, 2, 1, Form::Indefinite) == GroupParams{8, 2, 1, Form::Indefinite});
    CHECK(canonicalize(8, 2, 1, Form::Definite) == GroupParams{8, 1, 2, Form::Definite});
}

TEST_CASE("canonicalize matches the exhaustive scan and is idempotent") {
    for (Form form : {Form::Definite, Form::Indefinite}) {
        for (std::int64_t p = 1; p <= 20; ++p) {
            for (std::int64_t q1 = 0; q1 < p; ++q1) {
                for (std::int64_t q2 = 0; q2 < p; ++q2) {
                    if (gcd3(p, q1, q2) != 1) continue;
                    const GroupParams c = canonicalize(p, q1, q2, form);
                    CHECK(c == brute_canonical(p, q1, q2, form));
                    CHECK(canonicalize(c.p, c.q1, c.q2, form) == c);
                }
            }
        }
    }
}

TEST_CASE("support golden sets") {
    const auto s623 = support(GroupParams{6, 2, 3, Form::Definite});
    REQUIRE(s623.size() == 6);
    CHECK(s623[0] == SupportEntry{0, 2, 1, +1});
    CHECK(s623[1] == SupportEntry{3, 0, 1, +1});
    CHECK(s623[2] == SupportEntry{0, 4, 2, -1});
    CHECK(s623[3] == SupportEntry{3, 2, 2, +1});
    CHECK(s623[4] == SupportEntry{6, 0, 2, -1});
    CHECK(s623[5] == SupportEntry{0, 6, 3, +1});

    const auto s211 = support(GroupParams{2, 1, 1, Form::Indefinite});
    REQUIRE(s211.size() == 3);
    CHECK(s211[0] == SupportEntry{0, 2, 1, +1});
    CHECK(s211[1] == SupportEntry{1, 1, 1, -1});
    CHECK(s211[2] == SupportEntry{2, 0, 1, +1});

    const auto trivial = support(GroupParams{1, 0, 0, Form::Definite});
    REQUIRE(trivial.size() == 2);
    CHECK(trivial[0] == SupportEntry{0, 1, 0, +1});
    CHECK(trivial[1] == SupportEntry{1, 0, 0, +1});
}

TEST_CASE("support walker agrees with the quadratic oracle") {
    std::mt19937_64 rng(0xabc1);
    for (int i = 0; i < 200; ++i) {
        std::uniform_int_distribution<std::int64_t> pd(1, 60);
        const std::int64_t p = pd(rng);
        std::uniform_int_distribution<std::int64_t> qd(0, p - 1);
        const std::int64_t q1 = qd(rng), q2 = qd(rng);
        if (gcd3(p, q1, q2) != 1) continue;
        const GroupParams params{p, q1, q2, Form::Definite};
        auto brute = brute_support(params);
        std::sort(brute.begin(), brute.end(), [](const SupportEntry& a, const SupportEntry& b) {
            return std::tie(a.l, a.r, a.s) < std::tie(b.l, b.r, b.s);
        });
        const auto walked = support(params);
        REQUIRE(walked.size() == brute.size());
        for (std::size_t j = 0; j < walked.size(); ++j) {
            CHECK(walked[j].r == brute[j].r);
            CHECK(walked[j].s == brute[j].s);
            CHECK(walked[j].l == brute[j].l);
            CHECK(walked[j].r * q1 + walked[j].s * q2 == walked[j].l * p);
        }
    }
}

TEST_CASE("q1 = 0 support is the pure-x line plus y^p") {
    const GroupParams params{5, 0, 1, Form::Definite};
    const auto sup = support(params);
    REQUIRE(sup.size() == 6);
    for (int r = 1; r <= 5; ++r) {
        CHECK(sup[r - 1].r == r);
        CHECK(sup[r - 1].s == 0);
        CHECK(sup[r - 1].l == 0);
        // phi = 1 - (1-x)^p + y^p: sign of x^r is (-1)^(r+1)
        CHECK(sup[r - 1].sign == (r % 2 == 1 ? +1 : -1));
    }
    CHECK(sup[5] == SupportEntry{0, 5, 1, +1});
}

TEST_CASE("classify_sign golden values and the off-support error") {
    const GroupParams g623{6, 2, 3, Form::Definite};
    CHECK(classify_sign(g623, 6, 0) == -1);
    CHECK(classify_sign(g623, 3, 2) == +1);
    const GroupParams g211{2, 1, 1, Form::Indefinite};
    CHECK(classify_sign(g211, 1, 1) == -1);
    CHECK(classify_sign(g211, 2, 0) == +1);
    CHECK_THROWS_AS(classify_sign(g623, 1, 1), ParamError);
    CHECK_THROWS_AS(classify_sign(g623, 0, 0), ParamError);
    CHECK_THROWS_AS(classify_sign(g623, 6, 2), ParamError);  // r+s > p
}

TEST_CASE("signature golden values") {
    CHECK(signature(GroupParams{2, 1, 1, Form::Indefinite}) == SignaturePair{2, 1});
    CHECK(signature(GroupParams{6, 2, 3, Form::Definite}) == SignaturePair{4, 2});
    CHECK(signature(GroupParams{5, 1, 4, Form::Indefinite}) == SignaturePair{1, 3});
}

TEST_CASE("su11 closed form") {
    CHECK(su11_signature(2) == SignaturePair{2, 1});
    CHECK(su11_signature(7) == SignaturePair{1, 4});
    CHECK(su11_signature(8) == SignaturePair{2, 4});
    CHECK_THROWS_AS(su11_signature(1), ParamError);
    for (std::int64_t p = 2; p <= 48; ++p)
        CHECK(signature(canonicalize(p, 1, p - 1, Form::Indefinite)) == su11_signature(p));
}

TEST_CASE("positivity ratio") {
    CHECK(positivity_ratio(GroupParams{2, 1, 1, Form::Indefinite}) == Rat(2, 3));
    CHECK(positivity_ratio(GroupParams{6, 2, 3, Form::Definite}) == Rat(2, 3));
    CHECK(positivity_ratio(GroupParams{1, 0, 0, Form::Definite}) == Rat(1));
}

TEST_CASE("Definite signature is swap invariant") {
    std::mt19937_64 rng(0xabc2);
    for (int i = 0; i < 300; ++i) {
        std::uniform_int_distribution<std::int64_t> pd(2, 400);
        const std::int64_t p = pd(rng);
        std::uniform_int_distribution<std::int64_t> qd(0, p - 1);
        const std::int64_t q1 = qd(rng), q2 = qd(rng);
        if (gcd3(p, q1, q2) != 1) continue;
        CHECK(signature(GroupParams{p, q1, q2, Form::Definite}) ==
              signature(GroupParams{p, q2, q1, Form::Definite}));
    }
}

TEST_CASE("weight identity and counting at scale") {
    const GroupParams params{999983, 123456, 654321, Form::Definite};
    REQUIRE(gcd3(params.p, params.q1, params.q2) == 1);
    std::int64_t count = 0;
    for_each_support(params, [&](std::int64_t r, std::int64_t s, std::int64_t l) {
        if (count < 1000 || count % 1000 == 0)
            CHECK(r * params.q1 + s * params.q2 == l * params.p);
        ++count;
    });
    const SignaturePair sig = signature(params);
    CHECK(sig.total() == count);
    CHECK(count > params.p / 4);  // N ~ p/2
}
