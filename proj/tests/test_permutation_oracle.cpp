#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "quadrisig/expansion.hpp"
#include "quadrisig/permutation_oracle.hpp"

using namespace quadrisig;
using RowEntry = CirculantSpec::RowEntry;

TEST_CASE("circulant spec first row and rotation") {
    const CirculantSpec c623 = circulant_spec(GroupParams{6, 2, 3, Form::Definite});
    CHECK(c623.first_row() ==
          std::vector<RowEntry>{RowEntry::One, RowEntry::Zero, RowEntry::MinusX,
                                RowEntry::MinusY, RowEntry::Zero, RowEntry::Zero});
    // second row of the displayed matrix: (0, 1, 0, -x, -y, 0)
    CHECK(c623.entry(2, 1) == RowEntry::Zero);
    CHECK(c623.entry(2, 2) == RowEntry::One);
    CHECK(c623.entry(2, 4) == RowEntry::MinusX);
    CHECK(c623.entry(2, 5) == RowEntry::MinusY);
    // wrap-around row
    CHECK(c623.entry(5, 1) == RowEntry::MinusX);
    CHECK(c623.entry(5, 2) == RowEntry::MinusY);

    const CirculantSpec c512 = circulant_spec(GroupParams{5, 1, 2, Form::Definite});
    CHECK(c512.first_row() ==
          std::vector<RowEntry>{RowEntry::One, RowEntry::MinusX, RowEntry::MinusY,
                                RowEntry::Zero, RowEntry::Zero});

    CHECK_THROWS_AS(circulant_spec(GroupParams{2, 1, 1, Form::Definite}), ParamError);
    CHECK_THROWS_AS(circulant_spec(GroupParams{5, 0, 2, Form::Definite}), ParamError);
}

TEST_CASE("determinant oracle equals the expansion") {
    CHECK(det_via_permutations(GroupParams{6, 2, 3, Form::Definite}) ==
          expand(GroupParams{6, 2, 3, Form::Definite}));
    CHECK(det_via_permutations(GroupParams{5, 1, 2, Form::Definite}) ==
          expand(GroupParams{5, 1, 2, Form::Definite}));
    CHECK(det_via_permutations(GroupParams{3, 1, 2, Form::Indefinite}) ==
          expand(GroupParams{3, 1, 2, Form::Indefinite}));
    CHECK_THROWS_AS(det_via_permutations(GroupParams{13, 1, 2, Form::Definite}),
                    SizeGuardError);
}

TEST_CASE("T_{6;2,3}(3,2) is exactly the listed six permutations") {
    const GroupParams params{6, 2, 3, Form::Definite};
    const auto t32 = enumerate_T(params, 3, 2);
    REQUIRE(t32.size() == 6);
    const std::set<std::vector<std::int64_t>> want = {
        {0, 1, 4, 5, 6, 2, 3},  // (2 4 6 3 5)
        {0, 3, 4, 5, 1, 2, 6},  // (1 3 5 2 4)
        {0, 3, 4, 6, 1, 5, 2},  // (1 3 6 2 4)
        {0, 3, 5, 6, 4, 1, 2},  // (1 3 6 2 5)
        {0, 4, 2, 5, 6, 1, 3},  // (1 4 6 3 5)
        {0, 4, 5, 3, 6, 1, 2},  // (1 4 6 2 5)
    };
    std::set<std::vector<std::int64_t>> got;
    for (const auto& sigma : t32) got.insert(sigma.image);
    CHECK(got == want);

    const auto t60 = enumerate_T(params, 6, 0);
    REQUIRE(t60.size() == 1);
    REQUIRE(t60.front().cycles.size() == 2);
    CHECK(t60.front().cycles[0].points == std::vector<std::int64_t>{1, 3, 5});
    CHECK(t60.front().cycles[1].points == std::vector<std::int64_t>{2, 4, 6});

    CHECK(enumerate_T(params, 1, 1).empty());
    CHECK_THROWS_AS(enumerate_T(GroupParams{13, 1, 2, Form::Definite}, 1, 1), SizeGuardError);
}

TEST_CASE("enumeration order is deterministic and lexicographic in step labels") {
    const GroupParams params{6, 2, 3, Form::Definite};
    const auto a = enumerate_T(params, 3, 2);
    const auto b = enumerate_T(params, 3, 2);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    auto label_word = [](const SteppedPermutation& sigma) {
        std::vector<int> w;
        for (std::int64_t j = 1; j <= sigma.p; ++j)
            w.push_back(static_cast<int>(sigma.step[static_cast<std::size_t>(j)]));
        return w;
    };
    for (std::size_t i = 1; i < a.size(); ++i) CHECK(label_word(a[i - 1]) < label_word(a[i]));
}

TEST_CASE("cycle stats for the worked permutations") {
    {
        // (2 4 6 3 5) in T_{6;2,3}(3,2): one cycle, (r,s,l) = (3,2,2), sign +1
        const SteppedPermutation sigma =
            make_stepped_permutation(6, 2, 3, {Cycle{{2, 4, 6, 3, 5}}});
        const CycleStats st = cycle_stats(sigma);
        CHECK(st.lemma_ok);
        CHECK(st.k == 1);
        CHECK(st.l == 2);
        CHECK(st.cycles[0].r_i == 3);
        CHECK(st.cycles[0].s_i == 2);
        CHECK(st.cycles[0].l_i == 2);
        CHECK(st.sign == +1);  // (-1)^(3+2+1)
    }
    {
        // (1 3 5)(2 4 6) in T_{6;2,3}(6,0): k = 2 = gcd(6,0,2), sign +1
        const SteppedPermutation sigma =
            make_stepped_permutation(6, 2, 3, {Cycle{{1, 3, 5}}, Cycle{{2, 4, 6}}});
        const CycleStats st = cycle_stats(sigma);
        CHECK(st.lemma_ok);
        CHECK(st.k == 2);
        CHECK(st.gcd_rsl == 2);
        CHECK(st.sign == +1);  // (-1)^(6+0+2)
    }
}

TEST_CASE("the (24;3,16) worked permutation") {
    const Cycle c1{{20, 23, 2, 18, 21, 24, 3, 19, 22, 1, 4}};
    const Cycle c2{{7, 10, 13, 5, 8, 11, 14, 6, 9, 12, 15}};
    const SteppedPermutation sigma = make_stepped_permutation(24, 3, 16, {c1, c2});
    CHECK(sigma.r == 16);
    CHECK(sigma.s == 6);
    std::vector<std::int64_t> fixed;
    for (std::int64_t j = 1; j <= 24; ++j)
        if (sigma.image[static_cast<std::size_t>(j)] == j) fixed.push_back(j);
    CHECK(fixed == std::vector<std::int64_t>{16, 17});

    const CycleStats st = cycle_stats(sigma);
    CHECK(st.lemma_ok);
    CHECK(st.k == 2);
    CHECK(st.l == 6);
    for (const auto& pc : st.cycles) {
        CHECK(pc.r_i == 8);
        CHECK(pc.s_i == 3);
        CHECK(pc.l_i == 3);
    }
    CHECK(st.sign == +1);  // (-1)^(16+6+2)

    const CycleGeometry geo = cycle_geometry(c1, GroupParams{24, 3, 16, Form::Definite});
    CHECK(geo.cycle.points.front() == 20);
    CHECK(geo.d_points == std::vector<std::int64_t>{20, 18, 19});
    CHECK(geo.e_points == std::vector<std::int64_t>{2, 3, 4});
    CHECK(geo.matching == std::vector<std::int64_t>{1, 2, 3});
    CHECK(geo.v_sets == std::vector<std::vector<std::int64_t>>{
                            {5, 8, 11, 14, 17}, {6, 9, 12, 15}, {7, 10, 13, 16}});
    CHECK(geo.w_sets == std::vector<std::vector<std::int64_t>>{
                            {18, 21, 24, 3}, {19, 22, 1, 4}, {20, 23, 2}});
}

TEST_CASE("cycle geometry rotates to a q2-image start") {
    // same cycle listed from 23: the start normalizes to 18, the first
    // q2-image reached walking forward
    const Cycle rotated{{23, 2, 18, 21, 24, 3, 19, 22, 1, 4, 20}};
    const CycleGeometry geo = cycle_geometry(rotated, GroupParams{24, 3, 16, Form::Definite});
    CHECK(geo.cycle.points.front() == 18);
    CHECK(geo.d_points == std::vector<std::int64_t>{18, 19, 20});
    CHECK(geo.e_points == std::vector<std::int64_t>{3, 4, 2});
}

TEST_CASE("cycle geometry of a two-q2-step transposition") {
    // (1 4) in T_{6;2,3}(0,2): both steps are q2-steps
    const GroupParams params{6, 2, 3, Form::Definite};
    const CycleGeometry geo = cycle_geometry(Cycle{{1, 4}}, params);
    CHECK(geo.d_points == std::vector<std::int64_t>{1, 4});
    CHECK(geo.e_points == std::vector<std::int64_t>{1, 4});
    CHECK(geo.matching == std::vector<std::int64_t>{1, 2});
    CHECK(geo.v_sets == std::vector<std::vector<std::int64_t>>{{3, 5}, {6, 2}});
    CHECK(geo.w_sets == std::vector<std::vector<std::int64_t>>{{4}, {1}});

    // a pure-q1 cycle has no geometry
    CHECK_THROWS_AS(cycle_geometry(Cycle{{1, 3, 5}}, params), ParamError);
}

TEST_CASE("m-ordered traversal") {
    CHECK(is_m_ordered({1, 4, 7}, 3, 9));
    CHECK_FALSE(is_m_ordered({2, 3, 4}, 3, 24));  // not congruent mod 3
    // 18 is not congruent to 2 mod gcd(24,3), so the triple cannot be ordered
    CHECK_FALSE(is_m_ordered({2, 8, 18}, 3, 24));
    // V_1 membership triples from the (24;3,16) example
    CHECK(is_m_ordered({2, 5, 20}, 3, 24));
    CHECK(is_m_ordered({2, 17, 20}, 3, 24));
    CHECK_FALSE(is_m_ordered({2, 23, 20}, 3, 24));
    CHECK_FALSE(is_m_ordered({2, 20, 20}, 3, 24));  // duplicate endpoint
    CHECK_THROWS_AS(is_m_ordered({1, 4}, 3, 9), ParamError);        // too short
    CHECK_THROWS_AS(is_m_ordered({1, 4, 7, 1}, 3, 9), ParamError);  // beyond lcm(m,p)/m
    CHECK_THROWS_AS(is_m_ordered({1, 4, 10}, 3, 9), ParamError);    // point outside [p]
}

TEST_CASE("m-ordered is rotation invariant") {
    std::mt19937_64 rng(0xfee1);
    for (int i = 0; i < 500; ++i) {
        std::uniform_int_distribution<std::int64_t> pd(6, 40);
        const std::int64_t p = pd(rng);
        std::uniform_int_distribution<std::int64_t> md(1, p - 1);
        const std::int64_t m = md(rng);
        const std::int64_t g = std::gcd(m, p);
        if (p / g < 3) continue;
        std::uniform_int_distribution<std::int64_t> xd(1, p);
        std::vector<std::int64_t> pts{xd(rng), xd(rng), xd(rng)};
        std::uniform_int_distribution<std::int64_t> cd(0, p - 1);
        const std::int64_t c = cd(rng);
        std::vector<std::int64_t> shifted;
        for (std::int64_t x : pts) shifted.push_back((x - 1 + c) % p + 1);
        CHECK(is_m_ordered(pts, m, p) == is_m_ordered(shifted, m, p));
    }
}

TEST_CASE("lattice path goldens and the slope bound") {
    {
        const LatticePath path = lattice_path(3, 0);
        CHECK(path.word == std::vector<StepKind>{StepKind::Q1, StepKind::Q1, StepKind::Q1});
    }
    {
        const LatticePath path = lattice_path(0, 3);
        CHECK(path.word == std::vector<StepKind>{StepKind::Q2, StepKind::Q2, StepKind::Q2});
    }
    {
        const LatticePath path = lattice_path(1, 1);
        CHECK(path.vertices ==
              std::vector<std::pair<std::int64_t, std::int64_t>>{{0, 0}, {1, 0}, {1, 1}});
        CHECK(path.word == std::vector<StepKind>{StepKind::Q1, StepKind::Q2});
    }
    CHECK_THROWS_AS(lattice_path(0, 0), ParamError);

    // |(x_j - x_i) s - (y_j - y_i) r| <= r + s - 1 over all vertex pairs
    std::mt19937_64 rng(0xfee2);
    for (int i = 0; i < 200; ++i) {
        std::uniform_int_distribution<std::int64_t> d(0, 12);
        const std::int64_t r = d(rng), s = d(rng);
        if (r + s == 0) continue;
        const LatticePath path = lattice_path(r, s);
        REQUIRE(path.vertices.size() == static_cast<std::size_t>(r + s) + 1);
        CHECK(path.vertices.back() == std::make_pair(r, s));
        for (const auto& [xi, yi] : path.vertices) {
            for (const auto& [xj, yj] : path.vertices) {
                CHECK(std::abs((xj - xi) * s - (yj - yi) * r) <= r + s - 1);
            }
        }
    }
}

TEST_CASE("canonical element witnesses") {
    const GroupParams params{6, 2, 3, Form::Definite};
    const SteppedPermutation w32 = canonical_element(params, 3, 2);
    CHECK(w32.image == std::vector<std::int64_t>{0, 3, 5, 6, 4, 1, 2});  // (1 3 6 2 5)

    const SteppedPermutation w60 = canonical_element(params, 6, 0);
    REQUIRE(w60.cycles.size() == 2);
    CHECK(w60.cycles[0].points == std::vector<std::int64_t>{1, 3, 5});
    CHECK(w60.cycles[1].points == std::vector<std::int64_t>{2, 4, 6});

    CHECK_THROWS_AS(canonical_element(params, 1, 1), ParamError);
    CHECK_THROWS_AS(canonical_element(GroupParams{6, 2, 4, Form::Definite}, 3, 2), ParamError);
}

TEST_CASE("witnesses live in their classes across parameters") {
    for (std::int64_t p = 3; p <= 9; ++p) {
        for (std::int64_t q1 = 1; q1 < p; ++q1) {
            for (std::int64_t q2 = q1 + 1; q2 < p; ++q2) {
                if (gcd3(p, q1, q2) != 1) continue;
                const GroupParams params{p, q1, q2, Form::Definite};
                for_each_support(params, [&](std::int64_t r, std::int64_t s, std::int64_t) {
                    const SteppedPermutation w = canonical_element(params, r, s);
                    CHECK(w.r == r);
                    CHECK(w.s == s);
                    const auto t = enumerate_T(params, r, s);
                    CHECK(std::find(t.begin(), t.end(), w) != t.end());
                });
            }
        }
    }
}

TEST_CASE("stepped permutation construction rejects invalid input") {
    CHECK_THROWS_AS(make_stepped_permutation(6, 2, 3, std::vector<std::int64_t>{0, 1, 1, 3, 4, 5, 6}),
                    ParamError);
    CHECK_THROWS_AS(make_stepped_permutation(6, 2, 3, std::vector<std::int64_t>{0, 2, 3, 4, 5, 6, 1}),
                    ParamError);  // all steps are 1, neither q1 nor q2
    CHECK_THROWS_AS(make_stepped_permutation(6, 2, 3, {Cycle{{1, 4}}, Cycle{{4, 1}}}), ParamError);
}
