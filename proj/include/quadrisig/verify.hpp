#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace quadrisig::verify {

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string details;
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// Individual suites. p_max bounds the exponential oracle sweeps; suites tied
// to fixed statements keep their own ranges.
CheckResult check_cyclotomic_products(std::int64_t n_max = 48);
CheckResult check_canonicalize(std::int64_t p_max = 30);
CheckResult check_support_walker(std::int64_t p_max = 40);
CheckResult check_sign_law(std::int64_t p_exhaustive = 12, int random_count = 50,
                           std::int64_t random_p_max = 40, std::uint64_t seed = 0x5eed0001);
CheckResult check_backend_agreement(std::int64_t p_max = 24);
CheckResult check_oracle_equivalence(std::int64_t p_max = 10);
CheckResult check_cycle_lemmas(std::int64_t p_max = 10);
CheckResult check_geometry_partition(std::int64_t p_max = 10);
CheckResult check_witnesses(std::int64_t p_max = 12);
CheckResult check_lemma12(std::int64_t p_max = 50);
CheckResult check_t632_enumeration();
CheckResult check_t24_geometry();
CheckResult check_su11(std::int64_t p_max = 48);
CheckResult check_su11_structure(std::int64_t p_max = 48);
CheckResult check_expand_canonical(std::int64_t p_max = 10);
CheckResult check_numeric_eval(int n_params = 20, int points_per_params = 5,
                               std::int64_t p_max = 16, std::uint64_t seed = 0x5eed0002);
CheckResult check_weight_bounds(std::int64_t exhaustive_p_max = 200, std::int64_t q2_max = 12,
                                int random_count = 100, std::int64_t random_p_max = 1000000,
                                std::uint64_t seed = 0x5eed0003);
CheckResult check_ratio_convergence();
CheckResult check_triple_limit();
CheckResult check_cr_identity(int n_params = 20, int n_points = 100, std::int64_t p_max = 20,
                              std::uint64_t seed = 0x5eed0004);
CheckResult check_sign_rule_comparison(std::int64_t p_max = 12);
CheckResult check_odd_weight_parity(std::int64_t p_max = 12);

/// The full suite at oracle bound p_max (the CLI `verify` entry point).
VerifyReport run_verify(std::int64_t p_max);

}  // namespace quadrisig::verify
