// quadrisig: exact invariant-polynomial expansion, hyperquadric signature
// queries, parameter sweeps, verification reports, and witness extraction
// for cyclic diagonal subgroups of U(2) and U(1,1).

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "quadrisig/asymptotics.hpp"
#include "quadrisig/expansion.hpp"
#include "quadrisig/permutation_oracle.hpp"
#include "quadrisig/signature_core.hpp"
#include "quadrisig/verify.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace quadrisig;

constexpr std::int64_t kExpandGuard = 64;
constexpr std::int64_t kSweepGuard = 10000000;

Form parse_form(const std::string& name) {
    if (name == "u2") return Form::Definite;
    if (name == "u11") return Form::Indefinite;
    throw ParamError("unknown form '" + name + "' (expected u2 or u11)");
}

int default_threads() {
    if (const char* env = std::getenv("QUADRISIG_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void write_output(const std::string& path, const std::string& payload) {
    if (path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParamError("cannot open output file: " + path);
    out << payload;
}

json polynomial_json(const GroupParams& params, const SparseExactPolynomial& phi) {
    // terms sorted by (l, r); coefficients as decimal strings
    struct Row {
        std::int64_t r, s, l;
        std::string coeff;
        int sign;
    };
    std::vector<Row> rows;
    for (const auto& t : phi.terms()) {
        const std::int64_t l = (t.r * params.q1 + t.s * params.q2) / params.p;
        rows.push_back({t.r, t.s, l, t.coeff.str(), t.coeff > 0 ? +1 : -1});
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return std::tie(a.l, a.r, a.s) < std::tie(b.l, b.r, b.s);
    });
    json terms = json::array();
    for (const Row& row : rows)
        terms.push_back({{"r", row.r}, {"s", row.s}, {"l", row.l},
                         {"coeff", row.coeff}, {"sign", row.sign}});
    return json{{"p", params.p},
                {"q1", params.q1},
                {"q2", params.q2},
                {"form", form_name(params.form)},
                {"n_terms", rows.size()},
                {"terms", terms}};
}

json signature_json(const GroupParams& params) {
    const SignaturePair sig = signature(params);
    return json{{"n_plus", sig.n_plus},
                {"n_minus", sig.n_minus},
                {"ratio", rat_to_string(Rat(sig.n_plus, sig.total()))}};
}

json permutation_json(const SteppedPermutation& sigma) {
    json one_line = json::array();
    for (std::int64_t j = 1; j <= sigma.p; ++j)
        one_line.push_back(sigma.image[static_cast<std::size_t>(j)]);
    const CycleStats stats = cycle_stats(sigma);
    json cycles = json::array();
    for (const auto& pc : stats.cycles) {
        cycles.push_back({{"points", pc.cycle.points},
                          {"r_i", pc.r_i},
                          {"s_i", pc.s_i},
                          {"l_i", pc.l_i}});
    }
    std::string cycle_notation;
    for (const auto& pc : stats.cycles) {
        cycle_notation += "(";
        for (std::size_t i = 0; i < pc.cycle.points.size(); ++i) {
            if (i) cycle_notation += " ";
            cycle_notation += std::to_string(pc.cycle.points[i]);
        }
        cycle_notation += ")";
    }
    return json{{"p", sigma.p},       {"q1", sigma.q1},
                {"r", sigma.r},       {"s", sigma.s},
                {"q2", sigma.q2},     {"one_line", one_line},
                {"cycles", cycles},   {"cycle_notation", cycle_notation},
                {"k", stats.k},       {"l", stats.l},
                {"gcd_rsl", stats.gcd_rsl}, {"sign", stats.sign},
                {"lemma_ok", stats.lemma_ok}};
}

struct SweepArgs {
    std::int64_t q1 = 0, q2 = 0;
    std::string form;
    std::int64_t p_min = 0, p_max = 0, p_step = 1;
    std::string format = "csv";
    std::string out;
};

int run_sweep(const SweepArgs& args, int threads, bool force) {
    if (args.p_min < 2 || args.p_max < args.p_min) throw ParamError("empty sweep range");
    if (args.p_step < 1) throw ParamError("p-step must be >= 1");
    if (args.p_max > kSweepGuard && !force)
        throw SizeGuardError("sweep guard: p-max beyond 1e7 needs --force");
    const Form form = parse_form(args.form);

    std::vector<std::int64_t> ps;
    for (std::int64_t p = args.p_min; p <= args.p_max; p += args.p_step) ps.push_back(p);
    const RatioReport report = convergence_table(args.q1, args.q2, form, ps, threads);

    std::string payload;
    if (args.format == "csv") {
        payload = "p,q1,q2,form,n_plus,n_minus,ratio,limit,abs_err,ratio_float\n";
        for (const RatioRow& row : report.rows) {
            if (row.skipped) {
                std::cerr << json{{"notice", "skipped p=" + std::to_string(row.p) + ": " + row.note}}
                                 .dump()
                          << "\n";
                continue;
            }
            payload += std::to_string(row.p) + "," + std::to_string(report.q1) + "," +
                       std::to_string(report.q2) + "," + form_name(report.form) + "," +
                       std::to_string(row.sig.n_plus) + "," + std::to_string(row.sig.n_minus) +
                       "," + rat_to_string(row.empirical) + "," + rat_to_string(row.limit) + "," +
                       rat_to_string(row.abs_err) + "," +
                       std::to_string(row.empirical.convert_to<double>()) + "\n";
        }
    } else if (args.format == "json") {
        json rows = json::array();
        for (const RatioRow& row : report.rows) {
            if (row.skipped) {
                rows.push_back({{"p", row.p}, {"skipped", true}, {"note", row.note}});
                continue;
            }
            rows.push_back({{"p", row.p},
                            {"n_plus", row.sig.n_plus},
                            {"n_minus", row.sig.n_minus},
                            {"ratio", rat_to_string(row.empirical)},
                            {"limit", rat_to_string(row.limit)},
                            {"abs_err", rat_to_string(row.abs_err)},
                            {"ratio_float", row.empirical.convert_to<double>()}});
        }
        payload = json{{"q1", report.q1},
                       {"q2", report.q2},
                       {"form", form_name(report.form)},
                       {"rows", rows}}
                      .dump(2) +
                  "\n";
    } else {
        throw ParamError("unknown format '" + args.format + "' (expected csv or json)");
    }
    write_output(args.out, payload);
    return 0;
}

int run_example(const std::string& name, const std::string& out_dir) {
    json doc;
    std::string file;
    if (name == "phi623") {
        const GroupParams params{6, 2, 3, Form::Definite};
        doc = json{{"polynomial", polynomial_json(params, expand(params))},
                   {"signature", signature_json(params)}};
        file = "phi623.json";
    } else if (name == "phi211") {
        const GroupParams params{2, 1, 1, Form::Indefinite};
        const CRMap map = cr_map(params);
        json f = json::array(), g = json::array();
        for (const auto& c : map.f_terms)
            f.push_back({{"magnitude", c.magnitude}, {"r", c.r}, {"s", c.s}});
        for (const auto& c : map.g_terms)
            g.push_back({{"magnitude", c.magnitude}, {"r", c.r}, {"s", c.s}});
        doc = json{{"polynomial", polynomial_json(params, expand(params))},
                   {"signature", signature_json(params)},
                   {"cr_map", json{{"f", f}, {"g", g}}}};
        file = "phi211.json";
    } else if (name == "t24") {
        const GroupParams params{24, 3, 16, Form::Definite};
        const Cycle c1{{20, 23, 2, 18, 21, 24, 3, 19, 22, 1, 4}};
        const Cycle c2{{7, 10, 13, 5, 8, 11, 14, 6, 9, 12, 15}};
        const SteppedPermutation sigma = make_stepped_permutation(24, 3, 16, {c1, c2});
        const CycleGeometry geo = cycle_geometry(c1, params);
        doc = json{{"p", 24},
                   {"q1", 3},
                   {"q2", 16},
                   {"sigma", permutation_json(sigma)},
                   {"geometry", json{{"cycle", geo.cycle.points},
                                     {"d", geo.d_points},
                                     {"e", geo.e_points},
                                     {"matching", geo.matching},
                                     {"v_sets", geo.v_sets},
                                     {"w_sets", geo.w_sets}}}};
        file = "t24.json";
    } else {
        throw ParamError("unknown example '" + name + "' (expected phi623, phi211, or t24)");
    }
    const std::string path = out_dir.empty() ? file : out_dir + "/" + file;
    write_output(path, doc.dump(2) + "\n");
    std::cout << json{{"written", path}}.dump() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact invariant polynomials and hyperquadric signature pairs "
                 "for cyclic subgroups of U(2) and U(1,1)"};
    app.require_subcommand(1);

    int threads = default_threads();
    bool force = false;
    app.add_option("--threads", threads, "worker threads for sweeps");
    app.add_flag("--force", force, "override default size guards");

    // expand
    std::int64_t e_p = 0, e_q1 = 0, e_q2 = 0;
    std::string e_form, e_backend = "exact", e_out;
    auto* cmd_expand = app.add_subcommand("expand", "expand the invariant polynomial exactly");
    cmd_expand->add_option("p", e_p)->required();
    cmd_expand->add_option("q1", e_q1)->required();
    cmd_expand->add_option("q2", e_q2)->required();
    cmd_expand->add_option("--form", e_form, "u2 or u11")->required();
    cmd_expand->add_option("--backend", e_backend, "exact or modular");
    cmd_expand->add_option("--out", e_out, "output file (default stdout)");

    // signature
    std::int64_t s_p = 0, s_q1 = 0, s_q2 = 0;
    std::string s_form;
    auto* cmd_sig = app.add_subcommand("signature", "signature pair via O(p) sign counting");
    cmd_sig->add_option("p", s_p)->required();
    cmd_sig->add_option("q1", s_q1)->required();
    cmd_sig->add_option("q2", s_q2)->required();
    cmd_sig->add_option("--form", s_form, "u2 or u11")->required();

    // sweep
    SweepArgs sweep;
    auto* cmd_sweep = app.add_subcommand("sweep", "ratio sweep over a range of p");
    cmd_sweep->add_option("--q1", sweep.q1)->required();
    cmd_sweep->add_option("--q2", sweep.q2)->required();
    cmd_sweep->add_option("--form", sweep.form, "u2 or u11")->required();
    cmd_sweep->add_option("--p-min", sweep.p_min)->required();
    cmd_sweep->add_option("--p-max", sweep.p_max)->required();
    cmd_sweep->add_option("--p-step", sweep.p_step);
    cmd_sweep->add_option("--format", sweep.format, "csv or json");
    cmd_sweep->add_option("--out", sweep.out, "output file (default stdout)");

    // verify
    std::int64_t v_p_max = 10;
    auto* cmd_verify = app.add_subcommand("verify", "run the oracle and lemma suites");
    cmd_verify->add_option("--p-max", v_p_max, "oracle sweep bound (default 10)");

    // witness
    std::int64_t w_p = 0, w_q1 = 0, w_q2 = 0, w_r = 0, w_s = 0;
    auto* cmd_witness = app.add_subcommand("witness", "canonical permutation for a monomial");
    cmd_witness->add_option("p", w_p)->required();
    cmd_witness->add_option("q1", w_q1)->required();
    cmd_witness->add_option("q2", w_q2)->required();
    cmd_witness->add_option("r", w_r)->required();
    cmd_witness->add_option("s", w_s)->required();

    // example
    std::string x_name, x_out_dir;
    auto* cmd_example = app.add_subcommand("example", "regenerate a worked golden file");
    cmd_example->add_option("name", x_name, "phi623, phi211, or t24")->required();
    cmd_example->add_option("--out", x_out_dir, "output directory (default .)");

    try {
        app.parse(argc, argv);

        if (cmd_expand->parsed()) {
            if (e_p > kExpandGuard && !force)
                throw SizeGuardError("expand guard: p beyond 64 needs --force");
            const GroupParams params{e_p, e_q1, e_q2, parse_form(e_form)};
            SparseExactPolynomial phi;
            if (e_backend == "exact")
                phi = expand(params);
            else if (e_backend == "modular")
                phi = expand_modular(params);
            else
                throw ParamError("unknown backend '" + e_backend + "'");
            write_output(e_out, polynomial_json(params, phi).dump(2) + "\n");
            return 0;
        }
        if (cmd_sig->parsed()) {
            const GroupParams params{s_p, s_q1, s_q2, parse_form(s_form)};
            std::cout << signature_json(params).dump() << "\n";
            return 0;
        }
        if (cmd_sweep->parsed()) return run_sweep(sweep, threads, force);
        if (cmd_verify->parsed()) {
            if (v_p_max > kOracleSizeGuard && !force)
                throw SizeGuardError("oracle guard: p-max beyond 12 needs --force");
            const verify::VerifyReport report = verify::run_verify(v_p_max);
            for (const auto& check : report.checks)
                std::cout << (check.pass ? "PASS " : "FAIL ") << check.name << ": "
                          << check.details << "\n";
            std::cout << (report.all_passed() ? "ALL CHECKS PASSED" : "VERIFICATION FAILED")
                      << "\n";
            return report.all_passed() ? 0 : 1;
        }
        if (cmd_witness->parsed()) {
            const GroupParams params{w_p, w_q1, w_q2, Form::Definite};
            // the witness construction is linear-time, so it gets the
            // expansion-scale guard rather than the oracle guard
            if (w_p > kExpandGuard && !force)
                throw SizeGuardError("witness guard: p beyond 64 needs --force");
            const SteppedPermutation sigma = canonical_element(params, w_r, w_s);
            std::cout << permutation_json(sigma).dump(2) << "\n";
            return 0;
        }
        if (cmd_example->parsed()) return run_example(x_name, x_out_dir);
        throw ParamError("no subcommand given");
    } catch (const CLI::ParseError& err) {
        if (err.get_exit_code() == 0) return app.exit(err);  // --help / --version
        std::cerr << nlohmann::ordered_json{{"error", err.what()}}.dump() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << nlohmann::ordered_json{{"error", err.what()}}.dump() << "\n";
        return 2;
    }
}
