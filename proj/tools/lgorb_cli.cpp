// lgorb: exact bigraded invariants of Landau-Ginzburg orbifolds.
//
// Every subcommand reads one problem file (see include/lgorb/problem.hpp for
// the format) and prints deterministic text or CSV.  Exit codes: 0 success,
// 1 computation/input error, 3 a verification or comparison found a
// discrepancy; usage errors follow the CLI parser's nonzero codes.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lgorb/lgorb.hpp"

namespace {

using namespace lgorb;

struct Invocation {
    std::string path;
    std::string geometry;
    long cap = 0;  // 0: take the problem file's value
    long workers = 1;
    long scale = 1;
    unsigned long seed = 20260825;
    std::string format = "text";
    bool assert_nondegenerate = false;
};

Problem load(const Invocation& inv) {
    Problem prob = load_problem(inv.path);
    if (inv.cap > 0) prob.options.cap = inv.cap;
    if (inv.assert_nondegenerate) prob.options.assert_nondegenerate = true;
    return prob;
}

OrbifoldData compute(const Problem& prob, const MatGroup& g, const Invocation& inv) {
    ComputeOptions opts;
    opts.workers = inv.workers;
    opts.require_certified = prob.options.assert_nondegenerate;
    return compute_orbifold(prob.poly, g, opts);
}

int run_weights(const Invocation& inv) {
    Problem prob = load(inv);
    std::cout << weights_text(prob.poly);
    return 0;
}

int run_group(const Invocation& inv) {
    Problem prob = load(inv);
    std::cout << group_text(problem_group(prob));
    return 0;
}

int run_sectors(const Invocation& inv) {
    Problem prob = load(inv);
    MatGroup g = problem_group(prob);
    std::cout << sectors_text(compute(prob, g, inv), inv.scale);
    return 0;
}

int run_poincare(const Invocation& inv) {
    Problem prob = load(inv);
    MatGroup g = problem_group(prob);
    OrbifoldData d = compute(prob, g, inv);
    std::cout << "P(u,v) = " << poincare_string(d.total, inv.scale) << "\n";
    std::cout << "central charge: " << rational_str(d.c_hat) << "\n";
    std::cout << "group order: " << d.group_order << "\n";
    std::cout << "total dimension: " << d.total.total_dimension() << "\n";
    try {
        std::cout << "witten index: " << witten_index(d.total) << "\n";
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::IllDefinedIndex) throw;
        std::cout << "witten index: undefined (" << e.what() << ")\n";
    }
    std::cout << "E(u,v) = " << poincare_string(e_polynomial_z2(d), inv.scale) << "\n";
    return 0;
}

int run_hodge(const Invocation& inv) {
    Problem prob = load(inv);
    MatGroup g = problem_group(prob);
    OrbifoldData d = compute(prob, g, inv);
    if (inv.format == "csv")
        std::cout << hodge_csv(d.total, inv.scale);
    else
        std::cout << hodge_text(d.total, inv.scale);
    return 0;
}

int run_verify(const Invocation& inv) {
    Problem prob = load(inv);
    MatGroup g = problem_group(prob);
    OrbifoldData d = compute(prob, g, inv);

    std::vector<std::string> violations;
    auto push = [&violations](const char* tag, const std::optional<std::string>& v) {
        if (v.has_value()) violations.push_back(std::string(tag) + ": " + *v);
    };
    push("class equation", g.class_equation_violation());
    push("hodge symmetry", hodge_symmetry_violation(d.total));
    push("serre duality", serre_duality_violation(d.total, d.c_hat));
    push("age relation", age_relation_violation(d));
    for (const auto& [pq, v] : d.total.entries)
        if (v < 0)
            violations.push_back("negative count at (" + rational_str(pq.first) + "," +
                                 rational_str(pq.second) + ")");
    push("truncation guard", truncation_spot_check(prob.poly, g, d, inv.seed));

    bool geometric = d.sl && d.gcy && is_integer(d.c_hat) && d.c_hat >= 0;
    if (geometric) {
        push("diamond shape", diamond_shape_violation(d.total, d.c_hat));
        try {
            witten_index(d.total);
        } catch (const Error& e) {
            violations.push_back(std::string("witten index: ") + e.what());
        }
    }

    if (!violations.empty()) {
        for (const auto& v : violations) std::cout << "violation: " << v << "\n";
        return 3;
    }
    std::cout << "all checks passed (group order " << d.group_order << ", central charge "
              << rational_str(d.c_hat) << (geometric ? ", geometric gates on" : "") << ")\n";
    return 0;
}

int run_compare(const Invocation& inv) {
    Problem prob = load(inv);
    MatGroup g = problem_group(prob);
    OrbifoldData d = compute(prob, g, inv);
    BigradedTable geom = load_table_csv(inv.geometry);
    auto v = mirror_relation_violation(d.total, geom, d.c_hat);
    if (v.has_value()) {
        std::cout << "mismatch: " << *v << "\n";
        return 3;
    }
    std::cout << "tables agree under the reflection p -> " << rational_str(d.c_hat)
              << " - p\n";
    return 0;
}

int run_oracle_compare(const Invocation& inv) {
    Problem prob = load(inv);
    std::vector<Mat> gens;
    for (const auto& [name, m] : prob.generators) gens.push_back(m);
    OracleProblem op = oracle_prepare(prob.poly, gens, prob.options.cap);
    BigradedTable counted = oracle_orbifold(op, prob.options.oracle_bound);

    MatGroup g = problem_group(prob);
    OrbifoldData d = compute(prob, g, inv);
    if (counted == d.total) {
        std::cout << "oracle and main path agree bidegree-for-bidegree (dimension "
                  << counted.total_dimension() << ")\n";
        return 0;
    }
    for (const auto& [pq, v] : d.total.entries)
        if (counted.value_at(pq.first, pq.second) != v)
            std::cout << "mismatch at (" << rational_str(pq.first) << ","
                      << rational_str(pq.second) << "): main " << v << ", oracle "
                      << counted.value_at(pq.first, pq.second) << "\n";
    for (const auto& [pq, v] : counted.entries)
        if (d.total.value_at(pq.first, pq.second) == 0)
            std::cout << "mismatch at (" << rational_str(pq.first) << ","
                      << rational_str(pq.second) << "): main 0, oracle " << v << "\n";
    return 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact bigraded invariants of Landau-Ginzburg orbifolds"};
    app.require_subcommand(1);

    Invocation inv;
    auto add_common = [&inv](CLI::App* sub, bool computes) {
        sub->add_option("problem", inv.path, "problem file")->required();
        sub->add_option("--cap", inv.cap, "group closure element cap (overrides the file)");
        if (computes) {
            sub->add_option("--workers", inv.workers, "worker threads")
                ->check(CLI::PositiveNumber);
            sub->add_flag("--assert-nondegenerate", inv.assert_nondegenerate,
                          "require certified nondegeneracy");
        }
    };

    CLI::App* weights = app.add_subcommand("weights", "weight system and charges");
    add_common(weights, false);
    CLI::App* group = app.add_subcommand("group", "group order, classes, SL membership");
    add_common(group, false);
    CLI::App* sectors = app.add_subcommand("sectors", "per-sector ages and contributions");
    add_common(sectors, true);
    sectors->add_option("--scale", inv.scale, "multiply displayed exponents");
    CLI::App* poincare = app.add_subcommand("poincare", "bigraded Poincare polynomial");
    add_common(poincare, true);
    poincare->add_option("--scale", inv.scale, "multiply displayed exponents");
    CLI::App* hodge = app.add_subcommand("hodge", "table of bigraded dimensions");
    add_common(hodge, true);
    hodge->add_option("--scale", inv.scale, "multiply displayed exponents");
    hodge->add_option("--format", inv.format, "text or csv")
        ->check(CLI::IsMember({"text", "csv"}));
    CLI::App* verify = app.add_subcommand("verify", "run all structural identity checks");
    add_common(verify, true);
    verify->add_option("--seed", inv.seed, "seed for the truncation spot check");
    CLI::App* compare = app.add_subcommand("compare", "compare against a geometric table");
    add_common(compare, true);
    compare->add_option("--geometry", inv.geometry, "CSV table p,q,h")->required();
    CLI::App* oracle_cmp =
        app.add_subcommand("oracle-compare", "diff the main path against the counting oracle");
    add_common(oracle_cmp, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (app.got_subcommand(weights)) return run_weights(inv);
        if (app.got_subcommand(group)) return run_group(inv);
        if (app.got_subcommand(sectors)) return run_sectors(inv);
        if (app.got_subcommand(poincare)) return run_poincare(inv);
        if (app.got_subcommand(hodge)) return run_hodge(inv);
        if (app.got_subcommand(verify)) return run_verify(inv);
        if (app.got_subcommand(compare)) return run_compare(inv);
        if (app.got_subcommand(oracle_cmp)) return run_oracle_compare(inv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
