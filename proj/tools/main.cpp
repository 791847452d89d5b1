// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

// tatekit: command line front end for the Tate algebra toolkit.

#include <cstdlib>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include <tatekit/error.hpp>
#include <tatekit/gamma.hpp>
#include <tatekit/rational.hpp>

#include "commands.hpp"

using namespace tatekit;
using namespace tatekit::cli;

namespace
{

std::uint64_t default_seed()
{
    if (const char *env = std::getenv("TATEKIT_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::logic_error &) {
            fail(ErrorKind::usage, "usage", "TATEKIT_SEED must be an unsigned integer");
        }
    }
    return 20240601;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Exact arithmetic in Tate algebras over F_p((t)) and Hahn sums"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint32_t p = 2;
    std::string format_name = "text";
    app.add_option("--p", p, "Characteristic (a prime)");
    app.add_option("--format", format_name, "Output format")->check(CLI::IsMember({"text", "records"}));

    std::function<Report()> action;

    NormArgs norm_args;
    auto *norm_cmd = app.add_subcommand("norm", "Norm of a Laurent or Hahn element, Gauss norm of a series");
    norm_cmd->add_option("--x", norm_args.laurent, "Laurent literal");
    norm_cmd->add_option("--hahn", norm_args.hahn, "Hahn literal");
    norm_cmd->add_option("--f", norm_args.tate, "Tate series literal");
    norm_cmd->callback([&] { action = [&] { return run_norm(p, norm_args); }; });

    std::string unit_f;
    auto *unit_cmd = app.add_subcommand("unit", "Decide whether a series is a unit");
    unit_cmd->add_option("--f", unit_f)->required();
    unit_cmd->callback([&] { action = [&] { return run_unit(p, unit_f); }; });

    DegreeArgs degree_args;
    auto *degree_cmd = app.add_subcommand("degree", "Distinguished order along a variable");
    degree_cmd->add_option("--f", degree_args.f)->required();
    degree_cmd->add_option("--axis", degree_args.axis, "1-based variable index (default: last)");
    degree_cmd->callback([&] { action = [&] { return run_degree(p, degree_args); }; });

    DivideArgs divide_args;
    auto *divide_cmd = app.add_subcommand("divide", "Euclidean division in T_1");
    divide_cmd->add_option("--f", divide_args.f)->required();
    divide_cmd->add_option("--g", divide_args.g)->required();
    divide_cmd->add_option("--slack", divide_args.slack, "Target residual, e.g. e^-8 or 0");
    divide_cmd->callback([&] { action = [&] { return run_divide(p, divide_args); }; });

    std::vector<std::string> distinguish_gs;
    auto *distinguish_cmd = app.add_subcommand("distinguish", "Find an automorphism making inputs X_n-distinguished");
    distinguish_cmd->add_option("--g", distinguish_gs)->required();
    distinguish_cmd->callback([&] { action = [&] { return run_distinguish(p, distinguish_gs); }; });

    AutomorphArgs automorph_args;
    auto *automorph_cmd = app.add_subcommand("automorph", "Apply X_i -> X_i + X_n^alpha_i");
    automorph_cmd->add_option("--f", automorph_args.f)->required();
    automorph_cmd->add_option("--alpha", automorph_args.alphas)->delimiter(',')->required();
    automorph_cmd->add_flag("--inverse", automorph_args.inverse);
    automorph_cmd->callback([&] { action = [&] { return run_automorph(p, automorph_args); }; });

    SplitArgs split_args;
    auto *split_cmd = app.add_subcommand("split", "Apply the splitting phi or its lift to a series");
    split_cmd->add_option("--f", split_args.f, "Series for the lift");
    split_cmd->add_option("--x", split_args.x, "Element of k^{1/p} for phi");
    split_cmd->add_option("--twist", split_args.twist, "Laurent pre-multiplier");
    split_cmd->callback([&] { action = [&] { return run_split(p, split_args); }; });

    CertifyArgs certify_args;
    auto *certify_cmd = app.add_subcommand("certify", "Lift a certified convergent series");
    certify_cmd->add_option("--f", certify_args.f)->required();
    certify_cmd->add_option("--log-radius", certify_args.radii, "log r_j, one per variable")->delimiter(',')->required();
    certify_cmd->add_option("--log-bound", certify_args.bound, "log M")->required();
    certify_cmd->add_option("--twist", certify_args.twist);
    certify_cmd->callback([&] { action = [&] { return run_certify(p, certify_args); }; });

    DiagArgs diag_args;
    auto *diag_cmd = app.add_subcommand("diag-select", "Diagonal index selection on a norm table");
    diag_cmd->add_option("--table", diag_args.table, "CSV with header i,j,v")->required();
    diag_cmd->add_option("--floors", diag_args.floors, "Growth floor exponents")->delimiter(',');
    diag_cmd->add_option("--count", diag_args.count, "Required number of indices");
    diag_cmd->callback([&] { action = [&] { return run_diag_select(diag_args); }; });

    auto *gabber_cmd = app.add_subcommand("gabber", "Coset representatives and distance witnesses");
    gabber_cmd->require_subcommand(1);
    gabber_cmd->fallthrough();
    GabberArgs gabber_args;
    auto *reps_cmd = gabber_cmd->add_subcommand("reps", "Bounded coset representatives");
    reps_cmd->add_option("--N", gabber_args.n)->check(CLI::Range(0, 4096));
    reps_cmd->fallthrough();
    reps_cmd->callback([&] { action = [&] { return run_gabber_reps(p, gabber_args.n); }; });
    auto *witness_cmd = gabber_cmd->add_subcommand("witness", "Witness truncation f_N");
    witness_cmd->add_option("--N", gabber_args.n)->check(CLI::Range(0, 4096));
    witness_cmd->fallthrough();
    witness_cmd->callback([&] { action = [&] { return run_gabber_witness(p, gabber_args.n); }; });
    auto *distance_cmd = gabber_cmd->add_subcommand("distance", "Certified distance lower bound");
    distance_cmd->add_option("--N", gabber_args.n)->check(CLI::Range(1, 4096));
    distance_cmd->add_option("--g", gabber_args.g, "Hahn literal");
    distance_cmd->fallthrough();
    distance_cmd->callback([&] { action = [&] { return run_gabber_distance(p, gabber_args); }; });

    int selftest_samples = 50;
    std::optional<std::uint64_t> selftest_seed;
    int selftest_failures = 0;
    auto *selftest_cmd = app.add_subcommand("selftest", "Run the randomized invariant suites");
    selftest_cmd->add_option("--samples", selftest_samples)->check(CLI::Range(1, 100000));
    selftest_cmd->add_option("--seed", selftest_seed, "Overrides TATEKIT_SEED");
    selftest_cmd->callback([&] {
        action = [&] { return run_selftest(selftest_seed.value_or(default_seed()), selftest_samples, selftest_failures); };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ErrorKind::usage);
    }

    try {
        if (!is_prime(p)) {
            fail(ErrorKind::usage, "usage", "--p must be prime");
        }
        const Report report = action();
        report.print(std::cout, format_name == "records" ? Format::records : Format::text);
        return selftest_failures == 0 ? 0 : static_cast<int>(ErrorKind::internal);
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(e.kind());
    }
}
