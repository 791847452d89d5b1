// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#ifndef TATEKIT_TOOLS_COMMANDS_HPP
#define TATEKIT_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "output.hpp"

namespace tatekit::cli
{

struct NormArgs {
    std::string laurent, hahn, tate;
};
struct DegreeArgs {
    std::string f;
    std::optional<int> axis;
};
struct DivideArgs {
    std::string f, g, slack = "e^-16";
};
struct AutomorphArgs {
    std::string f;
    std::vector<std::uint32_t> alphas;
    bool inverse = false;
};
struct SplitArgs {
    std::string f, x, twist;
};
struct CertifyArgs {
    std::string f, twist, bound;
    std::vector<std::string> radii;
};
struct DiagArgs {
    std::string table;
    std::vector<std::string> floors;
    std::optional<std::size_t> count;
};
struct GabberArgs {
    int n = 3;
    std::string g = "0";
};

Report run_norm(std::uint32_t p, const NormArgs &a);
Report run_unit(std::uint32_t p, const std::string &f);
Report run_degree(std::uint32_t p, const DegreeArgs &a);
Report run_divide(std::uint32_t p, const DivideArgs &a);
Report run_distinguish(std::uint32_t p, const std::vector<std::string> &gs);
Report run_automorph(std::uint32_t p, const AutomorphArgs &a);
Report run_split(std::uint32_t p, const SplitArgs &a);
Report run_certify(std::uint32_t p, const CertifyArgs &a);
Report run_diag_select(const DiagArgs &a);
Report run_gabber_reps(std::uint32_t p, int n);
Report run_gabber_witness(std::uint32_t p, int n);
Report run_gabber_distance(std::uint32_t p, const GabberArgs &a);

/// Runs the invariant suites; `failures` receives the number of failed checks.
Report run_selftest(std::uint64_t seed, int samples, int &failures);

} // namespace tatekit::cli

#endif
