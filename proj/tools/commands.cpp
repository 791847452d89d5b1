// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <fstream>

#include <tatekit/frobenius.hpp>
#include <tatekit/gabber.hpp>
#include <tatekit/parse.hpp>
#include <tatekit/weierstrass.hpp>

namespace tatekit::cli
{

namespace
{

std::string exponent_string(const Norm &n)
{
    return n.is_zero() ? "inf" : to_string(n.exponent());
}

std::string join(const std::vector<std::uint32_t> &xs)
{
    std::string out;
    for (auto x : xs) {
        out += (out.empty() ? "" : ",") + std::to_string(x);
    }
    return out;
}

} // namespace

Report run_norm(std::uint32_t p, const NormArgs &a)
{
    const int given = !a.laurent.empty() + !a.hahn.empty() + !a.tate.empty();
    if (given != 1) {
        fail(ErrorKind::usage, "usage", "give exactly one of --x, --hahn, --f");
    }
    Report r;
    if (!a.laurent.empty()) {
        const auto x = parse_laurent(a.laurent, p);
        const auto n = norm(x);
        r.add("norm", to_string(n.value));
        r.add("exponent", exponent_string(n.value));
        r.add("bound", n.upper_bound ? "upper" : "exact");
    } else if (!a.hahn.empty()) {
        const auto x = parse_hahn(a.hahn, p);
        const auto n = norm(x);
        r.add("norm", to_string(n.value));
        r.add("exponent", n.value.is_zero() ? std::string("inf") : to_string(n.value.exponent()));
        r.add("bound", n.upper_bound ? "upper" : "exact");
    } else {
        const auto f = parse_tate(a.tate, p);
        const auto n = gauss_norm(f);
        r.add("norm", to_string(n));
        r.add("exponent", exponent_string(n));
        r.add("bound", "exact");
    }
    return r;
}

Report run_unit(std::uint32_t p, const std::string &f)
{
    Report r;
    r.add("unit", is_unit(parse_tate(f, p)));
    return r;
}

Report run_degree(std::uint32_t p, const DegreeArgs &a)
{
    const auto f = parse_tate(a.f, p);
    const int axis = a.axis.value_or(f.arity());
    if (axis < 1 || axis > f.arity()) {
        fail(ErrorKind::usage, "usage", "axis out of range");
    }
    const auto rep = distinguished_order(f, axis);
    Report r;
    r.add("axis", axis);
    r.add("order", rep.order);
    r.add("norm", to_string(rep.dominant_norm));
    r.add("distinguished", rep.is_distinguished);
    return r;
}

Report run_divide(std::uint32_t p, const DivideArgs &a)
{
    const auto f = parse_tate(a.f, p, 1);
    const auto g = parse_tate(a.g, p, 1);
    const auto res = w_divide(f, g, parse_norm(a.slack));
    Report r;
    r.add("q", to_string(res.quotient));
    r.add("r", to_string(res.remainder));
    r.add("residual", to_string(res.residual));
    return r;
}

Report run_distinguish(std::uint32_t p, const std::vector<std::string> &gs)
{
    int arity = 1;
    for (const auto &g : gs) {
        arity = std::max(arity, parse_tate(g, p).arity());
    }
    std::vector<TateElem> parsed;
    for (const auto &g : gs) {
        parsed.push_back(parse_tate(g, p, arity));
    }
    const auto sigma = find_distinguishing_automorphism(parsed);
    Report r;
    r.add("alphas", join(sigma.alphas));
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        const auto image = apply_automorphism(sigma, parsed[i]);
        r.add("order[" + std::to_string(i) + "]", distinguished_order(image, arity).order);
    }
    return r;
}

Report run_automorph(std::uint32_t p, const AutomorphArgs &a)
{
    const AutomorphismSpec sigma{a.alphas};
    const auto f = parse_tate(a.f, p, sigma.arity());
    Report r;
    r.add("result", to_string(apply_automorphism(sigma, f, a.inverse ? Direction::inverse : Direction::forward)));
    return r;
}

Report run_split(std::uint32_t p, const SplitArgs &a)
{
    if (a.f.empty() == a.x.empty()) {
        fail(ErrorKind::usage, "usage", "give exactly one of --f, --x");
    }
    std::optional<LaurentElem> twist;
    if (!a.twist.empty()) {
        twist = parse_laurent(a.twist, p);
    }
    const auto phi = phi_standard(p, twist);
    Report r;
    if (!a.x.empty()) {
        r.add("phi", to_string(phi_apply(phi, parse_laurent(a.x, p))));
    } else {
        r.add("result", to_string(lift_splitting_tate(phi, parse_tate(a.f, p))));
    }
    return r;
}

Report run_certify(std::uint32_t p, const CertifyArgs &a)
{
    std::optional<LaurentElem> twist;
    if (!a.twist.empty()) {
        twist = parse_laurent(a.twist, p);
    }
    const auto f = parse_tate(a.f, p, a.radii.empty() ? std::nullopt : std::optional<int>(a.radii.size()));
    ConvergenceCertificate cert;
    for (const auto &s : a.radii) {
        cert.log_radii.push_back(parse_rational(s));
    }
    cert.log_bound = parse_rational(a.bound);
    const auto out = lift_splitting_convergent(phi_standard(p, twist), f, cert);
    Report r;
    r.add("g", to_string(out.series));
    std::string radii;
    for (const auto &x : out.cert.log_radii) {
        radii += (radii.empty() ? "" : ",") + to_string(x);
    }
    r.add("log_radii", radii);
    r.add("log_bound", to_string(out.cert.log_bound));
    r.add("verified", verify_certificate(out.series, out.cert));
    return r;
}

Report run_diag_select(const DiagArgs &a)
{
    std::ifstream in(a.table);
    if (!in) {
        fail(ErrorKind::usage, "io", "cannot open " + a.table);
    }
    std::optional<std::vector<Rational>> floors;
    if (!a.floors.empty()) {
        floors.emplace();
        for (const auto &s : a.floors) {
            floors->push_back(parse_rational(s));
        }
    }
    const auto steps = select_diagonal_indices(read_norm_table_csv(in, floors), a.count);
    Report r;
    std::string indices;
    for (const auto &s : steps) {
        indices += (indices.empty() ? "" : ",") + std::to_string(s.m);
    }
    r.add("indices", indices);
    for (const auto &s : steps) {
        const auto key = "[" + std::to_string(s.i) + "]";
        r.add("coef_exp" + key, to_string(s.coefficient_exponent));
        r.add("floor_exp" + key, to_string(s.floor_exponent));
        r.add("dominated_exp" + key, s.dominated_exponent ? to_string(*s.dominated_exponent) : std::string("inf"));
    }
    return r;
}

Report run_gabber_reps(std::uint32_t p, int n)
{
    const auto ctx = make_gabber_context(p, n);
    Report r;
    for (int i = 1; i <= n; ++i) {
        const auto &s = ctx.reps[static_cast<std::size_t>(i - 1)];
        r.add("s[" + std::to_string(i) + "]", to_string(s));
        r.add("sig[" + std::to_string(i) + "]", to_string(gamma_mod_p(s, p)));
    }
    return r;
}

Report run_gabber_witness(std::uint32_t p, int n)
{
    const auto ctx = make_gabber_context(p, std::max(n, 1));
    Report r;
    r.add("f", to_string(witness_truncation(ctx, n)));
    return r;
}

Report run_gabber_distance(std::uint32_t p, const GabberArgs &a)
{
    const auto ctx = make_gabber_context(p, std::max(a.n, 1));
    const auto rep = distance_lower_bound_check(ctx, parse_hahn(a.g, p), a.n);
    Report r;
    r.add("i_g", rep.i_g);
    r.add("bound_exp", to_string(rep.bound_exp));
    r.add("actual_exp", to_string(rep.actual_exp));
    r.add("pass", rep.pass);
    return r;
}

} // namespace tatekit::cli
