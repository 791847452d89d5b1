// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <tatekit/frobenius.hpp>
#include <tatekit/gabber.hpp>
#include <tatekit/parse.hpp>
#include <tatekit/weierstrass.hpp>

namespace py = pybind11;
using namespace tatekit;

// Rational <-> fractions.Fraction (ints accepted on input).
namespace pybind11::detail
{

template <>
struct type_caster<Rational> {
    PYBIND11_TYPE_CASTER(Rational, const_name("fractions.Fraction"));

    bool load(handle src, bool)
    {
        if (!py::hasattr(src, "numerator") || !py::hasattr(src, "denominator")) {
            return false;
        }
        try {
            value = Rational(src.attr("numerator").cast<std::int64_t>(), src.attr("denominator").cast<std::int64_t>());
        } catch (const py::cast_error &) {
            return false;
        }
        return true;
    }

    static handle cast(const Rational &q, return_value_policy, handle)
    {
        static py::object fraction = py::module_::import("fractions").attr("Fraction");
        return fraction(q.numerator(), q.denominator()).release();
    }
};

} // namespace pybind11::detail

namespace
{

// Norms cross the boundary as the exponent v of e^{-v}; None is the zero norm.
std::optional<Rational> norm_exponent(const Norm &n)
{
    if (n.is_zero()) {
        return std::nullopt;
    }
    return n.exponent();
}

Norm to_norm(const std::optional<Rational> &v)
{
    return v ? Norm::from_exponent(*v) : Norm::zero();
}

py::dict exponent_dict(const ExponentVector &e)
{
    py::dict d;
    for (const auto &[i, c] : e.entries()) {
        d[py::int_(i)] = c;
    }
    return d;
}

ExponentVector exponent_from(const std::map<int, std::int64_t> &coords)
{
    return ExponentVector(std::vector<ExponentVector::Entry>(coords.begin(), coords.end()));
}

template <class Elem>
void bind_series_ops(py::class_<Elem> &c)
{
    c.def("__add__", [](const Elem &a, const Elem &b) { return add(a, b); })
        .def("__sub__", [](const Elem &a, const Elem &b) { return sub(a, b); })
        .def("__mul__", [](const Elem &a, const Elem &b) { return mul(a, b); })
        .def("__neg__", [](const Elem &a) { return negate(a); })
        .def(py::self == py::self)
        .def("__str__", [](const Elem &a) { return to_string(a); })
        .def("__repr__", [](const Elem &a) { return "<" + to_string(a) + ">"; })
        .def_property_readonly("p", &Elem::characteristic)
        .def_property_readonly("is_exact", &Elem::is_exact)
        .def("frobenius", [](const Elem &a) { return frobenius(a); })
        .def("pth_root", [](const Elem &a) { return pth_root(a); })
        .def("residue", [](const Elem &a) { return residue(a); });
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Exact arithmetic for valued fields of characteristic p, Tate algebras and Frobenius splittings.";

    static py::handle error = py::exception<Error>(m, "Error").release();
    py::register_exception_translator([](std::exception_ptr ep) {
        try {
            if (ep) {
                std::rethrow_exception(ep);
            }
        } catch (const Error &e) {
            py::object exc = py::reinterpret_borrow<py::object>(error)(e.what());
            exc.attr("kind") = static_cast<int>(e.kind());
            exc.attr("tag") = e.tag();
            PyErr_SetObject(error.ptr(), exc.ptr());
        }
    });

    py::class_<LaurentElem> laurent(m, "Laurent");
    laurent.def(py::init([](const std::string &text, std::uint32_t p) { return parse_laurent(text, p); }),
                py::arg("text"), py::arg("p"))
        .def_property_readonly("cutoff", [](const LaurentElem &x) { return x.cutoff(); })
        .def_property_readonly("terms",
                               [](const LaurentElem &x) {
                                   std::vector<std::pair<Rational, std::uint32_t>> out;
                                   for (const auto &t : x.terms()) {
                                       out.emplace_back(t.exponent, t.coeff);
                                   }
                                   return out;
                               })
        .def("norm_exponent", [](const LaurentElem &x) { return norm_exponent(norm(x).value); })
        .def("invert", [](const LaurentElem &x, const Rational &cutoff) { return invert(x, cutoff); },
             py::arg("cutoff"));
    bind_series_ops(laurent);

    py::class_<HahnSumElem> hahn(m, "Hahn");
    hahn.def(py::init([](const std::string &text, std::uint32_t p) { return parse_hahn(text, p); }), py::arg("text"),
             py::arg("p"))
        .def("norm_exponent", [](const HahnSumElem &x) -> std::optional<py::dict> {
            const auto n = norm(x).value;
            if (n.is_zero()) {
                return std::nullopt;
            }
            return exponent_dict(n.exponent());
        });
    bind_series_ops(hahn);

    py::class_<TateElem>(m, "Tate")
        .def(py::init([](const std::string &text, std::uint32_t p, std::optional<int> arity) {
                 return parse_tate(text, p, arity);
             }),
             py::arg("text"), py::arg("p"), py::arg("arity") = std::nullopt)
        .def("__add__", [](const TateElem &a, const TateElem &b) { return add(a, b); })
        .def("__sub__", [](const TateElem &a, const TateElem &b) { return sub(a, b); })
        .def("__mul__", [](const TateElem &a, const TateElem &b) { return mul(a, b); })
        .def("__pow__", [](const TateElem &a, std::uint32_t k) { return power(a, k); })
        .def(py::self == py::self)
        .def("__str__", [](const TateElem &f) { return to_string(f); })
        .def("__repr__", [](const TateElem &f) { return "<" + to_string(f) + ">"; })
        .def_property_readonly("p", &TateElem::characteristic)
        .def_property_readonly("arity", &TateElem::arity)
        .def_property_readonly("slack_exponent", [](const TateElem &f) { return norm_exponent(f.slack()); })
        .def("gauss_norm_exponent", [](const TateElem &f) { return norm_exponent(gauss_norm(f)); })
        .def("is_unit", [](const TateElem &f) { return is_unit(f); })
        .def("euclid_degree", [](const TateElem &f) { return euclid_degree(f); })
        .def(
            "distinguished_order",
            [](const TateElem &g, std::optional<int> axis) {
                const auto r = distinguished_order(g, axis.value_or(g.arity()));
                return py::make_tuple(r.order, r.is_distinguished);
            },
            py::arg("axis") = std::nullopt)
        .def("frobenius", [](const TateElem &f) { return frobenius(f); });

    m.def(
        "divide",
        [](const TateElem &f, const TateElem &g, std::optional<Rational> slack) {
            const auto r = w_divide(f, g, to_norm(slack));
            return py::make_tuple(r.quotient, r.remainder, norm_exponent(r.residual));
        },
        py::arg("f"), py::arg("g"), py::arg("slack_exponent") = std::nullopt,
        "Euclidean division in T_1; returns (q, r, residual exponent).");

    m.def(
        "gcd",
        [](const TateElem &f, const TateElem &g, std::optional<Rational> slack) {
            return w_gcd(f, g, to_norm(slack));
        },
        py::arg("f"), py::arg("g"), py::arg("slack_exponent") = std::nullopt);

    m.def(
        "find_distinguishing_automorphism",
        [](const std::vector<TateElem> &gs) { return find_distinguishing_automorphism(gs).alphas; }, py::arg("gs"));

    m.def(
        "automorph",
        [](const TateElem &f, const std::vector<std::uint32_t> &alphas, bool inverse) {
            return apply_automorphism(AutomorphismSpec{alphas}, f, inverse ? Direction::inverse : Direction::forward);
        },
        py::arg("f"), py::arg("alphas"), py::arg("inverse") = false);

    m.def(
        "phi",
        [](const LaurentElem &x, std::optional<LaurentElem> twist) {
            return phi_apply(phi_standard(x.characteristic(), std::move(twist)), x);
        },
        py::arg("x"), py::arg("twist") = std::nullopt);

    m.def(
        "split",
        [](const TateElem &f, std::optional<LaurentElem> twist) {
            return lift_splitting_tate(phi_standard(f.characteristic(), std::move(twist)), f);
        },
        py::arg("f"), py::arg("twist") = std::nullopt, "The lift Phi of the splitting phi.");

    m.def(
        "certify",
        [](const TateElem &f, const std::vector<Rational> &log_radii, const Rational &log_bound,
           std::optional<LaurentElem> twist) {
            const auto out = lift_splitting_convergent(phi_standard(f.characteristic(), std::move(twist)), f,
                                                       ConvergenceCertificate{log_radii, log_bound});
            return py::make_tuple(out.series, out.cert.log_radii, out.cert.log_bound);
        },
        py::arg("f"), py::arg("log_radii"), py::arg("log_bound"), py::arg("twist") = std::nullopt);

    m.def(
        "select_diagonal_indices",
        [](const std::map<std::pair<std::uint32_t, std::uint32_t>, Rational> &entries,
           std::optional<std::vector<Rational>> floors, std::optional<std::size_t> count) {
            const NormTable table = floors ? NormTable(entries, *floors) : NormTable(entries);
            py::list out;
            for (const auto &s : select_diagonal_indices(table, count)) {
                py::dict d;
                d["i"] = s.i;
                d["m"] = s.m;
                d["coefficient_exponent"] = s.coefficient_exponent;
                d["floor_exponent"] = s.floor_exponent;
                d["dominated_exponent"] = s.dominated_exponent;
                out.append(d);
            }
            return out;
        },
        py::arg("entries"), py::arg("floors") = std::nullopt, py::arg("count") = std::nullopt);

    m.def(
        "gabber_reps", [](std::uint32_t p, int count) {
            py::list out;
            for (const auto &s : make_gabber_context(p, count).reps) {
                out.append(exponent_dict(s));
            }
            return out;
        },
        py::arg("p") = 2, py::arg("count") = 8);

    m.def(
        "gabber_witness", [](int n, std::uint32_t p) { return witness_truncation(make_gabber_context(p, 8), n); },
        py::arg("n"), py::arg("p") = 2);

    m.def(
        "gabber_distance",
        [](const HahnSumElem &g, int n) {
            const auto r = distance_lower_bound_check(make_gabber_context(g.characteristic(), 8), g, n);
            py::dict d;
            d["i_g"] = r.i_g;
            d["bound_exp"] = exponent_dict(r.bound_exp);
            d["actual_exp"] = exponent_dict(r.actual_exp);
            d["pass"] = r.pass;
            return d;
        },
        py::arg("g"), py::arg("n"));

    m.def(
        "gamma_compare",
        [](const std::map<int, std::int64_t> &a, const std::map<int, std::int64_t> &b) {
            const auto c = gamma_compare(exponent_from(a), exponent_from(b));
            return c == std::strong_ordering::less ? -1 : (c == std::strong_ordering::greater ? 1 : 0);
        },
        py::arg("a"), py::arg("b"), "Sign of sum a_i/sqrt(p_i) - sum b_i/sqrt(p_i).");
}
