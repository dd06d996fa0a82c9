// Python module: a string-in, string-out facade over the exact engine.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vbx/parser.hpp"
#include "vbx/recovery.hpp"

namespace py = pybind11;
using namespace vbx;

namespace {

std::vector<std::vector<std::string>> matrix_str(
    const std::vector<std::vector<Expression>>& m) {
    std::vector<std::vector<std::string>> out;
    for (const auto& row : m) {
        std::vector<std::string> r;
        for (const auto& e : row) r.push_back(e.str());
        out.push_back(std::move(r));
    }
    return out;
}

py::dict report_dict(const RecoveryReport& rep) {
    py::dict d;
    d["lagrangian"] = rep.lagrangian.str();
    d["kappa"] = rep.kappa.str();
    d["order"] = rep.order;
    d["verified"] = rep.verified;
    return d;
}

}  // namespace

PYBIND11_MODULE(vbx, m) {
    m.doc() = "Exact variational calculus on jet coordinates: source forms, "
              "Hilbert forms, Helmholtz conditions, and Lagrangian recovery.";

    py::register_exception<NotVariational>(m, "NotVariationalError");
    py::register_exception<NotSupported>(m, "NotSupportedError");
    // Registered last, so it runs first; anything it does not catch falls
    // through to the translators above, then to RuntimeError.
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ParseError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const InvalidArgument& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    m.def(
        "canonical",
        [](const std::string& text, int dim) {
            return parse_expression(text, dim).str();
        },
        py::arg("text"), py::arg("dim"),
        "Parse an expression and return its canonical spelling.");

    m.def(
        "total_derivative",
        [](const std::string& text, int dim) {
            return total_derivative(parse_expression(text, dim)).str();
        },
        py::arg("text"), py::arg("dim"),
        "Total derivative of a scalar along the jet prolongation.");

    m.def(
        "euler_lagrange",
        [](const std::string& lagrangian, int dim) {
            const SourceForm eps = euler_lagrange(parse_expression(lagrangian, dim), dim);
            std::vector<std::string> out;
            for (const auto& c : eps.components) out.push_back(c.str());
            return out;
        },
        py::arg("lagrangian"), py::arg("dim"),
        "Source form components epsilon_1..epsilon_dim of a Lagrangian.");

    m.def(
        "hilbert_form",
        [](const std::string& lagrangian, int dim) {
            return hilbert_form(parse_expression(lagrangian, dim)).str();
        },
        py::arg("lagrangian"), py::arg("dim"),
        "Hilbert form theta with dL = epsilon + d_T theta.");

    m.def(
        "variational_derivative",
        [](const std::string& text, int dim) {
            if (text.find("dq") != std::string::npos)
                return variational_derivative(parse_form(text, dim)).str();
            return variational_derivative(parse_expression(text, dim)).str();
        },
        py::arg("text"), py::arg("dim"),
        "Variational derivative of a scalar or of a differential form; form "
        "input is recognized by its differentials.");

    m.def(
        "helmholtz",
        [](const std::string& source, int dim) {
            const auto hs = helmholtz_sonin(parse_source_form(source, dim));
            py::dict d;
            d["variational"] = hs.all_zero();
            d["dq_dq"] = matrix_str(hs.dq_dq);
            d["dqdot_dq"] = matrix_str(hs.dqdot_dq);
            d["dqddot_dq"] = matrix_str(hs.dqddot_dq);
            d["dqdot_dqdot"] = matrix_str(hs.dqdot_dqdot);
            return d;
        },
        py::arg("source"), py::arg("dim"),
        "Helmholtz condition families of a second-order source form, given "
        "as a 1-form or as ';'-separated components.");

    m.def(
        "recover",
        [](const std::string& source, int dim) {
            return report_dict(recover_lagrangian(parse_source_form(source, dim)));
        },
        py::arg("source"), py::arg("dim"),
        "Reconstruct some Lagrangian of a variational source form.");

    m.def(
        "recover_first_order",
        [](const std::string& source, int dim) {
            return report_dict(recover_first_order(parse_source_form(source, dim)));
        },
        py::arg("source"), py::arg("dim"),
        "Reconstruct a first-order Lagrangian of a variational second-order "
        "source form.");

    m.def(
        "homogenize",
        [](const std::string& lagrangian, int dim) {
            return homogenize(parse_expression(lagrangian, dim), dim).str();
        },
        py::arg("lagrangian"), py::arg("dim"),
        "Pass to the parametric picture with coordinate 1 as the parameter.");

    m.def(
        "check_homogeneous",
        [](const std::string& lagrangian, int dim, int order) {
            const auto rep =
                check_homogeneous(parse_expression(lagrangian, dim), order);
            py::dict d;
            d["homogeneous"] = rep.homogeneous;
            d["scaling_residual"] = rep.scaling_residual.str();
            std::vector<std::string> higher;
            for (const auto& e : rep.higher_residuals) higher.push_back(e.str());
            d["higher_residuals"] = higher;
            return d;
        },
        py::arg("lagrangian"), py::arg("dim"), py::arg("order") = 1,
        "Test homogeneity of jet order `order` under the fundamental fields.");
}
