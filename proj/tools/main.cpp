#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vbx/lagrangian.hpp"
#include "vbx/parser.hpp"
#include "vbx/recovery.hpp"

namespace {

using nlohmann::ordered_json;

// Thrown by handlers that already produced their output.
struct ExitWith {
    int code;
};

struct Output {
    std::string mode;
    int dim = 0;
    bool json = false;
    bool quiet = false;
    std::vector<std::pair<std::string, std::string>> lines;
    std::optional<bool> verified;

    void add(const std::string& key, const std::string& value) {
        lines.emplace_back(key, value);
    }

    void emit() const {
        if (json) {
            ordered_json doc;
            doc["mode"] = mode;
            doc["dim"] = dim;
            ordered_json result = ordered_json::array();
            for (const auto& [key, value] : lines)
                result.push_back(ordered_json{{"key", key}, {"expr", value}});
            doc["result"] = std::move(result);
            if (verified) doc["verified"] = *verified;
            std::cout << doc.dump() << "\n";
            return;
        }
        for (const auto& [key, value] : lines) {
            if (quiet) {
                std::cout << value << "\n";
            } else {
                std::cout << key << " = " << value << "\n";
            }
        }
        if (verified && !quiet) std::cout << "verified = " << (*verified ? "true" : "false") << "\n";
    }
};

std::string family_entry(const char* family, int i, int j) {
    return std::string(family) + "[" + std::to_string(i + 1) + "][" +
           std::to_string(j + 1) + "]";
}

void add_nonzero_entries(Output& out, const vbx::HelmholtzCoefficients& hs) {
    const std::pair<const char*, const std::vector<std::vector<vbx::Expression>>*>
        families[] = {{"dq_dq", &hs.dq_dq},
                      {"dqdot_dq", &hs.dqdot_dq},
                      {"dqddot_dq", &hs.dqddot_dq},
                      {"dqdot_dqdot", &hs.dqdot_dqdot}};
    for (const auto& [name, matrix] : families)
        for (int i = 0; i < hs.dim; ++i)
            for (int j = 0; j < hs.dim; ++j)
                if (!(*matrix)[i][j].is_zero())
                    out.add(family_entry(name, i, j), (*matrix)[i][j].str());
}

// Exit 2 report: name the obstruction before leaving.
[[noreturn]] void report_not_variational(Output out, const vbx::SourceForm& eps,
                                         const std::string& message) {
    std::cerr << "error: " << message << "\n";
    bool second_order = true;
    for (const auto& c : eps.components)
        if (c.max_order().value_or(0) > 2) second_order = false;
    if (second_order) {
        add_nonzero_entries(out, vbx::helmholtz_sonin(eps));
    } else {
        out.add("delta", vbx::variational_derivative(eps.to_form()).str());
    }
    out.emit();
    throw ExitWith{2};
}

void run_recovery(Output out, const vbx::SourceForm& eps, bool first_order) {
    vbx::RecoveryReport report;
    try {
        report = first_order ? vbx::recover_first_order(eps) : vbx::recover_lagrangian(eps);
    } catch (const vbx::NotVariational& e) {
        report_not_variational(std::move(out), eps, e.what());
    }
    if (!report.verified)
        throw vbx::InternalError("the recovered lagrangian failed verification");
    out.add("lagrangian", report.lagrangian.str());
    out.add("kappa", report.kappa.str());
    out.add("order", std::to_string(report.order));
    out.verified = true;
    out.emit();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact variational calculus for single-integral problems"};
    app.require_subcommand(1);

    int dim = 0;
    int order = 1;
    std::string lagrangian;
    std::string form;
    bool json = false;
    bool quiet = false;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--dim", dim, "number of dependent coordinates")->required();
        sub->add_flag("--json", json, "machine-readable output");
        sub->add_flag("--quiet", quiet, "print bare values only");
        return sub;
    };
    auto with_lagrangian = [&](CLI::App* sub) {
        common(sub)->add_option("--lagrangian", lagrangian, "lagrangian expression")
            ->required();
        return sub;
    };
    auto with_form = [&](CLI::App* sub) {
        common(sub)->add_option("--form", form,
                                "source form: components 'e1;e2;..' or a form with dq")
            ->required();
        return sub;
    };

    CLI::App* el = with_lagrangian(
        app.add_subcommand("el", "Euler-Lagrange source form of a lagrangian"));
    CLI::App* hilbert = with_lagrangian(
        app.add_subcommand("hilbert", "Hilbert form of a lagrangian"));
    CLI::App* delta = common(app.add_subcommand(
        "delta", "variational derivative of a lagrangian or a form"));
    delta->add_option("--lagrangian", lagrangian, "lagrangian expression");
    delta->add_option("--form", form, "differential form");
    CLI::App* helmholtz = with_form(app.add_subcommand(
        "helmholtz", "Helmholtz variationality test for a second-order source form"));
    CLI::App* recover = with_form(app.add_subcommand(
        "recover", "reconstruct a lagrangian from a variational source form"));
    CLI::App* recover_first = with_form(app.add_subcommand(
        "recover-first-order",
        "reconstruct a first-order lagrangian from a second-order source form"));
    CLI::App* homogenize = with_lagrangian(app.add_subcommand(
        "homogenize", "pass a first-order lagrangian to the homogeneous picture"));
    CLI::App* check_hom = with_lagrangian(app.add_subcommand(
        "check-homogeneous", "test homogeneity through the fundamental fields"));
    check_hom->add_option("--order", order, "jet order of the homogeneity test");

    try {
        app.parse(argc, argv);

        Output out;
        out.dim = dim;
        out.json = json;
        out.quiet = quiet;

        if (el->parsed()) {
            out.mode = "el";
            vbx::SourceForm eps =
                vbx::euler_lagrange(vbx::parse_expression(lagrangian, dim), dim);
            for (int i = 1; i <= dim; ++i)
                out.add("epsilon_" + std::to_string(i), eps.components[i - 1].str());
            out.emit();
        } else if (hilbert->parsed()) {
            out.mode = "hilbert";
            out.add("theta",
                    vbx::hilbert_form(vbx::parse_expression(lagrangian, dim)).str());
            out.emit();
        } else if (delta->parsed()) {
            out.mode = "delta";
            const bool has_l = !lagrangian.empty(), has_f = !form.empty();
            if (has_l == has_f)
                throw vbx::InvalidArgument(
                    "give exactly one of --lagrangian and --form");
            vbx::DifferentialForm result =
                has_l ? vbx::variational_derivative(vbx::parse_expression(lagrangian, dim))
                      : vbx::variational_derivative(vbx::parse_form(form, dim));
            out.add("delta", result.str());
            out.emit();
        } else if (helmholtz->parsed()) {
            out.mode = "helmholtz";
            vbx::HelmholtzCoefficients hs = vbx::helmholtz_sonin(vbx::parse_source_form(form, dim));
            out.add("variational", hs.all_zero() ? "true" : "false");
            add_nonzero_entries(out, hs);
            out.emit();
        } else if (recover->parsed()) {
            out.mode = "recover";
            run_recovery(std::move(out), vbx::parse_source_form(form, dim), false);
        } else if (recover_first->parsed()) {
            out.mode = "recover-first-order";
            run_recovery(std::move(out), vbx::parse_source_form(form, dim), true);
        } else if (homogenize->parsed()) {
            out.mode = "homogenize";
            out.add("homogenized",
                    vbx::homogenize(vbx::parse_expression(lagrangian, dim), dim).str());
            out.emit();
        } else if (check_hom->parsed()) {
            out.mode = "check-homogeneous";
            vbx::HomogeneityReport report =
                vbx::check_homogeneous(vbx::parse_expression(lagrangian, dim), order);
            out.add("homogeneous", report.homogeneous ? "true" : "false");
            out.add("scaling_residual", report.scaling_residual.str());
            for (size_t p = 0; p < report.higher_residuals.size(); ++p)
                out.add("residual_" + std::to_string(p + 2),
                        report.higher_residuals[p].str());
            out.emit();
        }
        return 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const ExitWith& e) {
        return e.code;
    } catch (const vbx::NotVariational& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const vbx::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const vbx::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const vbx::NotSupported& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const vbx::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
