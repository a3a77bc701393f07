#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "gstlab/verification.hpp"

using namespace gstlab;

namespace {

int write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return 0;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file: " << path << "\n";
        return 2;
    }
    out << content;
    return 0;
}

Complex parse_point(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) return Complex(std::stod(s), 0.0);
    return Complex(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
}

std::map<std::string, double> parse_params(const std::vector<std::string>& kvs) {
    std::map<std::string, double> out;
    for (const std::string& kv : kvs) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ParameterError("--param expects key=value: " + kv);
        out[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stieltjes-lab: closed-form generalized Stieltjes transforms vs quadrature"};
    app.set_config("--config", "", "configuration file (key=value lines)");
    app.require_subcommand(1);

    RunConfig cfg;
    double tol_flag = -1.0;
    app.add_option("--tolerance", tol_flag, "override per-identity tolerances");
    app.add_option("--re-min", cfg.re_min, "grid: smallest Re z");
    app.add_option("--re-max", cfg.re_max, "grid: largest Re z");
    app.add_option("--re-step", cfg.re_step, "grid: Re z step");
    app.add_option("--im", cfg.im_values, "grid: Im z values");
    app.add_option("--budget", cfg.quad_budget, "quadrature abscissae budget");
    app.add_option("--output", cfg.output_path, "output file (default stdout)");
    app.add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", cfg.threads, "worker threads (0 = auto)");

    // verify
    auto* verify = app.add_subcommand("verify", "run an identity verification suite");
    std::string suite = "all";
    verify->add_option("--suite", suite, "suite name")->required();

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate a transform at points");
    std::string measure_id;
    double eval_lambda = 1.0;
    std::vector<std::string> zs;
    eval->add_option("--measure", measure_id, "measure identifier")->required();
    eval->add_option("--lambda", eval_lambda, "transform order");
    eval->add_option("--z", zs, "evaluation points re[,im]")->required();

    // table
    auto* table = app.add_subcommand("table", "grid sweep of one identity");
    std::string identity;
    std::vector<std::string> raw_params;
    table->add_option("--identity", identity, "identity name")->required();
    table->add_option("--param", raw_params, "identity parameters key=value");

    // expand
    auto* expand = app.add_subcommand("expand", "kernel expansion coefficients");
    double ex_lambda = 1.0, ex_gamma = 0.5, ex_beta = 0.5, ex_zre = 2.0, ex_zim = 0.0;
    int ex_nmax = 40;
    expand->add_option("--lambda", ex_lambda, "transform order");
    expand->add_option("--gamma", ex_gamma, "beta-measure gamma");
    expand->add_option("--beta", ex_beta, "beta-measure beta");
    expand->add_option("--z-re", ex_zre, "Re z");
    expand->add_option("--z-im", ex_zim, "Im z");
    expand->add_option("--n-max", ex_nmax, "highest coefficient index");

    // humbert
    auto* humbert = app.add_subcommand("humbert", "trinomial root residual map");
    int hu_d = 2;
    double hu_alpha = 0.0;
    double hu_re_min = -3.0, hu_re_max = 3.0, hu_re_step = 0.5;
    std::vector<double> hu_im = {1.0, 2.0, 4.0};
    humbert->add_option("--d", hu_d, "trinomial degree parameter");
    humbert->add_option("--alpha", hu_alpha, "functional exponent (0 = skip functional column)");
    humbert->add_option("--y-re-min", hu_re_min, "y grid: smallest Re");
    humbert->add_option("--y-re-max", hu_re_max, "y grid: largest Re");
    humbert->add_option("--y-re-step", hu_re_step, "y grid: Re step");
    humbert->add_option("--y-im", hu_im, "y grid: Im values");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (tol_flag > 0.0) cfg.tolerance = tol_flag;

    try {
        if (*verify) {
            if (!is_suite_name(suite)) {
                std::cerr << "error: unknown suite '" << suite << "'; expected one of: all";
                for (const std::string& s : suite_names()) std::cerr << ", " << s;
                std::cerr << "\n";
                return 2;
            }
            const std::vector<SuiteRow> rows = run_suite(suite, cfg);
            const std::string body = cfg.format == "json" ? rows_to_json(rows) : rows_to_csv(rows);
            const int rc = write_output(cfg.output_path, body);
            if (rc != 0) return rc;
            return all_pass(rows) ? 0 : 1;
        }

        if (*eval) {
            std::string body;
            nlohmann::ordered_json jrows = nlohmann::ordered_json::array();
            if (cfg.format == "csv")
                body = "z_re,z_im,value_re,value_im,err,method,status\n";
            const MeasureSpec m = parse_measure(measure_id);
            for (const std::string& zspec : zs) {
                const Complex z = parse_point(zspec);
                std::vector<std::pair<GstResult, std::string>> results;
                if (auto closed = closed_form_for(measure_id, eval_lambda, z))
                    results.push_back({*closed, "ok"});
                try {
                    results.push_back({gst_quadrature(eval_lambda, m, z, cfg.quad()), "ok"});
                } catch (const SupportError&) {
                    results.push_back({GstResult{}, "support_error"});
                }
                for (const auto& [r, status] : results) {
                    const char* method = r.method == GstMethod::closed_form ? "closed_form"
                                                                            : "quadrature";
                    if (cfg.format == "csv") {
                        body += format_sci(z.real()) + "," + format_sci(z.imag()) + "," +
                                format_sci(r.value.real()) + "," + format_sci(r.value.imag()) + "," +
                                format_sci(r.err_estimate) + "," + method + "," + status + "\n";
                    } else {
                        jrows.push_back({{"z_re", z.real()},
                                         {"z_im", z.imag()},
                                         {"value_re", r.value.real()},
                                         {"value_im", r.value.imag()},
                                         {"err", r.err_estimate},
                                         {"method", method},
                                         {"status", status}});
                    }
                }
            }
            if (cfg.format == "json") body = jrows.dump(2) + "\n";
            return write_output(cfg.output_path, body);
        }

        if (*table) {
            EvalGrid grid = cfg.grid();
            grid.exclude_real_ray(1.0);
            const std::vector<TableRow> rows =
                identity_table(identity, parse_params(raw_params), grid);
            return write_output(cfg.output_path, table_to_csv(rows));
        }

        if (*expand) {
            std::string body = "n,coeff_re,coeff_im\n";
            for (int n = 0; n <= ex_nmax; ++n) {
                const Complex c = kernel_expansion_coeff(ex_lambda, {ex_gamma, ex_beta}, n,
                                                         Complex(ex_zre, ex_zim));
                body += std::to_string(n) + "," + format_sci(c.real()) + "," +
                        format_sci(c.imag()) + "\n";
            }
            return write_output(cfg.output_path, body);
        }

        if (*humbert) {
            std::string body =
                "y_re,y_im,root_re,root_im,root_residual,series_residual,"
                "literal_series_residual,sector_2f1_residual,functional_residual,sector_ok\n";
            const EvalGrid grid =
                EvalGrid::rectangle(hu_re_min, hu_re_max, hu_re_step, hu_im);
            for (Complex y : grid.points) {
                std::string line = format_sci(y.real()) + "," + format_sci(y.imag());
                try {
                    const TrinomialRoot root = root_select(hu_d, y);
                    line += "," + format_sci(root.z.real()) + "," + format_sci(root.z.imag()) +
                            "," + format_sci(root.residual);
                    auto series_res = [&](bool alternating) {
                        try {
                            return format_sci(
                                std::abs(trinomial_root_series(hu_d, y, alternating) - root.z));
                        } catch (const Error&) {
                            return std::string("nan");
                        }
                    };
                    line += "," + series_res(false) + "," + series_res(true);
                    std::string sector = "nan";
                    int sector_ok = 0;
                    if (hu_d == 2) {
                        try {
                            sector = format_sci(std::abs(root_via_2f1_d2(y) - root.z));
                            sector_ok = 1;
                        } catch (const Error&) {
                        }
                    }
                    std::string functional = "nan";
                    if (hu_d == 2 && hu_alpha != 0.0 && y.imag() > 0.0) {
                        try {
                            functional = format_sci(
                                humbert_moment_functional_residual_d2(hu_alpha, y, cfg.quad()));
                        } catch (const Error&) {
                        }
                    }
                    line += "," + sector + "," + functional + "," + std::to_string(sector_ok);
                } catch (const Error&) {
                    line += ",nan,nan,nan,nan,nan,nan,nan,0";
                }
                body += line + "\n";
            }
            return write_output(cfg.output_path, body);
        }
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
