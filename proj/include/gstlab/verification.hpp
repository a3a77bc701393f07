#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gstlab/humbert.hpp"
#include "gstlab/jacobi.hpp"
#include "gstlab/transforms.hpp"

namespace gstlab {

struct RunConfig {
    std::optional<double> tolerance; // overrides the per-identity defaults when set
    double re_min = -3.0;
    double re_max = 3.0;
    double re_step = 0.25;
    std::vector<double> im_values = {0.5, 1.0, 2.0};
    int quad_budget = 2000;
    std::string output_path; // empty writes to stdout
    std::string format = "csv";
    int threads = 0; // 0 = hardware concurrency (capped by STIELTJES_LAB_THREADS)

    EvalGrid grid() const;
    QuadraturePolicy quad() const { return {quad_budget, 12, 1e-11}; }
};

// One report line: an identity checked over a parameter set and grid.
struct SuiteRow {
    std::string identity;
    std::string params;
    std::size_t grid_size = 0;
    double max_residual = 0.0;
    double mean_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    double wall_ms = 0.0;
};

const std::vector<std::string>& suite_names(); // excluding "all"
bool is_suite_name(const std::string& name);
std::vector<SuiteRow> run_suite(const std::string& name, const RunConfig& cfg);
bool all_pass(const std::vector<SuiteRow>& rows);

std::string rows_to_csv(const std::vector<SuiteRow>& rows);
std::string rows_to_json(const std::vector<SuiteRow>& rows);

// 17 significant digits, scientific; round-trip safe for doubles.
std::string format_sci(double v);

// wigner | arcsine | bernoulli | free-poisson | beta:gamma=G,beta=B |
// kappa:lambda=L | bernoulli-power:lambda=L | kappa-conv:lambda=L
MeasureSpec parse_measure(const std::string& spec);

// Closed-form transform for a measure identifier when one exists.
std::optional<GstResult> closed_form_for(const std::string& spec, double lambda, Complex z);

// Deterministic index-ordered parallel map.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, int threads = 0);
int effective_threads(int requested);

struct TableRow {
    Complex z, lhs, rhs;
    double residual;
};

// Left/right sides of one identity over a grid; see identity_names().
std::vector<TableRow> identity_table(const std::string& identity,
                                     const std::map<std::string, double>& params,
                                     const EvalGrid& grid);
const std::vector<std::string>& identity_names();
std::string table_to_csv(const std::vector<TableRow>& rows);

} // namespace gstlab
