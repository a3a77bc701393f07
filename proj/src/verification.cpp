#include "gstlab/verification.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

namespace gstlab {

// ---------------------------------------------------------------------------
// plumbing
// ---------------------------------------------------------------------------

int effective_threads(int requested) {
    int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* cap = std::getenv("STIELTJES_LAB_THREADS")) {
        const int c = std::atoi(cap);
        if (c >= 1) n = std::min(n, c);
    }
    return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, int threads) {
    const int t = std::min<std::size_t>(effective_threads(threads), n);
    if (t <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (int i = 0; i < t; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::string format_sci(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

EvalGrid RunConfig::grid() const { return EvalGrid::rectangle(re_min, re_max, re_step, im_values); }

namespace {

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

SuiteRow make_row(const RunConfig& cfg, std::string identity, std::string params,
                  const std::vector<double>& residuals, double default_tol, double wall_ms) {
    SuiteRow row;
    row.identity = std::move(identity);
    row.params = std::move(params);
    row.grid_size = residuals.size();
    double sum = 0.0;
    for (double r : residuals) {
        row.max_residual = std::max(row.max_residual, r);
        sum += r;
    }
    row.mean_residual = residuals.empty() ? 0.0 : sum / static_cast<double>(residuals.size());
    row.tolerance = cfg.tolerance.value_or(default_tol);
    row.pass = row.max_residual <= row.tolerance;
    row.wall_ms = wall_ms;
    return row;
}

std::vector<double> sweep(const EvalGrid& grid, const std::function<double(Complex)>& fn,
                          int threads) {
    std::vector<double> out(grid.points.size(), 0.0);
    parallel_for(out.size(), [&](std::size_t i) { out[i] = fn(grid.points[i]); }, threads);
    return out;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// Fixed off-axis sample points for algebraic spot checks.
const std::vector<Complex>& sample_points() {
    static const std::vector<Complex> pts = {
        {2.5, 0.0},  {3.0, 2.0},   {1.5, 0.5},  {-2.0, 1.0},  {0.3, 1.2},
        {-0.7, 2.5}, {4.0, -3.0},  {1.2, 0.1},  {-1.4, -0.9}, {0.0, 1.7}};
    return pts;
}

const std::vector<Complex>& upper_half_points() {
    static const std::vector<Complex> pts = [] {
        std::vector<Complex> v;
        for (double re : {-1.5, -0.5, 0.5, 1.5, 2.5})
            for (double im : {0.5, 1.0, 2.0, 4.0}) v.emplace_back(re, im);
        return v;
    }();
    return pts;
}

// ---------------------------------------------------------------------------
// suites
// ---------------------------------------------------------------------------

std::vector<SuiteRow> suite_special_functions(const RunConfig& cfg) {
    std::vector<SuiteRow> rows;
    std::mt19937 rng(20160412u);
    auto uni = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };

    {
        Timer t;
        std::vector<Complex> as(200), bs(200), cs(200), zs(200);
        for (int i = 0; i < 200; ++i) {
            const double b = uni(0.25, 2.75);
            const double c = b + uni(0.25, 2.75);
            const double a = uni(-1.5, 3.0);
            Complex z;
            if (uni(0.0, 1.0) < 0.25) {
                z = Complex(uni(-2.2, 0.85), 0.0);
            } else {
                const double r = uni(0.15, 2.3);
                const double th = uni(0.12, std::numbers::pi - 0.12);
                const double sgn = uni(0.0, 1.0) < 0.5 ? 1.0 : -1.0;
                z = std::polar(r, sgn * th);
            }
            as[i] = a; bs[i] = b; cs[i] = c; zs[i] = z;
        }
        std::vector<double> res(200);
        parallel_for(res.size(), [&](std::size_t i) {
            const Complex oracle = euler_2f1_oracle(as[i], bs[i], cs[i], zs[i]);
            const Complex engine = gauss_2f1(as[i], bs[i], cs[i], zs[i]);
            res[i] = std::abs(engine - oracle) / (1.0 + std::abs(oracle));
        }, cfg.threads);
        rows.push_back(make_row(cfg, "2f1-vs-euler-oracle", "200 random admissible (a,b,c,z)", res,
                                1e-10, t.ms()));
    }

    auto draw_u = [&] {
        return std::polar(uni(0.05, 0.88), uni(0.0, 2.0 * std::numbers::pi));
    };
    {
        Timer t;
        std::vector<double> res;
        for (int i = 0; i < 100; ++i) {
            const Complex a(uni(-1.5, 2.5)), d(uni(-1.9, 1.9)), c(uni(0.4, 3.5));
            res.push_back(transform_linear(a, d, c, draw_u()));
        }
        rows.push_back(make_row(cfg, "linear-transform", "100 random (a,d,c,u)", res, 1e-11, t.ms()));
    }
    {
        Timer t;
        std::vector<double> res;
        for (int i = 0; i < 100; ++i) {
            const Complex a(uni(0.35, 2.4)), b(uni(-1.4, 2.4));
            res.push_back(transform_quadratic_0(a, b, draw_u()));
        }
        rows.push_back(make_row(cfg, "quadratic-transform-0", "100 random (a,b,u)", res, 1e-11, t.ms()));
    }
    {
        Timer t;
        std::vector<double> res;
        for (int i = 0; i < 100; ++i) {
            const Complex a(uni(-0.9, 1.6)), b(uni(0.4, 3.6));
            res.push_back(transform_quadratic_1(a, b, draw_u()));
        }
        rows.push_back(make_row(cfg, "quadratic-transform-1", "100 random (a,b,u)", res, 1e-11, t.ms()));
    }
    return rows;
}

std::vector<SuiteRow> suite_beta_closed(const RunConfig& cfg) {
    std::vector<SuiteRow> rows;
    EvalGrid grid = cfg.grid();
    grid.exclude_real_ray(1.0);
    const std::vector<double> lams = {0.5, 1.0, 1.5, 2.0, 2.5, 3.5};
    const std::vector<BetaParams> gbs = {{0.0, 0.0}, {0.5, 0.5}, {-0.5, -0.5}, {1.5, 0.5}, {0.3, 2.1}};

    for (const BetaParams& p : gbs) {
        const std::string ps = "gamma=" + fmt(p.gamma) + ",beta=" + fmt(p.beta) + ",lambda={0.5..3.5}";
        Timer t1;
        std::vector<double> r1, r2, r3;
        for (double lam : lams) {
            const MeasureSpec m = beta_measure(p);
            auto v1 = sweep(grid, [&](Complex z) {
                return std::abs(gst_beta_closed(lam, p, z).value -
                                gst_quadrature(lam, m, z, cfg.quad()).value);
            }, cfg.threads);
            r1.insert(r1.end(), v1.begin(), v1.end());
            auto v2 = sweep(grid, [&](Complex z) {
                return std::abs(gst_beta_closed_alt(lam, p, z).value -
                                gst_quadrature(lam, m, z, cfg.quad()).value);
            }, cfg.threads);
            r2.insert(r2.end(), v2.begin(), v2.end());
            auto v3 = sweep(grid, [&](Complex z) {
                return std::abs(gst_beta_closed(lam, p, z).value - gst_beta_closed_alt(lam, p, z).value);
            }, cfg.threads);
            r3.insert(r3.end(), v3.begin(), v3.end());
        }
        rows.push_back(make_row(cfg, "gst1-vs-quadrature", ps, r1, 1e-8, t1.ms()));
        rows.push_back(make_row(cfg, "gst2-vs-quadrature", ps, r2, 1e-8, 0.0));
        rows.push_back(make_row(cfg, "gst1-vs-gst2", ps, r3, 1e-10, 0.0));
    }

    for (double lam : {0.5, 1.0, 2.0, 3.7}) {
        Timer t;
        const VerificationSummary s =
            power_relation_check(lam, beta_measure({lam - 0.5, lam - 0.5}), wigner(), grid, cfg.quad());
        std::vector<double> res{s.max_residual};
        SuiteRow row = make_row(cfg, "wigner-power", "lambda=" + fmt(lam), res, 1e-8, t.ms());
        row.grid_size = s.count;
        row.mean_residual = s.mean_residual;
        rows.push_back(row);
    }

    for (double lam : {1.5, 2.0, 3.0}) {
        Timer t;
        const MeasureSpec m = beta_measure({lam - 1.5, lam - 1.5});
        auto res = sweep(grid, [&](Complex z) {
            const Complex rhs = stieltjes_arcsine(z) * cpow(stieltjes_wigner(z), lam - 1.0);
            return std::abs(gst_quadrature(lam, m, z, cfg.quad()).value - rhs);
        }, cfg.threads);
        rows.push_back(make_row(cfg, "arcsine-wigner-power", "lambda=" + fmt(lam), res, 1e-8, t.ms()));
    }
    return rows;
}

std::vector<SuiteRow> suite_prop1(const RunConfig& cfg) {
    std::vector<SuiteRow> rows;
    EvalGrid grid = cfg.grid();
    grid.exclude_real_ray(1.0);
    for (int k = 0; k <= 3; ++k) {
        Timer t;
        std::vector<double> res;
        std::vector<double> lams_used;
        for (double lam : {0.6, 1.0, 2.0, 3.7}) {
            const double gamma = lam - 0.5 - k;
            if (!(gamma > -1.0)) continue;
            lams_used.push_back(lam);
            const MeasureSpec m = beta_measure({gamma, gamma});
            auto v = sweep(grid, [&](Complex z) {
                return std::abs(gst_symmetric_beta_wigner_form(lam, k, z).value -
                                gst_quadrature(lam, m, z, cfg.quad()).value);
            }, cfg.threads);
            res.insert(res.end(), v.begin(), v.end());
        }
        std::string ps = "k=" + fmt(k) + ",lambda={";
        for (std::size_t i = 0; i < lams_used.size(); ++i)
            ps += (i ? "," : "") + fmt(lams_used[i]);
        ps += "}";
        rows.push_back(make_row(cfg, "symmetric-beta-closed-vs-quadrature", ps, res, 1e-8, t.ms()));
    }
    {
        Timer t;
        std::vector<double> res;
        for (Complex z : sample_points()) {
            const double lam = 2.5;
            res.push_back(std::abs(gst_symmetric_beta_wigner_form(lam, 0, z).value -
                                   cpow(stieltjes_wigner(z), lam)));
        }
        rows.push_back(make_row(cfg, "k0-reduces-to-wigner-power", "lambda=2.5", res, 1e-12, t.ms()));
    }
    {
        Timer t;
        std::vector<double> res;
        for (Complex z : sample_points()) {
            const double lam = 2.5;
            const Complex rhs = stieltjes_arcsine(z) * cpow(stieltjes_wigner(z), lam - 1.0);
            res.push_back(std::abs(gst_symmetric_beta_wigner_form(lam, 1, z).value - rhs));
        }
        rows.push_back(make_row(cfg, "k1-reduces-to-arcsine-form", "lambda=2.5", res, 1e-12, t.ms()));
    }
    {
        Timer t;
        std::vector<double> res;
        for (Complex z : sample_points()) {
            const Complex g = stieltjes_wigner(z);
            res.push_back(std::abs(1.0 - 0.25 * g * g - sqrt_z2m1(z) * g));
        }
        rows.push_back(make_row(cfg, "wigner-arcsine-relation", "1 - G^2/4 = G/G_as", res, 1e-13, t.ms()));
    }
    return rows;
}

std::vector<SuiteRow> suite_prop2(const RunConfig& cfg) {
    std::vector<SuiteRow> rows;
    EvalGrid grid = cfg.grid();
    grid.exclude_real_ray(1.0);
    for (int k = 1; k <= 3; ++k) {
        for (bool swapped : {false, true}) {
            Timer t;
            std::vector<double> res;
            for (double lam : {static_cast<double>(k), k + 0.5, k + 2.0}) {
                const BetaParams p = swapped ? BetaParams{lam - 0.5 - k, lam - 0.5}
                                             : BetaParams{lam - 0.5, lam - 0.5 - k};
                const MeasureSpec m = beta_measure(p);
                auto v = sweep(grid, [&](Complex z) {
                    return std::abs(gst_nonsymmetric_beta_wigner_form(lam, k, swapped, z).value -
                                    gst_quadrature(lam, m, z, cfg.quad()).value);
                }, cfg.threads);
                res.insert(res.end(), v.begin(), v.end());
            }
            const std::string ps = "k=" + fmt(k) + ",swapped=" + (swapped ? "1" : "0") +
                                   ",lambda={k,k+0.5,k+2}";
            rows.push_back(
                make_row(cfg, "nonsymmetric-beta-closed-vs-quadrature", ps, res, 1e-8, t.ms()));
        }
    }
    {
        Timer t;
        std::vector<double> res;
        for (Complex z : sample_points()) {
            const Complex g = stieltjes_wigner(z);
            res.push_back(std::abs((1.0 + 0.5 * g) * (1.0 + 0.5 * g) - (z + 1.0) * g));
        }
        rows.push_back(make_row(cfg, "wigner-square-relation", "(1+G/2)^2 = (z+1)G", res, 1e-13, t.ms()));
    }
    {
        Timer t;
        std::vector<double> res;
        for (Complex z : sample_points()) {
            const Complex g = stieltjes_wigner(z);
            res.push_back(std::abs(1.0 + 0.25 * g * g - z * g));
        }
        rows.push_back(make_row(cfg, "wigner-quadratic-relation", "1 + G^2/4 = zG", res, 1e-13, t.ms()));
    }
    return rows;
}

std::vector<SuiteRow> suite_bernoulli(const RunConfig& cfg) {
    std::vector<SuiteRow> rows;
    EvalGrid grid = cfg.grid();
    grid.exclude_real_ray(1.0);
    const std::vector<double> lams = {1.0, 1.5, 2.0, 3.0, 3.5};

    {
        Timer t;
        std::vector<double> res;
        for (double lam : lams) {
            const MeasureSpec m = bernoulli_power_measure(lam);
            const double mass = integrate(m, [](double) { return Complex(1.0); }, cfg.quad())
                                    .value.real();
            res.push_back(std::abs(mass - 1.0));
        }
        rows.push_back(make_row(cfg, "normalization", "lambda={1,1.5,2,3,3.5}", res, 1e-8, t.ms()));
    }
    {
        Timer t;
        std::vector<double> res;
        for (double lam : {1.0, 1.5, 2.0, 3.0}) {
            const MeasureSpec m = bernoulli_power_measure(lam);
            for (int k = 1; k <= 10; ++k) {
                const double expected = pochhammer(lam, k) / pochhammer(lam, 2 * k) *
                                        std::exp(std::lgamma(2.0 * k + 1.0) - std::lgamma(k + 1.0));
                const double got = moment(m, 2 * k, cfg.quad());
                res.push_back(std::abs(got - expected) / std::abs(expected));
            }
        }
        rows.push_back(
            make_row(cfg, "even-moments", "lambda={1,1.5,2,3}, k<=10, relative", res, 1e-7, t.ms()));
    }
    for (double lam : lams) {
        Timer t;
        auto res = sweep(grid, [&](Complex z) { return bernoulli_power_residual(lam, z, cfg.quad()); },
                         cfg.threads);
        rows.push_back(make_row(cfg, "bernoulli-power-identity", "lambda=" + fmt(lam), res, 1e-8, t.ms()));
    }
    {
        Timer t;
        double bad = 1.0;
        try {
            bernoulli_power_measure(0.9);
        } catch (const ParameterError&) {
            bad = 0.0;
        }
        rows.push_back(make_row(cfg, "rejects-lambda-below-one", "lambda=0.9", {bad}, 0.5, t.ms()));
    }
    return rows;
}

std::vector<SuiteRow> suite_shrinkage(const RunConfig& cfg) {
    std::vector<SuiteRow> rows;
    EvalGrid grid = cfg.grid();
    grid.exclude_real_ray(1.0);
    for (double p : {0.3, 0.5, 0.7}) {
        for (double lam : {1.0, 2.0, 4.0}) {
            Timer t;
            auto res = sweep(grid, [&](Complex z) { return shrinkage_residual(lam, p, z, cfg.quad()); },
                             cfg.threads);
            rows.push_back(make_row(cfg, "shrinkage-power-identity",
                                    "p=" + fmt(p) + ",lambda=" + fmt(lam), res, 1e-9, t.ms()));
        }
    }
    for (double lam : {1.0, 2.0, 3.0, 4.0}) {
        Timer t;
        const MeasureSpec m = beta_measure({0.5 * lam - 1.0, 0.5 * lam - 1.0});
        auto res = sweep(grid, [&](Complex z) {
            return std::abs(gst_quadrature(lam, m, z, cfg.quad()).value -
                            cpow(stieltjes_arcsine(z), lam));
        }, cfg.threads);
        rows.push_back(
            make_row(cfg, "symmetric-half-power-display", "p=0.5,lambda=" + fmt(lam), res, 1e-9, t.ms()));
    }
    for (double p : {0.3, 0.5, 0.7}) {
        Timer t;
        const MeasureSpec m = beta_measure({p - 1.0, -p});
        auto res = sweep(grid, [&](Complex z) {
            const Complex rhs = std::exp((p - 1.0) * std::log(z - 1.0) - p * std::log(z + 1.0));
            return std::abs(gst_quadrature(1.0, m, z, cfg.quad()).value - rhs);
        }, cfg.threads);
        rows.push_back(make_row(cfg, "ordinary-transform-closed-form", "p=" + fmt(p), res, 1e-10, t.ms()));
    }
    return rows;
}

std::vector<SuiteRow> suite_free_poisson(const RunConfig& cfg) {
    std::vector<SuiteRow> rows;
    for (double lam : {1.0, 2.0}) {
        Timer t;
        std::vector<double> dq(upper_half_points().size()), cd(upper_half_points().size());
        parallel_for(dq.size(), [&](std::size_t i) {
            const FreePoissonResiduals r =
                free_poisson_residuals(lam, upper_half_points()[i], cfg.quad());
            dq[i] = r.double_quadrature;
            cd[i] = r.closed_density;
        }, cfg.threads);
        rows.push_back(make_row(cfg, "convolution-power-double-quadrature", "lambda=" + fmt(lam), dq,
                                1e-7, t.ms()));
        rows.push_back(
            make_row(cfg, "convolution-power-closed-density", "lambda=" + fmt(lam), cd, 1e-8, 0.0));
    }
    const std::vector<Complex> pts = {{2.0, 1.0}, {0.5, 1.5}, {-1.0, 1.0}, {3.0, 0.5}, {0.0, 2.0}};
    for (const char* name : {"uniform", "wigner"}) {
        for (double lam : {1.0, 2.0}) {
            Timer t;
            const MeasureSpec m =
                std::string(name) == "uniform" ? beta_measure({0.0, 0.0}) : wigner();
            std::vector<double> res(pts.size());
            parallel_for(pts.size(), [&](std::size_t i) {
                res[i] = kappa_reduction_residual(lam, m, pts[i]);
            }, cfg.threads);
            rows.push_back(make_row(cfg, "kappa-reduction",
                                    std::string("mu=") + name + ",lambda=" + fmt(lam), res, 1e-7,
                                    t.ms()));
        }
    }
    {
        Timer t;
        std::vector<double> res;
        for (Complex z : sample_points()) {
            if (z.imag() == 0.0) continue;
            const Complex a = 2.0 / (z + sqrt_zzm1(z));
            const Complex b = 2.0 * (z - std::sqrt((z - 0.5) * (z - 0.5) - 0.25)) / z;
            res.push_back(std::abs(a - b));
        }
        rows.push_back(make_row(cfg, "free-poisson-transform-forms", "two closed forms", res, 1e-13,
                                t.ms()));
    }
    for (double lam : {1.0, 2.5}) {
        Timer t;
        std::vector<double> res;
        const MeasureSpec m = kappa_convolution_density(lam);
        for (int k = 1; k <= 6; ++k) {
            const double expected = pochhammer(0.5 * lam, k) / pochhammer(lam, k) *
                                    pochhammer(0.5 * (lam + 1.0), k) / pochhammer(lam + 1.0, k);
            res.push_back(std::abs(moment(m, k, cfg.quad()) - expected) / expected);
        }
        rows.push_back(make_row(cfg, "kappa-conv-density-moments", "lambda=" + fmt(lam) + ", k<=6",
                                res, 1e-9, t.ms()));
    }
    return rows;
}

std::vector<SuiteRow> suite_cohl(const RunConfig& cfg) {
    std::vector<SuiteRow> rows;
    const std::vector<Complex> zs = {{2.5, 0.0}, {3.0, 1.0}, {-0.5, 2.0}, {1.0, 2.2}};
    const std::vector<BetaParams> gbs = {{0.5, 0.5}, {0.3, 2.1}};
    std::vector<double> xs;
    for (int i = 0; i <= 100; ++i) xs.push_back(-1.0 + 0.02 * i);

    auto sup_err = [&](double lam, const BetaParams& p, Complex z, int n_max) {
        // reuse the coefficient list across x
        std::vector<Complex> coeff(n_max + 1);
        for (int n = 0; n <= n_max; ++n) coeff[n] = kernel_expansion_coeff(lam, p, n, z);
        double worst = 0.0;
        for (double x : xs) {
            Complex sum = 0.0;
            for (int n = 0; n <= n_max; ++n) sum += coeff[n] * jacobi_poly({p.gamma, p.beta, n}, x);
            worst = std::max(worst, std::abs(sum - cpow(z - x, -lam)));
        }
        return worst;
    };

    for (const BetaParams& p : gbs) {
        for (double lam : {1.0, 2.0}) {
            Timer t;
            std::vector<double> res(zs.size());
            parallel_for(zs.size(), [&](std::size_t i) { res[i] = sup_err(lam, p, zs[i], 40); },
                         cfg.threads);
            rows.push_back(make_row(cfg, "kernel-reconstruction",
                                    "lambda=" + fmt(lam) + ",gamma=" + fmt(p.gamma) + ",beta=" +
                                        fmt(p.beta) + ",n_max=40",
                                    res, 1e-8, t.ms()));
        }
    }
    {
        Timer t;
        std::vector<double> viol;
        const BetaParams p{0.5, 0.5};
        const Complex z{2.5, 0.0};
        double prev = -1.0;
        for (int n = 5; n <= 40; n += 5) {
            const double e = sup_err(1.0, p, z, n);
            if (prev >= 0.0 && e > prev * 1.05 + 1e-13) viol.push_back(e - prev);
            prev = e;
        }
        if (viol.empty()) viol.push_back(0.0);
        rows.push_back(make_row(cfg, "truncation-error-monotone", "lambda=1,gamma=beta=0.5,z=2.5",
                                viol, 1e-12, t.ms()));
    }
    {
        Timer t;
        std::vector<double> res;
        for (const BetaParams& p : gbs) {
            const MeasureSpec m = beta_measure(p);
            for (double lam : {1.0, 2.0}) {
                for (Complex z : zs) {
                    const Complex proj =
                        integrate(m, [&](double x) {
                            return kernel_reconstruct(lam, p, z, x, {24});
                        }, cfg.quad()).value;
                    res.push_back(std::abs(proj - gst_beta_closed(lam, p, z).value));
                }
            }
        }
        rows.push_back(make_row(cfg, "projection-reproduces-closed-form", "n_max=24", res, 1e-9,
                                t.ms()));
    }
    {
        Timer t;
        std::mt19937 rng(271828u);
        std::uniform_real_distribution<double> par(-0.9, 2.5), xdist(-1.0, 1.0);
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const double g = par(rng), b = par(rng);
            for (int n = 0; n <= 20; ++n) {
                const double x = xdist(rng);
                // three-term recurrence, independent of the series evaluation
                double pm1 = 1.0;
                double pcur = 0.5 * (g + b + 2.0) * x + 0.5 * (g - b);
                if (n == 0) pcur = 1.0;
                else {
                    for (int m = 2; m <= n; ++m) {
                        const double a1 = 2.0 * m * (m + g + b) * (2.0 * m + g + b - 2.0);
                        const double a2 = (2.0 * m + g + b - 1.0) * (g * g - b * b);
                        const double a3 = (2.0 * m + g + b - 2.0) * (2.0 * m + g + b - 1.0) *
                                          (2.0 * m + g + b);
                        const double a4 = 2.0 * (m + g - 1.0) * (m + b - 1.0) * (2.0 * m + g + b);
                        const double next = ((a2 + a3 * x) * pcur - a4 * pm1) / a1;
                        pm1 = pcur;
                        pcur = next;
                    }
                }
                worst = std::max(worst, std::abs(jacobi_poly({g, b, n}, x) - pcur));
            }
        }
        rows.push_back(make_row(cfg, "recurrence-oracle", "random (gamma,beta), n<=20", {worst},
                                1e-11, t.ms()));
    }
    return rows;
}

std::vector<SuiteRow> suite_humbert(const RunConfig& cfg) {
    std::vector<SuiteRow> rows;
    // 50-point upper-half grid with |y| >= 2
    std::vector<Complex> ys;
    for (int i = 0; i < 50; ++i) {
        const double th = 0.15 + (std::numbers::pi - 0.3) * i / 49.0;
        const double r = 2.0 + 0.12 * i;
        ys.push_back(std::polar(r, th));
    }

    for (int d = 1; d <= 4; ++d) {
        Timer t;
        std::vector<double> res(ys.size());
        parallel_for(ys.size(), [&](std::size_t i) { res[i] = root_select(d, ys[i]).residual; },
                     cfg.threads);
        rows.push_back(make_row(cfg, "trinomial-root-residual", "d=" + fmt(d), res, 1e-10, t.ms()));
    }
    for (int d : {2, 3, 4}) {
        Timer t;
        std::vector<double> res;
        for (int i = 0; i < 10; ++i) {
            const Complex y = ys[i * 5];
            res.push_back(std::abs(trinomial_root_series(d, y) - root_select(d, y).z));
        }
        rows.push_back(make_row(cfg, "root-series-vs-root-finding", "d=" + fmt(d), res, 1e-9, t.ms()));
    }
    {
        Timer t;
        std::vector<double> res;
        int skipped = 0;
        for (std::size_t i = 0; i < ys.size(); i += 2) {
            try {
                const Complex r = root_via_2f1_d2(ys[i]);
                res.push_back(std::abs(r - root_select(2, ys[i]).z));
            } catch (const SectorError&) {
                ++skipped;
            }
        }
        rows.push_back(make_row(cfg, "2f1-root-agreement-d2",
                                "25 points, skipped=" + fmt(skipped), res, 1e-10, t.ms()));
    }
    for (double alpha : {1.0, 2.5}) {
        Timer t;
        std::vector<double> res;
        for (const Complex y : {Complex(0.0, 5.0), Complex(1.0, 3.0), Complex(-2.0, 2.5),
                                Complex(0.5, 4.0), Complex(-1.0, 6.0)})
            res.push_back(humbert_moment_functional_residual_d2(alpha, y, cfg.quad()));
        rows.push_back(
            make_row(cfg, "moment-functional-identity-d2", "alpha=" + fmt(alpha), res, 1e-8, t.ms()));
    }
    for (double alpha : {1.0, 2.0}) {
        Timer t;
        std::vector<double> res;
        for (const Complex z : {Complex(0.0, 0.1), Complex(0.05, 0.05), Complex(0.12, 0.06),
                                Complex(0.0, 0.2), Complex(-0.1, 0.15)})
            res.push_back(humbert_normalization_residual({alpha, 2}, z, cfg.quad()));
        rows.push_back(
            make_row(cfg, "generating-normalization-d2", "alpha=" + fmt(alpha), res, 1e-7, t.ms()));
    }
    {
        Timer t;
        std::vector<double> res(ys.size());
        parallel_for(ys.size(), [&](std::size_t i) {
            res[i] = std::abs(2.0 * root_select(1, ys[i]).z - stieltjes_wigner(ys[i]));
        }, cfg.threads);
        rows.push_back(make_row(cfg, "wigner-reduction-d1", "50 points", res, 1e-10, t.ms()));
    }
    {
        Timer t;
        std::vector<double> res;
        for (double alpha : {0.5, 1.0, 2.0}) {
            for (double x : {-0.9, 0.0, 0.4}) {
                const std::vector<double> h = humbert_coeffs({alpha, 1}, x, 10);
                for (int n = 0; n <= 10; ++n)
                    res.push_back(std::abs(h[n] - ultraspherical_poly(alpha, n, x)));
            }
        }
        rows.push_back(make_row(cfg, "ultraspherical-reduction-d1", "alpha={0.5,1,2}", res, 1e-10,
                                t.ms()));
    }
    {
        Timer t;
        std::vector<double> res;
        for (int d : {1, 2, 3}) {
            for (double alpha : {0.7, 1.5}) {
                for (double x : {-0.6, 0.2, 0.9}) {
                    const std::vector<double> h = humbert_coeffs({alpha, d}, x, 60);
                    for (double th : {0.3, 1.7, 3.9}) {
                        const Complex z = std::polar(0.1, th);
                        Complex sum = 0.0, zp = 1.0;
                        for (int n = 0; n <= 60; ++n) {
                            sum += h[n] * zp;
                            zp *= z;
                        }
                        const Complex base = 1.0 - (d + 1.0) * x * z + ipow(z, d + 1);
                        res.push_back(std::abs(sum - cpow(base, -alpha)));
                    }
                }
            }
        }
        rows.push_back(make_row(cfg, "generating-series-resubstitution", "|z|=0.1, N=60", res, 1e-10,
                                t.ms()));
    }
    return rows;
}

std::vector<SuiteRow> suite_global(const RunConfig& cfg) {
    std::vector<SuiteRow> rows;
    EvalGrid grid = cfg.grid();
    grid.exclude_real_ray(1.0);

    {
        Timer t;
        std::vector<double> res;
        struct Named {
            const char* id;
            std::function<Complex(Complex)> closed;
        };
        const std::vector<Named> named = {
            {"wigner", [](Complex z) { return stieltjes_wigner(z); }},
            {"arcsine", [](Complex z) { return stieltjes_arcsine(z); }},
            {"bernoulli", [](Complex z) { return stieltjes_bernoulli(z); }},
            {"free-poisson", [](Complex z) { return stieltjes_free_poisson(z); }},
            {"kappa:lambda=2", [](Complex z) { return std::log(z) - std::log(z - 1.0); }},
            {"beta:gamma=0.3,beta=2.1",
             [](Complex z) { return gst_beta_closed(1.0, {0.3, 2.1}, z).value; }},
        };
        for (const Named& nm : named) {
            const MeasureSpec m = parse_measure(nm.id);
            auto v = sweep(grid, [&](Complex z) {
                return std::abs(gst_quadrature(1.0, m, z, cfg.quad()).value - nm.closed(z));
            }, cfg.threads);
            res.insert(res.end(), v.begin(), v.end());
        }
        rows.push_back(make_row(cfg, "lambda1-reduction", "6 measures", res, 1e-10, t.ms()));
    }
    {
        Timer t;
        std::vector<double> res;
        for (const char* id : {"wigner", "beta:gamma=0.3,beta=2.1", "bernoulli-power:lambda=2"}) {
            const MeasureSpec m = parse_measure(id);
            for (double lam : {0.5, 1.7}) {
                for (Complex z : upper_half_points()) {
                    const Complex a = gst_quadrature(lam, m, std::conj(z), cfg.quad()).value;
                    const Complex b = std::conj(gst_quadrature(lam, m, z, cfg.quad()).value);
                    res.push_back(std::abs(a - b));
                }
            }
        }
        rows.push_back(make_row(cfg, "conjugation-symmetry", "3 measures, lambda={0.5,1.7}", res,
                                1e-13, t.ms()));
    }
    {
        Timer t;
        std::vector<double> res;
        const Complex z(0.0, 1e4);
        for (const char* id : {"wigner", "bernoulli", "free-poisson", "beta:gamma=0.3,beta=2.1"}) {
            const MeasureSpec m = parse_measure(id);
            for (double lam : {0.5, 1.0, 2.0, 3.5})
                res.push_back(std::abs(cpow(z, lam) * gst_quadrature(lam, m, z, cfg.quad()).value -
                                       1.0));
        }
        rows.push_back(make_row(cfg, "decay-normalization", "|z|=1e4", res, 1e-3, t.ms()));
    }
    {
        Timer t;
        std::mt19937 rng(314159u);
        std::uniform_real_distribution<double> redist(-3.0, 3.0), imdist(0.05, 4.0);
        std::vector<Complex> pts(200);
        for (Complex& z : pts) z = Complex(redist(rng), imdist(rng));
        std::vector<double> res;
        for (const char* id : {"wigner", "bernoulli", "free-poisson"}) {
            const MeasureSpec m = parse_measure(id);
            std::vector<double> v(pts.size());
            parallel_for(pts.size(), [&](std::size_t i) {
                const Complex g = gst_quadrature(1.0, m, pts[i], cfg.quad()).value;
                v[i] = (std::sqrt(g) / std::sqrt(pts[i])).imag();
            }, cfg.threads);
            res.insert(res.end(), v.begin(), v.end());
        }
        rows.push_back(make_row(cfg, "nevanlinna-sign", "sqrt(G)/sqrt(z), 200 points x 3 measures",
                                res, 0.0, t.ms()));
    }
    return rows;
}

} // namespace

// ---------------------------------------------------------------------------
// dispatch and serialization
// ---------------------------------------------------------------------------

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "special-functions", "beta-closed", "prop1",        "prop2", "bernoulli",
        "shrinkage",         "free-poisson", "cohl",        "humbert"};
    return names;
}

bool is_suite_name(const std::string& name) {
    if (name == "all") return true;
    for (const std::string& s : suite_names())
        if (s == name) return true;
    return false;
}

std::vector<SuiteRow> run_suite(const std::string& name, const RunConfig& cfg) {
    if (name == "special-functions") return suite_special_functions(cfg);
    if (name == "beta-closed") return suite_beta_closed(cfg);
    if (name == "prop1") return suite_prop1(cfg);
    if (name == "prop2") return suite_prop2(cfg);
    if (name == "bernoulli") return suite_bernoulli(cfg);
    if (name == "shrinkage") return suite_shrinkage(cfg);
    if (name == "free-poisson") return suite_free_poisson(cfg);
    if (name == "cohl") return suite_cohl(cfg);
    if (name == "humbert") return suite_humbert(cfg);
    if (name == "all") {
        std::vector<SuiteRow> rows;
        for (const std::string& s : suite_names()) {
            std::vector<SuiteRow> part = run_suite(s, cfg);
            rows.insert(rows.end(), part.begin(), part.end());
        }
        std::vector<SuiteRow> global = suite_global(cfg);
        rows.insert(rows.end(), global.begin(), global.end());
        return rows;
    }
    throw ParameterError("unknown suite: " + name);
}

bool all_pass(const std::vector<SuiteRow>& rows) {
    for (const SuiteRow& r : rows)
        if (!r.pass) return false;
    return true;
}

std::string rows_to_csv(const std::vector<SuiteRow>& rows) {
    std::string out = "identity,params,grid_size,max_residual,mean_residual,tolerance,pass,wall_ms\n";
    for (const SuiteRow& r : rows) {
        out += r.identity + ",\"" + r.params + "\"," + std::to_string(r.grid_size) + "," +
               format_sci(r.max_residual) + "," + format_sci(r.mean_residual) + "," +
               format_sci(r.tolerance) + "," + (r.pass ? "1" : "0") + "," +
               format_sci(r.wall_ms) + "\n";
    }
    return out;
}

std::string rows_to_json(const std::vector<SuiteRow>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const SuiteRow& r : rows) {
        arr.push_back({{"identity", r.identity},
                       {"params", r.params},
                       {"grid_size", r.grid_size},
                       {"max_residual", r.max_residual},
                       {"mean_residual", r.mean_residual},
                       {"tolerance", r.tolerance},
                       {"pass", r.pass},
                       {"wall_ms", r.wall_ms}});
    }
    return arr.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// measure identifiers
// ---------------------------------------------------------------------------

namespace {

std::map<std::string, double> parse_kv(const std::string& s) {
    std::map<std::string, double> kv;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw ParameterError("measure parameters must be key=value: " + item);
        kv[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    }
    return kv;
}

double need(const std::map<std::string, double>& kv, const std::string& key,
            const std::string& what) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw ParameterError(what + ": missing parameter '" + key + "'");
    return it->second;
}

} // namespace

MeasureSpec parse_measure(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    std::map<std::string, double> kv;
    if (colon != std::string::npos) kv = parse_kv(spec.substr(colon + 1));

    if (head == "wigner") return wigner();
    if (head == "arcsine") return arcsine();
    if (head == "bernoulli") return bernoulli_sym();
    if (head == "free-poisson") return free_poisson_quarter();
    if (head == "beta") return beta_measure({need(kv, "gamma", head), need(kv, "beta", head)});
    if (head == "kappa") return kappa(need(kv, "lambda", head));
    if (head == "bernoulli-power") return bernoulli_power_measure(need(kv, "lambda", head));
    if (head == "kappa-conv") return kappa_convolution_density(need(kv, "lambda", head));
    throw ParameterError("unknown measure: " + spec);
}

std::optional<GstResult> closed_form_for(const std::string& spec, double lambda, Complex z) {
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    std::map<std::string, double> kv;
    if (colon != std::string::npos) kv = parse_kv(spec.substr(colon + 1));

    if (head == "beta")
        return gst_beta_closed(lambda, {need(kv, "gamma", head), need(kv, "beta", head)}, z);
    if (head == "wigner") return gst_beta_closed(lambda, {0.5, 0.5}, z);
    if (head == "arcsine") return gst_beta_closed(lambda, {-0.5, -0.5}, z);
    if (head == "bernoulli") {
        const Complex v = 0.5 * (cpow(z - 1.0, -lambda) + cpow(z + 1.0, -lambda));
        return GstResult{v, 0.0, GstMethod::closed_form};
    }
    if (head == "bernoulli-power") {
        const double lam = need(kv, "lambda", head);
        if (lam != lambda) return std::nullopt; // closed power only at the defining order
        return GstResult{cpow_lower(stieltjes_bernoulli(z), lambda), 0.0, GstMethod::closed_form};
    }
    if (head == "free-poisson" && lambda == 1.0)
        return GstResult{stieltjes_free_poisson(z), 0.0, GstMethod::closed_form};
    if (head == "kappa-conv") {
        const double lam = need(kv, "lambda", head);
        if (lam != lambda) return std::nullopt;
        const Complex v = std::exp(lambda * (std::numbers::ln2 - std::log(z + sqrt_zzm1(z))));
        return GstResult{v, 0.0, GstMethod::closed_form};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// identity tables
// ---------------------------------------------------------------------------

const std::vector<std::string>& identity_names() {
    static const std::vector<std::string> names = {
        "gst1", "gst2", "wigner-power", "arcsine-wigner-power", "prop1", "prop2",
        "bernoulli-power", "shrinkage", "free-poisson"};
    return names;
}

std::vector<TableRow> identity_table(const std::string& identity,
                                     const std::map<std::string, double>& params,
                                     const EvalGrid& grid) {
    auto get = [&](const std::string& key, double fallback) {
        const auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    const double lam = get("lambda", 1.0);

    std::function<Complex(Complex)> lhs, rhs;
    if (identity == "gst1" || identity == "gst2") {
        const BetaParams p{get("gamma", 0.5), get("beta", 0.5)};
        const MeasureSpec m = beta_measure(p);
        lhs = [=](Complex z) {
            return identity == "gst1" ? gst_beta_closed(lam, p, z).value
                                      : gst_beta_closed_alt(lam, p, z).value;
        };
        rhs = [=](Complex z) { return gst_quadrature(lam, m, z).value; };
    } else if (identity == "wigner-power") {
        const MeasureSpec m = beta_measure({lam - 0.5, lam - 0.5});
        lhs = [=](Complex z) { return gst_quadrature(lam, m, z).value; };
        rhs = [=](Complex z) { return cpow_lower(stieltjes_wigner(z), lam); };
    } else if (identity == "arcsine-wigner-power") {
        const MeasureSpec m = beta_measure({lam - 1.5, lam - 1.5});
        lhs = [=](Complex z) { return gst_quadrature(lam, m, z).value; };
        rhs = [=](Complex z) { return stieltjes_arcsine(z) * cpow(stieltjes_wigner(z), lam - 1.0); };
    } else if (identity == "prop1") {
        const int k = static_cast<int>(get("k", 0.0));
        const MeasureSpec m = beta_measure({lam - 0.5 - k, lam - 0.5 - k});
        lhs = [=](Complex z) { return gst_symmetric_beta_wigner_form(lam, k, z).value; };
        rhs = [=](Complex z) { return gst_quadrature(lam, m, z).value; };
    } else if (identity == "prop2") {
        const int k = static_cast<int>(get("k", 1.0));
        const bool swapped = get("swapped", 0.0) != 0.0;
        const BetaParams p = swapped ? BetaParams{lam - 0.5 - k, lam - 0.5}
                                     : BetaParams{lam - 0.5, lam - 0.5 - k};
        const MeasureSpec m = beta_measure(p);
        lhs = [=](Complex z) { return gst_nonsymmetric_beta_wigner_form(lam, k, swapped, z).value; };
        rhs = [=](Complex z) { return gst_quadrature(lam, m, z).value; };
    } else if (identity == "bernoulli-power") {
        const MeasureSpec m = bernoulli_power_measure(lam);
        lhs = [=](Complex z) { return gst_quadrature(lam, m, z).value; };
        rhs = [=](Complex z) { return cpow_lower(stieltjes_bernoulli(z), lam); };
    } else if (identity == "shrinkage") {
        const double p = get("p", 0.5);
        const MeasureSpec m = beta_measure({p * lam - 1.0, (1.0 - p) * lam - 1.0});
        lhs = [=](Complex z) { return gst_quadrature(lam, m, z).value; };
        rhs = [=](Complex z) {
            return std::exp(lam * (-(1.0 - p) * std::log(z - 1.0) - p * std::log(z + 1.0)));
        };
    } else if (identity == "free-poisson") {
        const MeasureSpec m = kappa_convolution_density(lam);
        lhs = [=](Complex z) { return gst_quadrature(lam, m, z).value; };
        rhs = [=](Complex z) {
            return std::exp(lam * (std::numbers::ln2 - std::log(z + sqrt_zzm1(z))));
        };
    } else {
        throw ParameterError("unknown identity: " + identity);
    }

    std::vector<TableRow> rows(grid.points.size());
    parallel_for(rows.size(), [&](std::size_t i) {
        const Complex z = grid.points[i];
        const Complex l = lhs(z), r = rhs(z);
        rows[i] = {z, l, r, std::abs(l - r)};
    });
    return rows;
}

std::string table_to_csv(const std::vector<TableRow>& rows) {
    std::string out = "z_re,z_im,lhs_re,lhs_im,rhs_re,rhs_im,residual\n";
    for (const TableRow& r : rows) {
        out += format_sci(r.z.real()) + "," + format_sci(r.z.imag()) + "," +
               format_sci(r.lhs.real()) + "," + format_sci(r.lhs.imag()) + "," +
               format_sci(r.rhs.real()) + "," + format_sci(r.rhs.imag()) + "," +
               format_sci(r.residual) + "\n";
    }
    return out;
}

} // namespace gstlab
