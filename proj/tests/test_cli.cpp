#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "gstlab/verification.hpp"

using namespace gstlab;

namespace {

int run_bin(const std::string& args) {
    const std::string cmd = std::string(STIELTJES_LAB_BIN) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("measure identifier parsing") {
    CHECK(parse_measure("wigner").name() == "wigner");
    CHECK(parse_measure("beta:gamma=0.5,beta=1.5").segments().size() == 1);
    CHECK(parse_measure("kappa:lambda=2").lo() == 0.0);
    CHECK(parse_measure("bernoulli-power:lambda=2").atoms().size() == 2);
    CHECK(parse_measure("kappa-conv:lambda=1").hi() == 1.0);
    CHECK_THROWS_AS(parse_measure("nope"), ParameterError);
    CHECK_THROWS_AS(parse_measure("beta:gamma=0.5"), ParameterError);
    CHECK_THROWS_AS(parse_measure("beta:oops"), ParameterError);
}

TEST_CASE("closed forms for eval") {
    const Complex z(2.0, 0.0);
    auto w = closed_form_for("wigner", 1.0, z);
    REQUIRE(w.has_value());
    CHECK(std::abs(w->value - stieltjes_wigner(z)) < 1e-12);
    auto b = closed_form_for("bernoulli", 1.0, z);
    REQUIRE(b.has_value());
    CHECK(std::abs(b->value - Complex(2.0 / 3.0)) < 1e-15);
    CHECK(!closed_form_for("free-poisson", 2.0, z).has_value());
    auto fp = closed_form_for("free-poisson", 1.0, z);
    REQUIRE(fp.has_value());
    CHECK(std::abs(fp->value - 2.0 / (2.0 + std::sqrt(2.0))) < 1e-14);
}

TEST_CASE("numeric formatting round-trips doubles") {
    for (double v : {1.0 / 3.0, 2.718281828459045e-12, -4.9e200, 0.0}) {
        const std::string s = format_sci(v);
        CHECK(std::stod(s) == v);
    }
    CHECK(format_sci(std::nan("")) == "nan");
}

TEST_CASE("identity tables are deterministic") {
    EvalGrid grid = EvalGrid::rectangle(1.5, 3.0, 0.5, {0.5, 1.0});
    const auto rows1 = identity_table("shrinkage", {{"lambda", 3.0}, {"p", 0.5}}, grid);
    const auto rows2 = identity_table("shrinkage", {{"lambda", 3.0}, {"p", 0.5}}, grid);
    CHECK(table_to_csv(rows1) == table_to_csv(rows2));
    CHECK(rows1.size() == grid.points.size());
    for (const TableRow& r : rows1) CHECK(r.residual < 1e-9);
    CHECK_THROWS_AS(identity_table("unknown", {}, grid), ParameterError);
}

TEST_CASE("suite row serialization") {
    std::vector<SuiteRow> rows(1);
    rows[0] = {"demo", "p=1", 10, 1e-12, 5e-13, 1e-8, true, 12.5};
    const std::string csv = rows_to_csv(rows);
    CHECK(csv.find("identity,params,grid_size,max_residual,mean_residual,tolerance,pass,wall_ms") !=
          std::string::npos);
    CHECK(csv.find("demo") != std::string::npos);
    const std::string json = rows_to_json(rows);
    CHECK(json.find("\"identity\": \"demo\"") != std::string::npos);
    CHECK(all_pass(rows));
    rows[0].pass = false;
    CHECK(!all_pass(rows));
}

TEST_CASE("suite names") {
    CHECK(is_suite_name("all"));
    CHECK(is_suite_name("prop1"));
    CHECK(is_suite_name("free-poisson"));
    CHECK(!is_suite_name("nonsense"));
    CHECK_THROWS_AS(run_suite("nonsense", RunConfig{}), ParameterError);
}

TEST_CASE("binary exit codes") {
    CHECK(run_bin("verify --suite nonsense") == 2);
    CHECK(run_bin("bogus-subcommand") == 2);
    CHECK(run_bin("eval --measure wigner --lambda 1 --z 2,0") == 0);
    CHECK(run_bin("verify --suite prop1 --re-step 1.0") == 0);
}

TEST_CASE("binary output is byte-identical across runs") {
    const std::string out1 = "/tmp/gstlab_t1.csv", out2 = "/tmp/gstlab_t2.csv";
    const std::string args = "table --identity shrinkage --param lambda=3 --param p=0.5 "
                             "--re-min 1.5 --re-max 3 --re-step 0.5 --im 0.5 --im 1 --output ";
    CHECK(run_bin(args + out1) == 0);
    CHECK(run_bin(args + out2) == 0);
    const std::string a = slurp(out1), b = slurp(out2);
    CHECK(!a.empty());
    CHECK(a == b);
    CHECK(a.rfind("z_re,z_im,lhs_re,lhs_im,rhs_re,rhs_im,residual\n", 0) == 0);
    std::remove(out1.c_str());
    std::remove(out2.c_str());
}

TEST_CASE("empty grid yields a header-only table") {
    const std::string out = "/tmp/gstlab_empty.csv";
    // the Im = 0 row collides with the cut and is excluded
    CHECK(run_bin("table --identity gst1 --param lambda=1 --re-min -2 --re-max 0 --re-step 0.5 "
                  "--im 0 --output " + out) == 0);
    CHECK(slurp(out) == "z_re,z_im,lhs_re,lhs_im,rhs_re,rhs_im,residual\n");
    std::remove(out.c_str());
}

TEST_CASE("config file is honored with flag precedence") {
    const std::string conf = "/tmp/gstlab_conf.ini";
    {
        std::ofstream c(conf);
        c << "re-step=1.0\nim=0.5\n";
    }
    const std::string out = "/tmp/gstlab_conf_out.csv";
    CHECK(run_bin("--config " + conf + " table --identity gst1 --param lambda=1 --re-min 2 "
                  "--re-max 3 --output " + out) == 0);
    std::string body = slurp(out);
    // config step 1.0 -> two points
    CHECK(std::count(body.begin(), body.end(), '\n') == 3);
    // flag overrides config
    CHECK(run_bin("--config " + conf + " table --identity gst1 --param lambda=1 --re-min 2 "
                  "--re-max 3 --re-step 0.5 --output " + out) == 0);
    body = slurp(out);
    CHECK(std::count(body.begin(), body.end(), '\n') == 4);
    std::remove(conf.c_str());
    std::remove(out.c_str());
}
