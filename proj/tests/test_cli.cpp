#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <sstream>
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kCli = CAVQ_CLI_PATH;
const std::string kConfigDir = CAVQ_CONFIG_DIR;

int run(const std::string& args) {
    const std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

fs::path tmp_file(const std::string& stem) {
    return fs::temp_directory_path() / (stem + "." + std::to_string(::getpid()) + ".out");
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream f(p);
    f << content;
}

}  // namespace

TEST_CASE("identical config and seed give byte-identical output") {
    const fs::path out1 = tmp_file("cavq_cnot_a");
    const fs::path out2 = tmp_file("cavq_cnot_b");
    const std::string cfg = kConfigDir + "/cnot_ideal.json";
    REQUIRE(run("cnot --config " + cfg + " --out " + out1.string()) == 0);
    REQUIRE(run("cnot --config " + cfg + " --out " + out2.string()) == 0);
    const std::string a = slurp(out1);
    const std::string b = slurp(out2);
    CHECK(a == b);
    CHECK(a.find("\"version\"") != std::string::npos);
    CHECK(a.find("\"config\"") != std::string::npos);
    fs::remove(out1);
    fs::remove(out2);

    // the parity demo in csv mode is reproducible too
    const fs::path p1 = tmp_file("cavq_par_a");
    const fs::path p2 = tmp_file("cavq_par_b");
    const std::string pcfg = kConfigDir + "/parity_demo.json";
    REQUIRE(run("parity-demo --config " + pcfg + " --out " + p1.string()) == 0);
    REQUIRE(run("parity-demo --config " + pcfg + " --out " + p2.string()) == 0);
    CHECK(slurp(p1) == slurp(p2));
    fs::remove(p1);
    fs::remove(p2);
}

TEST_CASE("seed override changes the stochastic summary") {
    const fs::path out1 = tmp_file("cavq_seed_a");
    const fs::path out2 = tmp_file("cavq_seed_b");
    const std::string cfg = kConfigDir + "/cnot_ideal.json";
    REQUIRE(run("cnot --config " + cfg + " --seed 1 --out " + out1.string()) == 0);
    REQUIRE(run("cnot --config " + cfg + " --seed 1 --out " + out2.string()) == 0);
    CHECK(slurp(out1) == slurp(out2));
    fs::remove(out1);
    fs::remove(out2);
}

TEST_CASE("config validation failures exit with code 2") {
    const fs::path bad = tmp_file("cavq_badcfg");

    // unknown parameter name
    write_file(bad, R"({"experiment":"cnot","seed":1,"parameters":{"meter_mod":"ideal"}})");
    CHECK(run("cnot --config " + bad.string()) == 2);

    // missing seed
    write_file(bad, R"({"experiment":"cnot","parameters":{"preset":"generic"}})");
    CHECK(run("cnot --config " + bad.string()) == 2);

    // experiment/subcommand mismatch
    write_file(bad, R"({"experiment":"cnot","seed":1})");
    CHECK(run("parity-demo --config " + bad.string()) == 2);

    // unnormalized amplitudes
    write_file(bad, R"({"experiment":"cnot","seed":1,"parameters":{"amplitudes":
        {"alpha_re":1.0,"zeta_re":1.0,"xi_re":1.0,"tau_re":0.0}}})");
    CHECK(run("cnot --config " + bad.string()) == 2);

    // armed and disarmed both set
    write_file(bad, R"({"experiment":"parity-demo","seed":1,"parameters":
        {"i1":1.0,"i2":1.0,"ic":10.0,"armed":true,"disarmed":true}})");
    CHECK(run("parity-demo --config " + bad.string()) == 2);

    // nonexistent config file
    CHECK(run("cnot --config /nonexistent/cfg.json") == 2);

    fs::remove(bad);
}

TEST_CASE("convergence failure exits with code 3") {
    const fs::path bad = tmp_file("cavq_noconv");
    // a deliberately coarse run at a non-periodic time with an unreachable
    // tolerance
    write_file(bad, R"({"experiment":"effective-vs-exact","seed":1,"n_max":6,
        "parameters":{"beta":0.05,"delta_over_beta":[10.0],"delta_t_over_2pi":[0.5],
                      "steps":8,"convergence_tol":1e-12}})");
    CHECK(run("effective-vs-exact --config " + bad.string()) == 3);
    fs::remove(bad);
}

TEST_CASE("cnot basis preset yields eight unit-fidelity branches") {
    const fs::path cfg = tmp_file("cavq_cnotb");
    const fs::path out = tmp_file("cavq_cnotbout");
    write_file(cfg, R"({"experiment":"cnot","seed":9,"output_format":"csv",
        "parameters":{"meter_mode":"ideal","preset":"basis-00"}})");
    REQUIRE(run("cnot --config " + cfg.string() + " --out " + out.string()) == 0);
    std::istringstream body(slurp(out));
    std::string line;
    int rows = 0;
    while (std::getline(body, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("p1,", 0) == 0) continue;
        ++rows;
        // columns: p1,p2,m,p1_kind,p2_kind,probability,fidelity,corr_c,corr_t
        std::size_t pos = 0;
        for (int c = 0; c < 6; ++c) pos = line.find(',', pos) + 1;
        const double fid = std::stod(line.substr(pos));
        CHECK(fid == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK(rows == 8);
    fs::remove(cfg);
    fs::remove(out);
}

TEST_CASE("dfs-dephasing rows show the expected coherences") {
    const fs::path cfg = tmp_file("cavq_dfscfg");
    const fs::path out = tmp_file("cavq_dfsout");

    // a single unitary draw cannot decohere anything: every kind stays at 0.5
    write_file(cfg, R"({"experiment":"dfs-dephasing","seed":5,"parameters":{"ensemble_size":1}})");
    REQUIRE(run("dfs-dephasing --config " + cfg.string() + " --out " + out.string()) == 0);
    {
        std::istringstream body(slurp(out));
        std::string line;
        int rows = 0;
        while (std::getline(body, line)) {
            if (line.empty() || line[0] == '#' || line.rfind("state_kind", 0) == 0) continue;
            const auto last = line.rfind(',');
            const double coh = std::stod(line.substr(last + 1));
            CHECK(coh == doctest::Approx(0.5).epsilon(1e-12));
            ++rows;
        }
        CHECK(rows == 3);
    }

    // a large ensemble kills the bare coherences but not the encoded one
    write_file(cfg,
               R"({"experiment":"dfs-dephasing","seed":11,"parameters":{"ensemble_size":1000}})");
    REQUIRE(run("dfs-dephasing --config " + cfg.string() + " --out " + out.string()) == 0);
    {
        std::istringstream body(slurp(out));
        std::string line;
        while (std::getline(body, line)) {
            if (line.empty() || line[0] == '#' || line.rfind("state_kind", 0) == 0) continue;
            const auto first = line.find(',');
            const auto last = line.rfind(',');
            const std::string kind = line.substr(0, first);
            const double coh = std::stod(line.substr(last + 1));
            if (kind == "encoded")
                CHECK(coh == doctest::Approx(0.5).epsilon(1e-12));
            else
                CHECK(coh < 0.05);
        }
    }
    fs::remove(cfg);
    fs::remove(out);
}

TEST_CASE("effective-vs-exact rows show the periodic-point revival") {
    const fs::path cfg = tmp_file("cavq_effcfg");
    const fs::path out = tmp_file("cavq_effout");
    write_file(cfg, R"({"experiment":"effective-vs-exact","seed":1,"n_max":8,
        "parameters":{"beta":0.05,"delta_over_beta":[20.0],"delta_t_over_2pi":[0.5,1.0],
                      "steps":300,"check_convergence":false}})");
    REQUIRE(run("effective-vs-exact --config " + cfg.string() + " --out " + out.string()) == 0);
    std::istringstream body(slurp(out));
    std::string line;
    double generic = -1.0, periodic = -1.0;
    while (std::getline(body, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("delta_over_beta", 0) == 0) continue;
        double ratio, tau, overlap, fact;
        int nmax;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%d,%lf,%lf", &ratio, &tau, &nmax, &overlap,
                            &fact) == 5);
        if (tau == 1.0)
            periodic = overlap;
        else
            generic = overlap;
        CHECK(fact > 0.9);
    }
    // the closed-loop point factorizes to the effective phase; a generic time
    // in the dispersive regime stays below it
    CHECK(periodic >= 1.0 - 1e-6);
    CHECK(generic < periodic);
    fs::remove(cfg);
    fs::remove(out);
}

TEST_CASE("csv output carries the preamble and rows") {
    const fs::path out = tmp_file("cavq_csv");
    const std::string cfg = kConfigDir + "/parity_demo.json";
    REQUIRE(run("parity-demo --config " + cfg + " --format csv --out " + out.string()) == 0);
    const std::string body = slurp(out);
    CHECK(body.rfind("# cavq", 0) == 0);
    CHECK(body.find("# config") != std::string::npos);
    CHECK(body.find("state,i0_forward,switched_forward") != std::string::npos);
    CHECK(body.find("++,") != std::string::npos);
    CHECK(body.find("even_pp") != std::string::npos);
    CHECK(body.find("even_mm") != std::string::npos);
    fs::remove(out);
}
