// End-to-end checks of the command-line tool: exit codes, file outputs,
// reproducibility.  Takes the binary path as argv[1].

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

int g_failures = 0;

#define CHECK_MSG(cond, msg)                                                          \
    do {                                                                              \
        if (!(cond)) {                                                                \
            std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << " " << (msg)     \
                      << "\n";                                                        \
            ++g_failures;                                                             \
        }                                                                             \
    } while (0)

std::string g_binary;
fs::path g_dir;

int run(const std::string& args, std::string* out = nullptr, std::string* err = nullptr) {
    const fs::path out_path = g_dir / "stdout.txt";
    const fs::path err_path = g_dir / "stderr.txt";
    const std::string cmd =
        g_binary + " " + args + " > " + out_path.string() + " 2> " + err_path.string();
    int rc = std::system(cmd.c_str());
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    if (out) *out = slurp(out_path);
    if (err) *err = slurp(err_path);
    if (WIFEXITED(rc)) return WEXITSTATUS(rc);
    return -1;
}

std::string slurp_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// header + column-major doubles
struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<double>> cols;
};

Csv read_csv(const fs::path& p) {
    Csv csv;
    std::ifstream in(p);
    std::string line;
    if (!std::getline(in, line)) return csv;
    std::stringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) csv.header.push_back(cell);
    csv.cols.resize(csv.header.size());
    while (std::getline(in, line)) {
        std::stringstream ls(line);
        size_t c = 0;
        while (std::getline(ls, cell, ',') && c < csv.cols.size())
            csv.cols[c++].push_back(std::stod(cell));
    }
    return csv;
}

int col_index(const Csv& csv, const std::string& name) {
    for (size_t i = 0; i < csv.header.size(); ++i)
        if (csv.header[i] == name) return static_cast<int>(i);
    return -1;
}

void test_coeffs_stdout() {
    std::string out;
    CHECK_MSG(run("coeffs --n 0 --m 1 --beta 1", &out) == 0, "coeffs exits 0");
    CHECK_MSG(out.find("0.60653065971") != std::string::npos, "coeffs prints e^{-1/2}: " + out);
}

void test_simulate_and_reproducibility() {
    const std::string base = "simulate --J 1 --g2 1 --omega0 0.05 --horizon-cycles 8 --out ";
    const fs::path a = g_dir / "run_a", b = g_dir / "run_b";
    CHECK_MSG(run(base + a.string()) == 0, "simulate exits 0");
    CHECK_MSG(run(base + b.string()) == 0, "simulate rerun exits 0");
    CHECK_MSG(fs::exists(a.string() + ".csv"), "data file written");
    CHECK_MSG(fs::exists(a.string() + ".csv.manifest.json"), "manifest written");
    CHECK_MSG(slurp_file(a.string() + ".csv") == slurp_file(b.string() + ".csv"),
              "serial reruns are byte-identical");

    Csv csv = read_csv(a.string() + ".csv");
    CHECK_MSG(col_index(csv, "P") == 1, "survival column present");
    CHECK_MSG(!csv.cols.empty() && csv.cols[1].front() == 1.0, "P(0) = 1");
    const int cdf2 = col_index(csv, "photon_cdf_2");
    CHECK_MSG(cdf2 >= 0 && csv.cols[cdf2].front() == 1.0, "photon cdf starts at 1");

    nlohmann::json manifest;
    std::ifstream(a.string() + ".csv.manifest.json") >> manifest;
    CHECK_MSG(manifest["convergence"]["norm_drift"].get<double>() < 1e-9, "norm drift recorded");
    CHECK_MSG(manifest["config"]["n_max"].get<int>() >= 8, "resolved n_max echoed");
}

void test_trivial_omega0_zero() {
    const fs::path out = g_dir / "quiet";
    CHECK_MSG(run("simulate --J 1 --g2 1 --omega0 0 --horizon-cycles 5 --out " + out.string()) == 0,
              "omega0 = 0 run exits 0");
    Csv csv = read_csv(out.string() + ".csv");
    for (double p : csv.cols[col_index(csv, "P")])
        CHECK_MSG(std::abs(p - 1.0) < 1e-12, "survival stays at 1 for omega0 = 0");

    const fs::path cmp = g_dir / "quiet_cmp";
    CHECK_MSG(run("compare --J 1 --g2 1 --omega0 0 --horizon-cycles 5 --out " + cmp.string()) == 0,
              "omega0 = 0 compare exits 0");
    Csv c2 = read_csv(cmp.string() + ".csv");
    CHECK_MSG(c2.cols[col_index(c2, "max_diff_running")].back() < 1e-12,
              "exact equality at omega0 = 0");
}

void test_error_paths() {
    std::string err;
    CHECK_MSG(run("simulate --preset nope", nullptr, &err) == 2, "unknown preset exits 2");
    CHECK_MSG(run("simulate --J banana", nullptr, &err) == 2, "bad J exits 2");
    CHECK_MSG(run("simulate --J 3/2 --g 1 --omega0 0.1 --horizon-cycles 2", nullptr, &err) == 2,
              "half-integer J needs an explicit initial m");
    CHECK_MSG(err.find("initial") != std::string::npos, "hint mentions the initial state");
    CHECK_MSG(run("simulate --J 3/2 --g 0.6 --omega0 0.1 --horizon-cycles 2 --initial-m 1/2 "
                  "--out " + (g_dir / "half").string()) == 0,
              "half-integer J runs with --initial-m");

    CHECK_MSG(run("simulate --preset fig2a --n-max 20", nullptr, &err) == 3,
              "insufficient cutoff exits 3");
    CHECK_MSG(err.find("n_max") != std::string::npos, "cutoff error suggests n_max");

    // config file: unknown key rejected, flags override file values
    const fs::path cfg = g_dir / "run.cfg";
    {
        std::ofstream f(cfg);
        f << "# tiny run\nJ = 1\ng2 = 1\nomega0 = 0.05\nhorizon_cycles = 4\n";
    }
    const fs::path out = g_dir / "from_file";
    CHECK_MSG(run("simulate --config " + cfg.string() + " --omega0 0.02 --out " + out.string()) ==
                  0,
              "config file accepted");
    nlohmann::json manifest;
    std::ifstream(out.string() + ".csv.manifest.json") >> manifest;
    CHECK_MSG(manifest["config"]["omega0"].get<double>() == 0.02, "flag overrides file");

    {
        std::ofstream f(cfg, std::ios::app);
        f << "volume = 11\n";
    }
    CHECK_MSG(run("simulate --config " + cfg.string(), nullptr, &err) == 2,
              "unknown config key exits 2");
}

void test_chains_json() {
    const fs::path out = g_dir / "chain_j2";
    CHECK_MSG(run("chains --J 2 --k 1 --n-max 8 --out " + out.string()) == 0, "chains exits 0");
    nlohmann::json j;
    std::ifstream(out.string() + ".json") >> j;
    CHECK_MSG(j["nodes"].size() == 5, "five chain nodes");
    std::vector<int> photons;
    for (const auto& n : j["nodes"]) photons.push_back(n["n"].get<int>());
    CHECK_MSG((photons == std::vector<int>{4, 1, 0, 1, 4}), "chain photon numbers 4,1,0,1,4");
    CHECK_MSG(j["edges"].size() == 4, "four chain edges");
    CHECK_MSG(fs::exists(out.string() + ".dot"), "dot rendering written");

    const fs::path part = g_dir / "collapsed";
    CHECK_MSG(run("chains --J 3/2 --off-resonant --n-max 5 --out " + part.string()) == 0,
              "off-resonant partition exits 0");
    nlohmann::json pj;
    std::ifstream(part.string() + ".json") >> pj;
    CHECK_MSG(pj["nodes"].size() == 24, "full partition covers the truncated space");
}

void test_scan() {
    const fs::path out = g_dir / "scan1";
    CHECK_MSG(run("scan --k 1 --g-min 1 --g-max 1 --points 1 --omega0 0.02 --J 1 --out " +
                  out.string()) == 0,
              "scan exits 0");
    Csv csv = read_csv(out.string() + ".csv");
    CHECK_MSG(csv.header ==
                  std::vector<std::string>({"g", "pmin_num", "pmin_ana", "freq_num", "freq_ana"}),
              "scan column layout");
    CHECK_MSG(csv.cols[1].front() < 0.05, "resonant point depopulates");
    CHECK_MSG(csv.cols[2].front() < 1e-12, "analytic minimum vanishes on resonance");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_tests <path-to-dicke-binary>\n";
        return 2;
    }
    g_binary = argv[1];
    g_dir = fs::temp_directory_path() / "dicke_cli_tests";
    fs::remove_all(g_dir);
    fs::create_directories(g_dir);

    test_coeffs_stdout();
    test_simulate_and_reproducibility();
    test_trivial_omega0_zero();
    test_error_paths();
    test_chains_json();
    test_scan();

    if (g_failures == 0) {
        std::cout << "cli tests passed\n";
        return 0;
    }
    std::cerr << g_failures << " cli checks failed\n";
    return 1;
}
