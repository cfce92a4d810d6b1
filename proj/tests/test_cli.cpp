#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

const std::string cli = MCFPLAN_CLI_PATH;
const std::string repo = MCFPLAN_REPO_DIR;

struct ScopedDir {
    fs::path path;
    ScopedDir() {
        static int counter = 0;
        path = fs::temp_directory_path() / ("mcfplan_cli_" + std::to_string(::getpid()) + "_" +
                                            std::to_string(counter++));
        fs::create_directories(path);
    }
    ~ScopedDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Runs through /bin/sh from inside `cwd`; stdout/stderr captured to files.
RunResult run_in(const fs::path& cwd, const std::string& args, const std::string& env = "") {
    const fs::path so = cwd / "stdout.txt";
    const fs::path se = cwd / "stderr.txt";
    const std::string cmd = "cd '" + cwd.string() + "' && " + (env.empty() ? "" : env + " ") +
                            "'" + cli + "' " + args + " >'" + so.string() + "' 2>'" + se.string() + "'";
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.code = (raw != -1 && WIFEXITED(raw)) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(so);
    r.err = slurp(se);
    return r;
}

std::vector<std::string> read_lines(const fs::path& p) {
    std::ifstream in(p);
    std::vector<std::string> lines;
    std::string l;
    while (std::getline(in, l)) lines.push_back(l);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

int column(const std::vector<std::string>& header, const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    throw std::runtime_error("missing column " + name);
}

std::string cfg(const std::string& name) { return repo + "/data/config/" + name; }

} // namespace

TEST_CASE("validate: shipped designs pass") {
    ScopedDir d;
    const RunResult r = run_in(d.path, "validate --config '" + cfg("toy.cfg") + "'");
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(r.out.find("geometry: all checks passed") != std::string::npos);
}

TEST_CASE("validate: oversized trench flags the core separation") {
    ScopedDir d;
    const RunResult r =
        run_in(d.path, "validate --config '" + cfg("default.cfg") + "' --ratios 1,1.5,2,3");
    CHECK(r.code == 1);
    CHECK(r.out.find("[hard]") != std::string::npos);
    CHECK(r.out.find("separation") != std::string::npos);
    CHECK(r.out.find("geometry: hard violations found") != std::string::npos);
}

TEST_CASE("sweep: frequency response tables") {
    ScopedDir d;
    const fs::path out = d.path / "sw";
    const RunResult r = run_in(
        d.path, "sweep --config '" + cfg("ci32.cfg") + "' --out '" + out.string() + "'");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("not UL") != std::string::npos);   // mc04 at 1.0 x r1 survives
    CHECK(r.out.find(": UL") != std::string::npos);

    for (const char* name : {"pcc.csv", "mcc.csv", "icxt.csv"}) {
        const auto lines = read_lines(out / name);
        REQUIRE(lines.size() == 193);   // header + 2 fibers x 3 ratios x 32 channels
        CHECK(lines[0] == "fiber,ratio,f_THz,value");
    }

    // every trench variant of the 7-core design stays below the top-level limit
    const auto icxt = read_lines(out / "icxt.csv");
    int seen = 0;
    for (std::size_t i = 1; i < icxt.size(); ++i) {
        const auto cells = split_csv(icxt[i]);
        REQUIRE(cells.size() == 4);
        if (cells[0] != "mc07") continue;
        ++seen;
        CHECK(std::stod(cells[3]) < -26.82);
    }
    CHECK(seen == 96);

    // identical input, identical bytes
    const fs::path out2 = d.path / "sw2";
    const RunResult r2 = run_in(
        d.path, "sweep --config '" + cfg("ci32.cfg") + "' --out '" + out2.string() + "'");
    REQUIRE(r2.code == 0);
    for (const char* name : {"pcc.csv", "mcc.csv", "icxt.csv"})
        CHECK(slurp(out / name) == slurp(out2 / name));
}

TEST_CASE("evaluate: totals are consistent across the three tables") {
    ScopedDir d;
    const fs::path out = d.path / "ev";
    const RunResult r = run_in(
        d.path, "evaluate --config '" + cfg("toy.cfg") + "' --out '" + out.string() + "'");
    REQUIRE(r.code == 0);

    const auto tup = read_lines(out / "tuples.csv");
    const auto head = split_csv(tup[0]);
    const int c_scn = column(head, "scenario");
    const int c_rate = column(head, "bitrate_gbps");
    const int c_mu = column(head, "mu_icxt_db");
    const int c_icxt = column(head, "snr_icxt_db");
    double mcf_sum = 0.0;
    for (std::size_t i = 1; i < tup.size(); ++i) {
        const auto cells = split_csv(tup[i]);
        if (cells[static_cast<std::size_t>(c_scn)] == "mcf")
            mcf_sum += std::stod(cells[static_cast<std::size_t>(c_rate)]);
        else {
            // bundled pairs have no coupled neighbour
            CHECK(cells[static_cast<std::size_t>(c_mu)] == "-inf");
            CHECK(cells[static_cast<std::size_t>(c_icxt)] == "inf");
        }
    }
    CHECK(tup.size() == 1 + 2 * 256);   // 2 scenarios x 2 pairs x 32 ch x 4 lanes
    CHECK(mcf_sum == 153600.0);

    const auto sum = read_lines(out / "summary.csv");
    REQUIRE(sum.size() == 3);
    const auto shead = split_csv(sum[0]);
    CHECK(sum[0] == "scenario,fiber,lanes,k,icxt_gate,tuples,rejected,total_gbps,mcf_over_bumfp");
    const int s_total = column(shead, "total_gbps");
    const int s_gate = column(shead, "icxt_gate");
    const int s_ratio = column(shead, "mcf_over_bumfp");
    const auto mcf_row = split_csv(sum[1]);
    const auto bu_row = split_csv(sum[2]);
    REQUIRE(mcf_row[0] == "mcf");
    REQUIRE(bu_row[0] == "bumfp");
    CHECK(std::stod(mcf_row[static_cast<std::size_t>(s_total)]) == mcf_sum);
    CHECK(mcf_row[static_cast<std::size_t>(s_gate)] == "on");
    CHECK(!mcf_row[static_cast<std::size_t>(s_ratio)].empty());
    CHECK(bu_row[static_cast<std::size_t>(s_ratio)].empty());

    const auto cp = read_lines(out / "cpct.csv");
    REQUIRE(cp.size() == 1 + 2 * 2);
    double cp_sum = 0.0;
    for (std::size_t i = 1; i < cp.size(); ++i) {
        const auto cells = split_csv(cp[i]);
        if (cells[0] == "mcf") cp_sum += std::stod(cells[3]);
    }
    CHECK(cp_sum == mcf_sum);
}

TEST_CASE("evaluate: backbone totals and the lane-count override") {
    ScopedDir d;
    const fs::path o4 = d.path / "l4";
    const fs::path o7 = d.path / "l7";
    const RunResult r4 = run_in(
        d.path, "evaluate --config '" + cfg("ci32.cfg") + "' --out '" + o4.string() + "'");
    const RunResult r7 = run_in(
        d.path,
        "evaluate --config '" + cfg("ci32.cfg") + "' --lanes 7 --out '" + o7.string() + "'");
    REQUIRE(r4.code == 0);
    REQUIRE(r7.code == 0);
    CHECK(r4.out.find("vs bundled pairs x") != std::string::npos);

    auto totals = [](const fs::path& out) {
        const auto sum = read_lines(out / "summary.csv");
        const auto head = split_csv(sum[0]);
        const int c = column(head, "total_gbps");
        std::vector<double> t;
        for (std::size_t i = 1; i < sum.size(); ++i)
            t.push_back(std::stod(split_csv(sum[i])[static_cast<std::size_t>(c)]));
        return t;
    };
    const auto t4 = totals(o4);
    const auto t7 = totals(o7);
    REQUIRE(t4.size() == 2);
    CHECK(t4[0] == 7860800.0);
    CHECK(t4[1] == 7531200.0);
    CHECK(t7[0] == 1.75 * t4[0]);
    CHECK(t7[1] == 1.75 * t4[1]);
}

TEST_CASE("config can come from the environment") {
    ScopedDir d;
    const RunResult r = run_in(d.path, "validate", "MCFPLAN_CONFIG='" + cfg("toy.cfg") + "'");
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("relative out_dir lands next to the invocation") {
    ScopedDir d;
    const RunResult r = run_in(d.path, "evaluate --config '" + cfg("toy.cfg") + "'");
    REQUIRE(r.code == 0);
    CHECK(fs::exists(d.path / "out" / "tuples.csv"));
    CHECK(fs::exists(d.path / "out" / "summary.csv"));
}

TEST_CASE("argument errors exit with status 1") {
    ScopedDir d;
    CHECK(run_in(d.path, "evaluate").code == 1);                          // --config missing
    CHECK(run_in(d.path, "frobnicate").code == 1);                        // unknown subcommand
    CHECK(run_in(d.path, "").code == 1);                                  // subcommand required
    const RunResult r = run_in(d.path, "evaluate --config /no/such/file.cfg");
    CHECK(r.code == 1);
    CHECK(!r.err.empty());
}

TEST_CASE("a bad configuration produces no partial output") {
    ScopedDir d;
    const fs::path bad = d.path / "bad.cfg";
    std::ofstream(bad) << "[files]\n"
                       << "fiber = " << repo << "/data/fibers/mc04.fiber\n"
                       << "fiber = " << repo << "/data/fibers/ssmf.fiber\n"
                       << "topology = " << repo << "/data/topologies/pair.topo\n"
                       << "scenarios = " << repo << "/data/scenarios/default.scn\n"
                       << "out_dir = out\n"
                       << "[bands]\n";   // declared but empty: invalid plan
    const RunResult r = run_in(d.path, "evaluate --config '" + bad.string() + "'");
    CHECK(r.code == 1);
    CHECK(r.err.find("error:") != std::string::npos);
    CHECK(!fs::exists(d.path / "out"));
}
