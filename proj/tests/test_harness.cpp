#include "homsim/harness.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <gtest/gtest.h>

#include "homsim/correlators.hpp"
#include "homsim/errors.hpp"

namespace homsim {
namespace {

namespace fs = std::filesystem;

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

class HarnessTest : public ::testing::Test {
protected:
    fs::path dir;

    void SetUp() override {
        dir = fs::temp_directory_path() /
              ("homsim_harness_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
               ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
};

TEST(WriteCsv, TwoPointScan) {
    CorrelationScan s;
    s.variable_name = "tau_s";
    s.result_name = "g2";
    s.points = {{-0.5, 0.25}, {0.5, 1.0 / 3.0}};
    s.extra_columns.push_back({"g2_analytic", {0.1, 0.2}});
    const auto lines = lines_of(format_csv(s));
    ASSERT_EQ(lines.size(), 3u);
    EXPECT_EQ(lines[0], "tau_s,g2,g2_analytic");
    EXPECT_EQ(lines[1], "-0.5,0.25,0.10000000000000001");
    EXPECT_EQ(lines[2], "0.5,0.33333333333333331,0.20000000000000001");
}

TEST(WriteCsv, SeventeenSignificantDigitsRoundTrip) {
    for (double v : {1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.1, 1e-9})
        EXPECT_EQ(std::stod(format_csv_real(v)), v);
    EXPECT_EQ(format_csv_real(0.0), "0");
}

TEST(WriteCsv, FooterLines) {
    CorrelationScan s;
    s.variable_name = "x_m";
    s.result_name = "mean_i_a";
    s.points = {{0.0, 1.0}};
    s.footer = {{"visibility", 0.25}};
    EXPECT_EQ(format_csv(s), "x_m,mean_i_a\n0,1\n# visibility=0.25\n");
}

TEST_F(HarnessTest, WriteCsvFileAndIoError) {
    CorrelationScan s;
    s.variable_name = "phi_rad";
    s.result_name = "i_a";
    s.points = {{0.0, 0.0}};
    const auto path = dir / "out.csv";
    write_csv(s, path.string());
    EXPECT_EQ(slurp(path), format_csv(s));
    try {
        write_csv(s, (dir / "missing" / "out.csv").string());
        FAIL();
    } catch (const IoError& e) {
        EXPECT_NE(e.path().find("missing"), std::string::npos);
    }
}

TEST_F(HarnessTest, MziScanHasDoubledCoincidenceFringe) {
    auto cfg = parse_config("mode = mzi-scan\n");
    cfg.output_path = (dir / "mzi.csv").string();
    const auto scan = run(cfg);
    const auto lines = lines_of(slurp(cfg.output_path));
    ASSERT_EQ(lines.size(), 1002u);
    EXPECT_EQ(lines[0], "phi_rad,i_a,i_b,r_ab,g2");

    const auto* rab = scan.column("r_ab");
    ASSERT_NE(rab, nullptr);
    CorrelationScan r = scan;
    for (std::size_t i = 0; i < r.points.size(); ++i) r.points[i].result = rab->values[i];
    EXPECT_EQ(dominant_fringe_bin(r), 2 * dominant_fringe_bin(scan));
    EXPECT_EQ(dominant_fringe_bin(scan), 2u);
}

TEST_F(HarnessTest, HomEnsembleDipAndOverlayColumn) {
    const auto cfg = parse_config("mode = hom-ensemble\nsigma_f = 1\nn_pairs = 10000\nseed = 3\n");
    const auto scan = run(cfg);
    ASSERT_EQ(scan.points.size(), 2001u);
    EXPECT_EQ(scan.points[1000].value, 0.0);
    EXPECT_EQ(scan.points[1000].result, 0.0);
    const auto* overlay = scan.column("g2_analytic");
    ASSERT_NE(overlay, nullptr);
    EXPECT_EQ(overlay->values[1000], 0.0);

    const double t_c = spectrum_stats(cfg.spdc).coherence_time;
    double sum = 0.0;
    int n = 0;
    for (const auto& p : scan.points)
        if (std::abs(p.value) > 2.5 * t_c) {
            sum += p.result;
            ++n;
        }
    EXPECT_NEAR(sum / n, 1.0, 0.02);
    EXPECT_EQ(lines_of(format_csv(scan))[0], "tau_s,g2,g2_analytic");
}

TEST_F(HarnessTest, HomAnalyticColumns) {
    const auto scan = run(parse_config("mode = hom-analytic\nsigma_f = 1.0\ntau_min = -2\ntau_max = 2\nsteps = 101"));
    EXPECT_EQ(lines_of(format_csv(scan))[0], "tau_s,g2");
    EXPECT_EQ(scan.points[50].result, 0.0);
    EXPECT_NEAR(scan.points.front().result, 1.0, 1e-15);
}

TEST_F(HarnessTest, WashoutVisibilityFooter) {
    const auto scan = run(parse_config("mode = washout-scan\nsigma_f = 1\nn_pairs = 10000\nseed = 8\n"));
    ASSERT_EQ(scan.footer.size(), 1u);
    EXPECT_LT(scan.footer[0].second, 0.05);
    const auto lines = lines_of(format_csv(scan));
    EXPECT_EQ(lines.front(), "x_m,mean_i_a");
    EXPECT_EQ(lines.back().rfind("# visibility=", 0), 0u);

    const auto locked = run(parse_config(
        "mode = washout-scan\nsigma_f = 1\nn_pairs = 100\nphase_locked = true\n"));
    EXPECT_GT(locked.footer[0].second, 0.999);
}

TEST_F(HarnessTest, EventModes) {
    const auto hom = run(parse_config("mode = hom-event\nsigma_f = 1\nn_pulses = 200000\nsteps = 5\nseed = 4\n"));
    ASSERT_EQ(hom.points.size(), 5u);
    EXPECT_EQ(hom.points[2].value, 0.0);
    EXPECT_EQ(hom.points[2].result, 0.0);
    EXPECT_EQ(lines_of(format_csv(hom))[0], "tau_s,g2,g2_analytic");

    const auto mzi = run(parse_config("mode = mzi-event\nn_pulses = 200000\nmean_n = 0.3\nsteps = 5\n"));
    EXPECT_EQ(lines_of(format_csv(mzi))[0], "phi_rad,r_ab_event,r_ab,std_error");
    EXPECT_EQ(mzi.points[0].result, 0.0);  // phi = 0: dark port A
    const auto* err = mzi.column("std_error");
    for (std::size_t i = 0; i < mzi.points.size(); ++i)
        EXPECT_NEAR(mzi.points[i].result, mzi.column("r_ab")->values[i], 3.0 * err->values[i] + 1e-12);
}

TEST_F(HarnessTest, InsufficientStatisticsIsRuntimeError) {
    EXPECT_THROW(run(parse_config("mode = mzi-event\nn_pulses = 10\nmean_n = 1e-6\nsteps = 2\n")), Error);
}

TEST_F(HarnessTest, EveryModeIsByteIdenticalAcrossRunsAndThreads) {
    const std::vector<std::string> docs{
        "mode = hom-analytic\nsigma_f = 1\n",
        "mode = hom-ensemble\nsigma_f = 1\nn_pairs = 2000\nsteps = 401\n",
        "mode = hom-event\nsigma_f = 1\nn_pulses = 150000\nsteps = 3\n",
        "mode = mzi-scan\n",
        "mode = mzi-event\nn_pulses = 150000\nmean_n = 0.2\nsteps = 3\n",
        "mode = washout-scan\nsigma_f = 1\nn_pairs = 2000\nsteps = 201\n",
    };
    int k = 0;
    for (const auto& doc : docs) {
        std::string reference;
        for (const char* threads : {"1", "1", "4"}) {
            const auto path = (dir / ("run" + std::to_string(k++) + ".csv")).string();
            run(parse_config(doc, {{"threads", threads}, {"output", path}, {"seed", "12345"}}));
            const auto bytes = slurp(path);
            if (reference.empty()) reference = bytes;
            EXPECT_EQ(bytes, reference) << doc << " threads=" << threads;
        }
    }
}

#ifdef HOMSIM_CLI
int cli(const std::string& args) {
    const int status = std::system((std::string(HOMSIM_CLI) + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST_F(HarnessTest, CliExitCodes) {
    const auto good = dir / "good.cfg";
    std::ofstream(good) << "mode = hom-analytic\nsigma_f = 1.0\nsteps = 11\n";
    const auto out = dir / "out.csv";
    EXPECT_EQ(cli("hom-scan --config " + good.string() + " --output " + out.string()), 0);
    EXPECT_EQ(lines_of(slurp(out)).size(), 12u);

    EXPECT_EQ(cli("hom-scan --config " + good.string() + " --steps -5"), 1);
    EXPECT_EQ(cli("hom-scan --mode hom-event --sigma-f 1"), 1);
    EXPECT_EQ(cli("mzi-scan --no-such-flag"), 1);
    EXPECT_EQ(cli("event-sim --config " + good.string()), 1);  // hom-analytic is not an event mode
    EXPECT_EQ(cli("mzi-scan --config " + (dir / "absent.cfg").string()), 2);
    EXPECT_EQ(cli("mzi-scan --steps 5 --output " + (dir / "no" / "dir.csv").string()), 2);
    EXPECT_EQ(cli("washout-scan --sigma-f 1 --n-pairs 50 --phase-locked --steps 50"), 0);
}

TEST_F(HarnessTest, CliFlagsOverrideFile) {
    const auto cfgp = dir / "mzi.cfg";
    std::ofstream(cfgp) << "mode = mzi-scan\nsteps = 11\n";
    const auto out = dir / "mzi.csv";
    ASSERT_EQ(cli("mzi-scan --config " + cfgp.string() + " --steps 6 --output " + out.string()), 0);
    EXPECT_EQ(lines_of(slurp(out)).size(), 7u);
}
#endif

}  // namespace
}  // namespace homsim
