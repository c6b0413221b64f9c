#include "polaromech/errors.hpp"
#include "polaromech_cli/scenario.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sys/wait.h>
#include <unistd.h>

using namespace pm;
using namespace pm::cli;
namespace fs = std::filesystem;

namespace {

class ScenarioTest : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() /
               ("polaromech_cli_" + std::to_string(::getpid()) + "_" + info->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path write(const std::string& name, const std::string& text) const {
        auto p = dir_ / name;
        std::ofstream(p) << text;
        return p;
    }

    OutputTable table(const std::string& command, const std::string& text) const {
        Context ctx{KeyValueDocument::parse(text, "inline"), MaterialTable::builtin(), dir_};
        return build_tables(find_command(command), ctx, 1).at(0);
    }

    fs::path dir_;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const std::string pillar = "[geometry]\nkind = pillar\nradius = 1.3 um\n";

int run_cli(const std::string& args) {
    const int status = std::system((std::string(POLAROMECH_CLI_PATH) + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}

TEST_F(ScenarioTest, RepeatedRunsAreByteIdentical) {
    auto cfg = write("m.cfg", pillar + "[sweep]\naxes = geometry.radius\ngeometry.radius = 0.5, 2 um\n"
                                       "geometry.radius.points = 5\n");
    RunOptions a, b;
    a.config = b.config = cfg;
    a.out_dir = dir_ / "a";
    b.out_dir = dir_ / "b";
    b.threads = 3;
    auto pa = run_scenario("modes", a);
    auto pb = run_scenario("modes", b);
    ASSERT_EQ(pa.size(), pb.size());
    for (std::size_t i = 0; i < pa.size(); ++i) EXPECT_EQ(slurp(pa[i]), slurp(pb[i]));
}

TEST_F(ScenarioTest, UnknownSweepVariableRejected) {
    EXPECT_THROW(table("modes", pillar + "[sweep]\naxes = geometry.bogus\ngeometry.bogus = 1, 2 um\n"),
                 UnknownSweepVariable);
    EXPECT_THROW(table("modes", pillar + "[sweep]\naxes = geometry.kind\ngeometry.kind = 1, 2\n"), UnknownSweepVariable);
}

TEST_F(ScenarioTest, DegenerateSweepGivesOneRow) {
    EXPECT_EQ(table("modes", pillar + "[sweep]\naxes = geometry.radius\ngeometry.radius = 1, 1 um\n"
                                       "geometry.radius.points = 7\n")
                  .rows.size(),
              1u);
    EXPECT_EQ(table("modes", pillar + "[sweep]\naxes = geometry.radius\ngeometry.radius = 1 um\n").rows.size(), 1u);
}

TEST_F(ScenarioTest, ReversedRangeKeepsDeclaredOrder) {
    auto t = table("modes", pillar + "[sweep]\naxes = geometry.radius\ngeometry.radius = 2, 0.5 um\n"
                                      "geometry.radius.points = 4\n");
    ASSERT_EQ(t.rows.size(), 4u);
    EXPECT_EQ(t.columns[0].name, "geometry.radius");
    EXPECT_EQ(t.columns[0].unit, "um");
    EXPECT_EQ(std::get<double>(t.rows.front()[0]), 2.0);
    EXPECT_EQ(std::get<double>(t.rows.back()[0]), 0.5);
}

TEST_F(ScenarioTest, PillarFrequencyMonotoneInRadius) {
    auto t = table("modes", pillar + "[sweep]\naxes = geometry.radius\ngeometry.radius = 0.5, 2.5 um\n"
                                      "geometry.radius.points = 11\n");
    ASSERT_EQ(t.rows.size(), 11u);
    for (std::size_t i = 1; i < t.rows.size(); ++i)
        EXPECT_LT(std::get<double>(t.rows[i][1]), std::get<double>(t.rows[i - 1][1]));
}

TEST_F(ScenarioTest, GridOrderOuterAxisFirst) {
    auto t = table("coopmap", std::string("[geometry]\nradius = 1 um\nqw_positions = -15, 15 nm\n[couplings]\nphoton_phonon_per_displacement = 0.43 THz/nm\n"
                                          "[polariton]\nexciton_fraction = 0.5\ncavity_decay = 7.2 GHz\n"
                                          "exciton_decay = 4.8 GHz\nmechanical_decay = 0.65 MHz\n"
                                          "[sweep]\naxes = geometry.radius, polariton.exciton_fraction\n"
                                          "geometry.radius = 0.5, 1 um\ngeometry.radius.points = 2\n"
                                          "polariton.exciton_fraction = 0.2, 0.8\npolariton.exciton_fraction.points = 3\n"));
    ASSERT_EQ(t.rows.size(), 6u);
    EXPECT_EQ(std::get<double>(t.rows[2][0]), 0.5);
    EXPECT_EQ(std::get<double>(t.rows[3][0]), 1.0);
    EXPECT_DOUBLE_EQ(std::get<double>(t.rows[4][1]), 0.5);
}

TEST_F(ScenarioTest, UnknownKeyAndMissingFieldAreConfigErrors) {
    EXPECT_THROW(validate_config(KeyValueDocument::parse(pillar + "colour = red\n", "x"), find_command("modes")),
                 ConfigError);
    EXPECT_THROW(validate_config(KeyValueDocument::parse("[geometry]\nkind = pillar\n", "x"), find_command("modes")),
                 ConfigError);
    EXPECT_NO_THROW(validate_config(KeyValueDocument::parse(pillar, "x"), find_command("modes")));
}

TEST_F(ScenarioTest, OutputCarriesProvenanceHeader) {
    auto cfg = write("m.cfg", pillar);
    RunOptions o;
    o.config = cfg;
    o.out_dir = dir_ / "out";
    auto paths = run_scenario("modes", o);
    ASSERT_EQ(paths.size(), 1u);
    auto text = slurp(paths[0]);
    EXPECT_NE(text.find("# config_sha256: "), std::string::npos);
    EXPECT_NE(text.find("# param geometry.radius: 1.3 um"), std::string::npos);
    EXPECT_NE(text.find("# units: "), std::string::npos);
}

TEST_F(ScenarioTest, JsonFormat) {
    auto cfg = write("m.cfg", pillar);
    RunOptions o;
    o.config = cfg;
    o.out_dir = dir_ / "json";
    o.format = OutputFormat::json;
    auto paths = run_scenario("modes", o);
    ASSERT_EQ(paths.size(), 1u);
    EXPECT_EQ(paths[0].extension(), ".json");
    EXPECT_EQ(slurp(paths[0]).front(), '{');
}

TEST_F(ScenarioTest, ExitCodes) {
    auto good = write("good.cfg", pillar);
    auto bad_key = write("bad.cfg", pillar + "bogus = 1\n");
    auto bad_value = write("neg.cfg", "[geometry]\nkind = pillar\nradius = -1 um\n");
    const auto out = " --out " + (dir_ / "cli").string();
    EXPECT_EQ(run_cli("modes --config " + good.string() + out), 0);
    EXPECT_EQ(run_cli("modes --config " + bad_key.string() + out), 2);
    EXPECT_EQ(run_cli("modes"), 2);
    EXPECT_EQ(run_cli("modes --config " + bad_value.string() + out), 3);
}
