#include <gtest/gtest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

namespace fs = std::filesystem;

struct Run {
    int code;
    std::string out;
};

std::string quote(const std::string& s) {
    std::string q = "'";
    for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return q + "'";
}

Run cli(const std::string& args, const std::string& env = "") {
    const fs::path out = fs::temp_directory_path() / ("lefschetz_cli_" + std::to_string(::getpid()) + ".txt");
    const std::string cmd = env + " " + quote(LEFSCHETZ_CLI) + " " + args + " > " + out.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out);
    std::stringstream buf;
    buf << in.rdbuf();
    fs::remove(out);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, buf.str()};
}

}  // namespace

TEST(Cli, GammaReportsMultisegmentAndCharacter) {
    auto r = cli("--command gamma --jobs 1 --input " + quote(R"({"left":["2","1"],"right":["1","0"]})"));
    ASSERT_EQ(r.code, 0);
    auto doc = nlohmann::json::parse(r.out);
    ASSERT_EQ(doc["rows"].size(), 1u);
    const auto& row = doc["rows"][0];
    EXPECT_EQ(row["multisegment"], "{[3/2,3/2],[1/2,1/2]}");
    EXPECT_EQ(row["dim"], 2);
    EXPECT_EQ(row["sm_character"]["(2)"], 1);
    EXPECT_EQ(row["sm_character"]["(1,1)"], 1);
    EXPECT_FALSE(row["engine_version"].get<std::string>().empty());
}

TEST(Cli, DeterministicOutput) {
    const std::string args = "--command compose --jobs 2 --input " +
                             quote(R"({"multisegments":[[["0","1"],["-1","0"]],[["0","0"],["1","1"]],[["2","2"]]]})");
    auto a = cli(args), b = cli(args);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    auto doc = nlohmann::json::parse(a.out);
    ASSERT_EQ(doc["rows"].size(), 3u);
    EXPECT_LT(doc["rows"][0]["origin"], doc["rows"][1]["origin"]);
}

TEST(Cli, DiracScanCsv) {
    const fs::path csv = fs::temp_directory_path() / ("lefschetz_scan_" + std::to_string(::getpid()) + ".csv");
    auto r = cli("--command dirac-scan --input '{\"max_nd\": 4}' --output " + csv.string());
    ASSERT_EQ(r.code, 0);
    std::ifstream in(csv);
    std::string header, line;
    std::getline(in, header);
    EXPECT_EQ(header, "origin,n,d,multisegment,twisted_elliptic,unitary,engine_version");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        EXPECT_NE(line.find(",true,lefschetz"), std::string::npos) << line;  // every Speh module is unitary
    }
    EXPECT_EQ(rows, 8u);
    fs::remove(csv);
}

TEST(Cli, CapExceeded) {
    const std::string big = "--command compose --input " + quote(R"({"multisegments":[[["0","0"],["1","1"],["2","2"],["3","3"],["4","4"]]]})");
    EXPECT_EQ(cli(big + " --max-dim 100").code, 3);
    EXPECT_EQ(cli(big, "LEFSCHETZ_CAP_DIM=50").code, 3);
    EXPECT_EQ(cli(big + " --max-rank 4").code, 3);
    EXPECT_EQ(cli(big).code, 0);
}

TEST(Cli, InputErrors) {
    EXPECT_EQ(cli("--command gamma --input '{\"left\": [1]'").code, 2);
    EXPECT_EQ(cli("--command gamma --input '{\"left\": [\"1/2\"], \"right\": [\"0\"]}'").code, 2);
    EXPECT_EQ(cli("--command nonsense").code, 2);
    EXPECT_EQ(cli("--command bz --input '{}'").code, 2);
}

TEST(Cli, Selftest) {
    EXPECT_EQ(cli("--command selftest --max-rank 4").code, 0);
    EXPECT_EQ(cli("--command selftest --max-rank 4 --input '{\"inject_fault\": true}'").code, 1);
}

TEST(Cli, BzAndUnitarity) {
    auto bz = cli("--command bz --input " + quote(R"({"multisegments":[[["0","1"]]],"partitions":[[1],[1,1]]})"));
    ASSERT_EQ(bz.code, 0);
    auto doc = nlohmann::json::parse(bz.out);
    ASSERT_EQ(doc["rows"].size(), 2u);
    auto u = cli("--command unitarity-scan --input '{\"speh\": {\"max_nd\": 3}}'");
    ASSERT_EQ(u.code, 0);
    for (auto& row : nlohmann::json::parse(u.out)["rows"]) EXPECT_TRUE(row["unitary"].get<bool>());
}

TEST(Cli, VerifyUnderDefaultCap) {
    const auto v = cli("--command verify");
    EXPECT_EQ(v.code, 0);
    const auto rows = nlohmann::json::parse(v.out)["rows"];
    ASSERT_EQ(rows.size(), 15u);
    for (auto& row : rows) EXPECT_NE(row["status"], "FAIL") << row.dump();
}
