#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>
#include <unistd.h>

#include "bitjson/cli.hpp"
#include "bitjson/io.hpp"

using namespace bitjson;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "bitjson");
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("bitjson_cli_" + std::to_string(::getpid()) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string file(const std::string& name, std::string_view content) {
        const fs::path p = dir_ / name;
        write_file(p, content);
        return p.string();
    }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

}  // namespace

TEST_F(Cli, EncodeSchemaless) {
    const auto r = run({"encode", file("t.json", "true"), "--out", path("t.bin")});
    EXPECT_EQ(r.code, exit_ok) << r.err;
    EXPECT_EQ(r.err, "1 bytes\n");
    EXPECT_EQ(read_file(path("t.bin")), std::string("\xA1"));
}

TEST_F(Cli, ConstSchemaIsEmpty) {
    const auto schema = file("s.json", R"({"const":{"a":[1,2]}})");
    const auto r = run({"encode", file("d.json", R"({"a":[1,2]})"), "--schema", schema, "--out", path("d.bin")});
    EXPECT_EQ(r.code, exit_ok) << r.err;
    EXPECT_EQ(fs::file_size(path("d.bin")), 0u);
    const auto back = run({"decode", path("d.bin"), "--schema", schema});
    EXPECT_EQ(back.code, exit_ok) << back.err;
    EXPECT_EQ(back.out, "{\"a\":[1,2]}\n");
}

TEST_F(Cli, ValidationFailure) {
    const auto schema = file("s.json", R"({"type":"object","properties":{"a":{"type":"integer","maximum":3}}})");
    const auto r = run({"encode", file("d.json", R"({"a":9})"), "--schema", schema});
    EXPECT_EQ(r.code, exit_validation);
    EXPECT_NE(r.err.find("$.a"), std::string::npos) << r.err;
    EXPECT_TRUE(r.out.empty());
}

TEST_F(Cli, ErrorCodes) {
    EXPECT_EQ(run({"encode", file("bad.json", "{\"a\":")}).code, exit_parse);
    EXPECT_EQ(run({"encode", path("missing.json")}).code, exit_io);
    EXPECT_EQ(run({"encode", file("x.json", "1"), "--schema", file("s.json", "false")}).code, exit_schema);
    EXPECT_EQ(run({"encode", file("y.json", "1"), "--mode", "schema-driven"}).code, exit_schema);
    EXPECT_EQ(run({"frobnicate"}).code, exit_schema);
    // a 24-bit array length with nothing behind it
    EXPECT_EQ(run({"decode", file("t.bin", std::string("\x78\xFF", 2))}).code, exit_decode);
    EXPECT_EQ(run({"bench", "--corpus", path("nothing")}).code, exit_schema);
}

TEST_F(Cli, FramedRoundTrip) {
    const auto schema = file("s.json", R"({"type":"array","items":{"enum":["x","y","z"]}})");
    const std::string doc = R"(["z","x","y"])";
    ASSERT_EQ(run({"encode", file("d.json", doc), "--schema", schema, "--framed", "--out", path("d.bj")}).code,
              exit_ok);
    const std::string framed = read_file(path("d.bj"));
    ASSERT_GE(framed.size(), 4u);
    EXPECT_EQ(framed.substr(0, 4), std::string("BJ1\x01", 4));
    const auto back = run({"decode", path("d.bj"), "--framed", "--schema", schema});
    EXPECT_EQ(back.code, exit_ok) << back.err;
    EXPECT_EQ(back.out, doc + "\n");
    // the frame says schema-driven, so a missing schema is a usage error
    EXPECT_EQ(run({"decode", path("d.bj"), "--framed"}).code, exit_schema);
    EXPECT_EQ(run({"decode", file("junk.bj", "XYZ\x00"), "--framed"}).code, exit_decode);
}

TEST_F(Cli, CanonicalizeAndPlan) {
    const auto schema = file("s.json", R"({"type":"integer","minimum":0,"maximum":255,"title":"byte"})");
    const auto c = run({"canonicalize", schema});
    EXPECT_EQ(c.code, exit_ok) << c.err;
    EXPECT_EQ(c.out.find("title"), std::string::npos);
    EXPECT_NE(c.out.find("\"maximum\": 255"), std::string::npos) << c.out;
    const auto p = run({"plan", schema});
    EXPECT_EQ(p.code, exit_ok) << p.err;
    EXPECT_NE(p.out.find("\"bit_bound\": 8"), std::string::npos) << p.out;
}

TEST_F(Cli, BenchWritesReports) {
    const auto r = run({"bench", "--corpus", BITJSON_CORPUS_DIR, "--out", path("report"), "--format", "csv,markdown"});
    EXPECT_EQ(r.code, exit_ok) << r.err;
    EXPECT_EQ(r.err, "27 cases\n");
    EXPECT_TRUE(fs::exists(path("report") + "/report.csv"));
    EXPECT_TRUE(fs::exists(path("report") + "/summary.md"));
    EXPECT_FALSE(fs::exists(path("report") + "/charts"));
    EXPECT_NE(r.out.find("Median"), std::string::npos);
    EXPECT_EQ(run({"bench", "--corpus", BITJSON_CORPUS_DIR, "--out", path("r2"), "--format", "pdf"}).code,
              exit_schema);
}
