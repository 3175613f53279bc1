#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <sstream>
#include <unistd.h>

#include "bitjson/bench.hpp"
#include "bitjson/error.hpp"
#include "bitjson/io.hpp"
#include "oracles.hpp"

using namespace bitjson;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("bitjson_bench_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

}  // namespace

TEST(Reduction, MatchesOracle) {
    std::mt19937 rng(5);
    for (int i = 0; i < 20000; ++i) {
        const long long baseline = 1 + rng() % 5000;
        const long long size = rng() % (2 * baseline + 10);
        ASSERT_EQ(reduction(baseline, size).str(), oracle::reduction_text(baseline, size)) << baseline << " " << size;
    }
    // exact ties: 1/16 = 6.25% -> 93.75 -> 93.8 (7 odd), 3/16 -> 81.25 -> 81.2
    EXPECT_EQ(reduction(16, 1).str(), "93.8");
    EXPECT_EQ(reduction(16, 3).str(), "81.2");
    EXPECT_EQ(reduction(16, 19).str(), "-18.8");
    EXPECT_EQ(reduction(7, 7).str(), "0.0");
    EXPECT_THROW(reduction(0, 1), UsageError);
}

TEST(Reduction, PublishedRows) {
    EXPECT_EQ(reduction(34, 21).str(), "38.2");
    EXPECT_EQ(reduction(44, 0).str(), "100.0");
    EXPECT_TRUE(reduction(10, 11).negative());
}

TEST(Summary, Statistics) {
    const std::vector<double> even{40, 10, 30, 20};
    const auto s = summarize_series(even);
    EXPECT_DOUBLE_EQ(s.median, 25);
    EXPECT_DOUBLE_EQ(s.average, 25);
    EXPECT_DOUBLE_EQ(s.maximum, 40);
    EXPECT_DOUBLE_EQ(s.minimum, 10);
    EXPECT_DOUBLE_EQ(s.range, 30);
    EXPECT_EQ(s.negative, 0u);
    EXPECT_EQ(s.total, 4u);
    const std::vector<double> one{50};
    EXPECT_DOUBLE_EQ(summarize_series(one).median, 50);
    const std::vector<double> mixed{-5, 3, -1};
    EXPECT_EQ(summarize_series(mixed).negative, 2u);
    EXPECT_DOUBLE_EQ(summarize_series(mixed).median, -1);
    EXPECT_THROW(summarize_series(std::span<const double>{}), UsageError);
}

TEST(Summary, OneDecimal) {
    EXPECT_EQ(format_one_decimal(25), "25.0");
    EXPECT_EQ(format_one_decimal(86.6667), "86.7");
    EXPECT_EQ(format_one_decimal(-0.04), "0.0");
    EXPECT_EQ(format_one_decimal(-2.25), "-2.2");
    EXPECT_EQ(format_one_decimal(100), "100.0");
}

TEST(Gzip, HeaderAndSize) {
    const auto empty = gzip_compress({});
    ASSERT_GE(empty.size(), 18u);
    EXPECT_EQ(empty[0], 0x1F);
    EXPECT_EQ(empty[1], 0x8B);
    EXPECT_EQ(empty[2], 0x08);
    // mtime is zeroed so output is reproducible
    EXPECT_EQ(empty[4] | empty[5] | empty[6] | empty[7], 0);
    EXPECT_EQ(gzip_best(""), empty.size());
    const std::string run(1000, 'a');
    EXPECT_LT(gzip_best(run), 40u);
    EXPECT_EQ(gzip_best(run), gzip_best(run));
    // tiny inputs inflate
    EXPECT_GT(gzip_best("true"), 4u);
}

TEST(Corpus, LoadsAllCases) {
    const auto cases = load_corpus(BITJSON_CORPUS_DIR);
    ASSERT_EQ(cases.size(), 27u);
    for (std::size_t i = 1; i < cases.size(); ++i) EXPECT_LT(cases[i - 1].name, cases[i].name);
    for (const auto& c : cases) {
        EXPECT_TRUE(is_any(c.loose_schema)) << c.name;
        EXPECT_TRUE(validate(c.strict_schema, c.document)) << c.name;
        EXPECT_FALSE(c.taxonomy.empty()) << c.name;
    }
}

TEST(Corpus, RejectsBadDirectories) {
    const fs::path empty = scratch("empty");
    EXPECT_THROW(load_corpus(empty), UsageError);
    EXPECT_THROW(load_corpus(empty / "missing"), UsageError);

    const fs::path bad = scratch("loose");
    fs::create_directories(bad / "x");
    write_file(bad / "x" / "document.json", std::string("1"));
    write_file(bad / "x" / "schema-strict.json", std::string("{}"));
    write_file(bad / "x" / "schema-loose.json", std::string(R"({"type":"integer"})"));
    write_file(bad / "x" / "meta.json", std::string(R"({"taxonomy":"t","references":{}})"));
    EXPECT_THROW(load_corpus(bad), SchemaError);
    fs::remove_all(empty);
    fs::remove_all(bad);
}

TEST(Bench, CaseSizes) {
    const auto cases = load_corpus(BITJSON_CORPUS_DIR);
    const CaseReport r = run_case(cases.front());
    EXPECT_EQ(r.json_size, minify(cases.front().document).size());
    EXPECT_EQ(r.gzip_size, gzip_best(minify(cases.front().document)));
    EXPECT_EQ(r.schema_driven_size, r.driven_payload.size());
    EXPECT_EQ(r.schema_less_size, r.less_payload.size());
    EXPECT_EQ(r.driven_vs_json, reduction(r.json_size, r.schema_driven_size));
    EXPECT_EQ(r.less_vs_gzip, reduction(r.gzip_size, r.schema_less_size));
    EXPECT_TRUE(r.round_trip_driven);
    EXPECT_TRUE(r.round_trip_less);
}

TEST(Bench, CsvLayout) {
    const auto cases = load_corpus(BITJSON_CORPUS_DIR);
    const auto reports = run_corpus(cases, 2);
    const auto lines = split_lines(render_csv(reports));
    ASSERT_EQ(lines.size(), cases.size() + 1);
    EXPECT_EQ(lines[0].rfind("name,taxonomy,json_size,gzip_size,schema_driven_size,schema_less_size,driven_vs_json,"
                             "less_vs_json,driven_vs_gzip,less_vs_gzip",
                             0),
              0u);
    const auto& r = reports.front();
    const std::string prefix = r.name + "," + r.taxonomy + "," + std::to_string(r.json_size) + "," +
                               std::to_string(r.gzip_size) + "," + std::to_string(r.schema_driven_size) + "," +
                               std::to_string(r.schema_less_size) + "," + r.driven_vs_json.str() + ",";
    EXPECT_EQ(lines[1].rfind(prefix, 0), 0u) << lines[1];
}

TEST(Bench, ParallelMatchesSerial) {
    const auto cases = load_corpus(BITJSON_CORPUS_DIR);
    const auto serial = run_corpus(cases, 1);
    const auto parallel = run_corpus(cases, 8);
    EXPECT_EQ(render_csv(serial), render_csv(parallel));
    ASSERT_EQ(serial.size(), parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        EXPECT_EQ(serial[i].driven_payload, parallel[i].driven_payload);
        EXPECT_EQ(serial[i].less_payload, parallel[i].less_payload);
    }
}

TEST(Bench, EmitReport) {
    const auto cases = load_corpus(BITJSON_CORPUS_DIR);
    const auto reports = run_corpus(cases);
    const Summary summary = summarize(reports);
    const fs::path out = scratch("emit");
    emit_report(reports, summary, out, report_csv | report_markdown | report_svg);
    EXPECT_TRUE(fs::exists(out / "report.csv"));
    EXPECT_TRUE(fs::exists(out / "summary.md"));
    std::size_t charts = 0;
    for (const auto& e : fs::directory_iterator(out / "charts")) charts += e.path().extension() == ".svg";
    EXPECT_EQ(charts, cases.size());
    const std::string md = read_file(out / "summary.md");
    EXPECT_NE(md.find("Median"), std::string::npos);
    EXPECT_NE(md.find("Negative cases"), std::string::npos);
    EXPECT_EQ(render_svg(reports.front()).rfind("<svg", 0), 0u);

    const fs::path only_csv = scratch("csv_only");
    emit_report(reports, summary, only_csv, report_csv);
    EXPECT_TRUE(fs::exists(only_csv / "report.csv"));
    EXPECT_FALSE(fs::exists(only_csv / "summary.md"));
    EXPECT_FALSE(fs::exists(only_csv / "charts"));
    fs::remove_all(out);
    fs::remove_all(only_csv);
}

TEST(Bench, SummaryAgreesWithSeries) {
    const auto reports = run_corpus(load_corpus(BITJSON_CORPUS_DIR));
    std::vector<double> driven;
    for (const auto& r : reports) driven.push_back(r.driven_vs_json.value());
    const auto direct = summarize_series(driven);
    const auto s = summarize(reports);
    EXPECT_DOUBLE_EQ(s.driven_vs_json.median, direct.median);
    EXPECT_DOUBLE_EQ(s.driven_vs_json.average, direct.average);
    EXPECT_EQ(s.driven_vs_json.total, reports.size());
}
