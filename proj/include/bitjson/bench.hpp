#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bitjson/json_value.hpp"
#include "bitjson/schema.hpp"

namespace bitjson {

/// RFC 1952 stream at zlib level 9 (window 15, memLevel 9, default strategy).
std::vector<std::uint8_t> gzip_compress(std::span<const std::uint8_t> bytes);
std::size_t gzip_best(std::string_view text);

struct CorpusCase {
    std::string name;
    JsonValue document;
    CanonicalSchema strict_schema;
    CanonicalSchema loose_schema;
    std::string taxonomy;
    std::map<std::string, std::uint64_t> references;
};

/// Reads corpus/<case>/{document.json,schema-strict.json,schema-loose.json,meta.json},
/// sorted by case name. Throws UsageError for a missing or empty directory,
/// SchemaError when a loose schema is not the wildcard.
std::vector<CorpusCase> load_corpus(const std::filesystem::path& dir);
CorpusCase load_case(const std::filesystem::path& case_dir);

/// A percentage held in tenths, rounded half-to-even.
struct Reduction {
    std::int64_t tenths = 0;

    double value() const noexcept { return static_cast<double>(tenths) / 10.0; }
    std::string str() const;
    bool negative() const noexcept { return tenths < 0; }
    bool operator==(const Reduction&) const = default;
};

/// (1 - size / baseline) * 100 to one decimal. Throws UsageError for baseline 0.
Reduction reduction(std::uint64_t baseline, std::uint64_t size);

struct CaseReport {
    std::string name;
    std::string taxonomy;
    std::uint64_t json_size = 0;
    std::uint64_t gzip_size = 0;
    std::uint64_t schema_driven_size = 0;
    std::uint64_t schema_less_size = 0;
    Reduction driven_vs_json;
    Reduction less_vs_json;
    Reduction driven_vs_gzip;
    Reduction less_vs_gzip;
    bool round_trip_driven = false;
    bool round_trip_less = false;
    bool strict_is_any = false;
    std::optional<std::uint64_t> driven_bit_bound;
    std::map<std::string, std::uint64_t> references;
    std::vector<std::uint8_t> driven_payload;
    std::vector<std::uint8_t> less_payload;
};

/// Encodes in both modes and checks the round trip. Throws FairnessError if
/// either mode is lossy, SchemaMismatch if the document breaks its schema.
CaseReport run_case(const CorpusCase& c);

/// All cases, in parallel over `threads` workers (0 = hardware concurrency),
/// returned sorted by name.
std::vector<CaseReport> run_corpus(const std::vector<CorpusCase>& cases, unsigned threads = 0);

struct SeriesSummary {
    double maximum = 0;
    double minimum = 0;
    double range = 0;
    double median = 0;
    double average = 0;
    std::size_t negative = 0;
    std::size_t total = 0;
};

/// Throws UsageError on an empty series.
SeriesSummary summarize_series(std::span<const double> reductions);

struct Summary {
    SeriesSummary driven_vs_json;
    SeriesSummary less_vs_json;
    SeriesSummary driven_vs_gzip;
    SeriesSummary less_vs_gzip;
};

Summary summarize(std::span<const CaseReport> reports);

enum ReportFormat : unsigned { report_csv = 1, report_markdown = 2, report_svg = 4 };

std::string render_csv(std::span<const CaseReport> reports);
std::string render_markdown(std::span<const CaseReport> reports, const Summary& summary);
std::string render_svg(const CaseReport& report);

/// Writes report.csv, summary.md and charts/<case>.svg under `out_dir`
/// according to `formats`. Throws IoError.
void emit_report(std::span<const CaseReport> reports, const Summary& summary, const std::filesystem::path& out_dir,
                 unsigned formats);

/// Nearest tenth (ties to even), e.g. 25 -> "25.0".
std::string format_one_decimal(double value);

}  // namespace bitjson
