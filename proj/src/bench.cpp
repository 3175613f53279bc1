#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

#include "bitjson/bench.hpp"
#include "bitjson/codec.hpp"
#include "bitjson/error.hpp"
#include "bitjson/plan.hpp"

namespace bitjson {

__extension__ typedef __int128 i128;

std::string Reduction::str() const {
    const std::int64_t magnitude = tenths < 0 ? -tenths : tenths;
    return (tenths < 0 ? "-" : "") + std::to_string(magnitude / 10) + "." + std::to_string(magnitude % 10);
}

Reduction reduction(std::uint64_t baseline, std::uint64_t size) {
    if (baseline == 0) throw UsageError("reduction against an empty baseline");
    const i128 d = baseline;
    const i128 n = (static_cast<i128>(baseline) - static_cast<i128>(size)) * 1000;
    i128 q = n / d;
    i128 r = n % d;
    if (r < 0) {  // floor division
        q -= 1;
        r += d;
    }
    if (2 * r > d || (2 * r == d && (q & 1) != 0)) q += 1;
    return Reduction{static_cast<std::int64_t>(q)};
}

std::string format_one_decimal(double value) {
    const double tenths = std::nearbyint(value * 10.0);
    const auto t = static_cast<std::int64_t>(tenths);
    return Reduction{t}.str();
}

namespace {

bool round_trips(const JsonValue& document, const std::vector<std::uint8_t>& payload, const EncodingPlan& plan) {
    try {
        return json_equal(decode(payload, plan), document);
    } catch (const DecodeError&) {
        return false;
    }
}

}  // namespace

CaseReport run_case(const CorpusCase& c) {
    CaseReport report;
    report.name = c.name;
    report.taxonomy = c.taxonomy;
    report.references = c.references;

    const std::string minified = minify(c.document);
    report.json_size = minified.size();
    report.gzip_size = gzip_best(minified);

    const EncodingPlan driven = build_plan(c.strict_schema);
    const EncodingPlan less = build_plan(c.loose_schema);
    report.strict_is_any = is_any(c.strict_schema);
    report.driven_bit_bound = plan_bit_bound(driven);

    report.driven_payload = encode(c.document, driven);
    report.less_payload = encode(c.document, less);
    report.schema_driven_size = report.driven_payload.size();
    report.schema_less_size = report.less_payload.size();

    report.round_trip_driven = round_trips(c.document, report.driven_payload, driven);
    report.round_trip_less = round_trips(c.document, report.less_payload, less);
    if (!report.round_trip_driven || !report.round_trip_less) {
        throw FairnessError(c.name + ": lossy round trip in " +
                            (report.round_trip_driven ? "schema-less" : "schema-driven") + " mode");
    }

    report.driven_vs_json = reduction(report.json_size, report.schema_driven_size);
    report.less_vs_json = reduction(report.json_size, report.schema_less_size);
    report.driven_vs_gzip = reduction(report.gzip_size, report.schema_driven_size);
    report.less_vs_gzip = reduction(report.gzip_size, report.schema_less_size);
    return report;
}

std::vector<CaseReport> run_corpus(const std::vector<CorpusCase>& cases, unsigned threads) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(cases.size(), 1)));

    std::vector<CaseReport> reports(cases.size());
    std::vector<std::exception_ptr> errors(cases.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cases.size(); i = next++) {
            try {
                reports[i] = run_case(cases[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }
    for (const auto& error : errors) {
        if (error) std::rethrow_exception(error);
    }
    std::sort(reports.begin(), reports.end(), [](const CaseReport& a, const CaseReport& b) { return a.name < b.name; });
    return reports;
}

SeriesSummary summarize_series(std::span<const double> reductions) {
    if (reductions.empty()) throw UsageError("cannot summarize an empty series");
    std::vector<double> sorted(reductions.begin(), reductions.end());
    std::sort(sorted.begin(), sorted.end());
    SeriesSummary s;
    s.total = sorted.size();
    s.minimum = sorted.front();
    s.maximum = sorted.back();
    s.range = s.maximum - s.minimum;
    const std::size_t mid = sorted.size() / 2;
    s.median = sorted.size() % 2 == 1 ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2.0;
    s.average = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(sorted.size());
    s.negative = static_cast<std::size_t>(std::count_if(sorted.begin(), sorted.end(), [](double v) { return v < 0; }));
    return s;
}

Summary summarize(std::span<const CaseReport> reports) {
    if (reports.empty()) throw UsageError("cannot summarize an empty report list");
    auto series = [&](Reduction CaseReport::*field) {
        std::vector<double> values;
        values.reserve(reports.size());
        for (const auto& r : reports) values.push_back((r.*field).value());
        return summarize_series(values);
    };
    return Summary{series(&CaseReport::driven_vs_json), series(&CaseReport::less_vs_json),
                   series(&CaseReport::driven_vs_gzip), series(&CaseReport::less_vs_gzip)};
}

}  // namespace bitjson
