#include <algorithm>
#include <set>
#include <sstream>

#include "bitjson/bench.hpp"
#include "bitjson/error.hpp"
#include "bitjson/io.hpp"

namespace bitjson {
namespace fs = std::filesystem;

namespace {

std::string csv_cell(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::set<std::string> reference_keys(std::span<const CaseReport> reports) {
    std::set<std::string> keys;
    for (const auto& r : reports) {
        for (const auto& [key, size] : r.references) keys.insert(key);
    }
    return keys;
}

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

void summary_table(std::ostringstream& md, const char* title, const SeriesSummary& driven, const SeriesSummary& less) {
    auto negatives = [](const SeriesSummary& s) {
        const double share = s.total == 0 ? 0.0 : 100.0 * static_cast<double>(s.negative) / static_cast<double>(s.total);
        return std::to_string(s.negative) + " / " + std::to_string(s.total) + " (" + format_one_decimal(share) + "%)";
    };
    md << "## " << title << "\n\n"
       << "| Statistic | Schema-driven | Schema-less |\n"
       << "|---|---:|---:|\n"
       << "| Maximum | " << format_one_decimal(driven.maximum) << "% | " << format_one_decimal(less.maximum) << "% |\n"
       << "| Minimum | " << format_one_decimal(driven.minimum) << "% | " << format_one_decimal(less.minimum) << "% |\n"
       << "| Range | " << format_one_decimal(driven.range) << "% | " << format_one_decimal(less.range) << "% |\n"
       << "| Median | " << format_one_decimal(driven.median) << "% | " << format_one_decimal(less.median) << "% |\n"
       << "| Average | " << format_one_decimal(driven.average) << "% | " << format_one_decimal(less.average) << "% |\n"
       << "| Negative cases | " << negatives(driven) << " | " << negatives(less) << " |\n\n";
}

}  // namespace

std::string render_csv(std::span<const CaseReport> reports) {
    const auto keys = reference_keys(reports);
    std::ostringstream csv;
    csv << "name,taxonomy,json_size,gzip_size,schema_driven_size,schema_less_size,"
           "driven_vs_json,less_vs_json,driven_vs_gzip,less_vs_gzip";
    for (const auto& key : keys) csv << "," << csv_cell("ref:" + key);
    csv << "\n";
    for (const auto& r : reports) {
        csv << csv_cell(r.name) << "," << csv_cell(r.taxonomy) << "," << r.json_size << "," << r.gzip_size << ","
            << r.schema_driven_size << "," << r.schema_less_size << "," << r.driven_vs_json.str() << ","
            << r.less_vs_json.str() << "," << r.driven_vs_gzip.str() << "," << r.less_vs_gzip.str();
        for (const auto& key : keys) {
            csv << ",";
            if (auto it = r.references.find(key); it != r.references.end()) csv << it->second;
        }
        csv << "\n";
    }
    return csv.str();
}

std::string render_markdown(std::span<const CaseReport> reports, const Summary& summary) {
    std::ostringstream md;
    md << "# Size report\n\n"
       << "| Case | Taxonomy | JSON | gzip | Schema-driven | Schema-less | Driven vs JSON | Less vs JSON |\n"
       << "|---|---|---:|---:|---:|---:|---:|---:|\n";
    for (const auto& r : reports) {
        md << "| " << r.name << " | " << r.taxonomy << " | " << r.json_size << " | " << r.gzip_size << " | "
           << r.schema_driven_size << " | " << r.schema_less_size << " | " << r.driven_vs_json.str() << "% | "
           << r.less_vs_json.str() << "% |\n";
    }
    md << "\n";
    summary_table(md, "Size reductions compared to JSON", summary.driven_vs_json, summary.less_vs_json);
    summary_table(md, "Size reductions compared to gzip", summary.driven_vs_gzip, summary.less_vs_gzip);
    return md.str();
}

std::string render_svg(const CaseReport& r) {
    std::vector<std::pair<std::string, std::uint64_t>> bars{{"json", r.json_size},
                                                           {"gzip", r.gzip_size},
                                                           {"schema-driven", r.schema_driven_size},
                                                           {"schema-less", r.schema_less_size}};
    for (const auto& [key, size] : r.references) bars.emplace_back("ref:" + key, size);

    constexpr int bar_width = 48;
    constexpr int gap = 24;
    constexpr int plot_height = 240;
    constexpr int top = 40;
    constexpr int left = 40;
    const int width = left * 2 + static_cast<int>(bars.size()) * (bar_width + gap);
    const int height = top + plot_height + 80;
    std::uint64_t peak = 1;
    for (const auto& bar : bars) peak = std::max(peak, bar.second);

    static constexpr const char* colors[] = {"#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860"};
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
        << "<text x=\"" << left << "\" y=\"20\" font-size=\"14\">" << xml_escape(r.name);
    if (!r.taxonomy.empty()) svg << " (" << xml_escape(r.taxonomy) << ")";
    svg << " - bytes</text>\n";
    const int base = top + plot_height;
    svg << "<line x1=\"" << left << "\" y1=\"" << base << "\" x2=\"" << width - left << "\" y2=\"" << base
        << "\" stroke=\"#333\"/>\n";
    for (std::size_t i = 0; i < bars.size(); ++i) {
        const auto& [label, size] = bars[i];
        const int h = static_cast<int>(size * plot_height / peak);
        const int x = left + gap / 2 + static_cast<int>(i) * (bar_width + gap);
        const char* color = colors[std::min<std::size_t>(i, std::size(colors) - 1)];
        svg << "<rect x=\"" << x << "\" y=\"" << base - h << "\" width=\"" << bar_width << "\" height=\"" << h
            << "\" fill=\"" << color << "\"/>\n"
            << "<text x=\"" << x + bar_width / 2 << "\" y=\"" << base - h - 4 << "\" text-anchor=\"middle\">" << size
            << "</text>\n"
            << "<text x=\"" << x + bar_width / 2 << "\" y=\"" << base + 14 << "\" text-anchor=\"end\" transform=\"rotate(-30 "
            << x + bar_width / 2 << " " << base + 14 << ")\">" << xml_escape(label) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void emit_report(std::span<const CaseReport> reports, const Summary& summary, const fs::path& out_dir,
                 unsigned formats) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
    if (formats & report_csv) write_file(out_dir / "report.csv", render_csv(reports));
    if (formats & report_markdown) write_file(out_dir / "summary.md", render_markdown(reports, summary));
    if (formats & report_svg) {
        const fs::path charts = out_dir / "charts";
        fs::create_directories(charts, ec);
        if (ec) throw IoError("cannot create " + charts.string() + ": " + ec.message());
        for (const auto& r : reports) write_file(charts / (r.name + ".svg"), render_svg(r));
    }
}

}  // namespace bitjson
