#include "bitjson/cli.hpp"

#include <CLI11.hpp>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "bitjson/bench.hpp"
#include "bitjson/codec.hpp"
#include "bitjson/error.hpp"
#include "bitjson/io.hpp"
#include "bitjson/plan.hpp"

namespace bitjson {
namespace {

struct Config {
    std::string input;
    std::string mode;
    std::string schema;
    bool framed = false;
    std::string out;
    std::string corpus;
    std::vector<std::string> formats{"csv", "markdown", "svg"};
    unsigned threads = 0;
};

std::string read_input(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    return read_file(path);
}

void write_output(const Config& cfg, std::string_view data, std::ostream& out) {
    if (cfg.out.empty() || cfg.out == "-") {
        out.write(data.data(), static_cast<std::streamsize>(data.size()));
        out.flush();
    } else {
        write_file(cfg.out, data);
    }
}

std::string_view as_text(const std::vector<std::uint8_t>& bytes) {
    return {reinterpret_cast<const char*>(bytes.data()), bytes.size()};
}

Mode resolve_mode(const Config& cfg) {
    if (cfg.mode.empty()) return cfg.schema.empty() ? Mode::schema_less : Mode::schema_driven;
    const Mode mode = cfg.mode == "schema-driven" ? Mode::schema_driven : Mode::schema_less;
    if (mode == Mode::schema_driven && cfg.schema.empty()) throw UsageError("--mode schema-driven requires --schema");
    return mode;
}

EncodingPlan plan_for(Mode mode, const Config& cfg) {
    if (mode == Mode::schema_less) return schemaless_plan();
    if (cfg.schema.empty()) throw UsageError("schema-driven payload requires --schema");
    return build_plan(canonicalize(parse_json(read_file(cfg.schema))));
}

int cmd_encode(const Config& cfg, std::ostream& out, std::ostream& err) {
    const JsonValue document = parse_json(read_input(cfg.input));
    const Mode mode = resolve_mode(cfg);
    const EncodingPlan plan = plan_for(mode, cfg);
    std::vector<std::uint8_t> payload = encode(document, plan);
    const std::size_t size = payload.size();
    if (cfg.framed) payload = frame(mode, payload);
    write_output(cfg, as_text(payload), out);
    err << size << " bytes\n";
    return exit_ok;
}

int cmd_decode(const Config& cfg, std::ostream& out, std::ostream&) {
    const std::string raw = read_input(cfg.input);
    std::span<const std::uint8_t> bytes{reinterpret_cast<const std::uint8_t*>(raw.data()), raw.size()};
    Mode mode{};
    std::vector<std::uint8_t> payload;
    if (cfg.framed) {
        Framed framed = unframe(bytes);
        mode = framed.mode;
        payload = std::move(framed.payload);
    } else {
        mode = resolve_mode(cfg);
        payload.assign(bytes.begin(), bytes.end());
    }
    const EncodingPlan plan = plan_for(mode, cfg);
    write_output(cfg, minify(decode(payload, plan)) + "\n", out);
    return exit_ok;
}

int cmd_canonicalize(const Config& cfg, std::ostream& out, std::ostream&) {
    const CanonicalSchema schema = canonicalize(parse_json(read_input(cfg.input)));
    write_output(cfg, pretty(to_json(schema)), out);
    return exit_ok;
}

int cmd_plan(const Config& cfg, std::ostream& out, std::ostream&) {
    const EncodingPlan plan = build_plan(canonicalize(parse_json(read_input(cfg.input))));
    write_output(cfg, pretty(to_json(plan)), out);
    return exit_ok;
}

int cmd_bench(const Config& cfg, std::ostream& out, std::ostream& err) {
    unsigned formats = 0;
    for (const auto& f : cfg.formats) {
        if (f == "csv") {
            formats |= report_csv;
        } else if (f == "markdown") {
            formats |= report_markdown;
        } else if (f == "svg") {
            formats |= report_svg;
        } else {
            throw UsageError("unknown report format: " + f);
        }
    }
    const auto cases = load_corpus(cfg.corpus);
    const auto reports = run_corpus(cases, cfg.threads);
    const Summary summary = summarize(reports);
    emit_report(reports, summary, cfg.out.empty() ? "out" : cfg.out, formats);
    out << render_markdown(reports, summary);
    err << reports.size() << " cases\n";
    return exit_ok;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e)) return exit_parse;
    if (dynamic_cast<const SchemaError*>(&e) || dynamic_cast<const UsageError*>(&e)) return exit_schema;
    if (dynamic_cast<const SchemaMismatch*>(&e) || dynamic_cast<const EncodeError*>(&e)) return exit_validation;
    if (dynamic_cast<const IoError*>(&e)) return exit_io;
    if (dynamic_cast<const DecodeError*>(&e)) return exit_decode;
    if (dynamic_cast<const FairnessError*>(&e)) return exit_fairness;
    return exit_io;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Compact binary encoding for JSON documents", "bitjson"};
    app.require_subcommand(1);
    Config cfg;

    auto add_io = [&](CLI::App* sub, const char* what) {
        sub->add_option("input", cfg.input, what)->required();
        sub->add_option("--out", cfg.out, "Output path (default: stdout)");
    };
    auto add_mode = [&](CLI::App* sub) {
        sub->add_option("--mode", cfg.mode, "schema-driven or schema-less")
            ->check(CLI::IsMember({"schema-driven", "schema-less"}));
        sub->add_option("--schema", cfg.schema, "JSON Schema for schema-driven mode");
        sub->add_flag("--framed", cfg.framed, "BJ1 container with a mode byte");
    };

    auto* enc = app.add_subcommand("encode", "Encode a JSON document");
    add_io(enc, "JSON document ('-' for stdin)");
    add_mode(enc);
    auto* dec = app.add_subcommand("decode", "Decode a payload to minified JSON");
    add_io(dec, "Payload ('-' for stdin)");
    add_mode(dec);
    auto* canon = app.add_subcommand("canonicalize", "Print the canonical form of a schema");
    add_io(canon, "JSON Schema");
    auto* plan = app.add_subcommand("plan", "Print the encoding plan of a schema");
    add_io(plan, "JSON Schema");
    auto* bench = app.add_subcommand("bench", "Measure sizes over a corpus");
    bench->add_option("--corpus", cfg.corpus, "Corpus directory")->required();
    bench->add_option("--out", cfg.out, "Report directory (default: out)");
    bench->add_option("--format", cfg.formats, "csv,markdown,svg")->delimiter(',');
    bench->add_option("--threads", cfg.threads, "Worker threads (0: all cores)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_schema;
    }

    try {
        if (*enc) return cmd_encode(cfg, out, err);
        if (*dec) return cmd_decode(cfg, out, err);
        if (*canon) return cmd_canonicalize(cfg, out, err);
        if (*plan) return cmd_plan(cfg, out, err);
        return cmd_bench(cfg, out, err);
    } catch (const SchemaMismatch& e) {
        err << "validation failed: " << e.what() << "\n";
        return exit_validation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

}  // namespace bitjson
