#include <algorithm>

#include "bitjson/bench.hpp"
#include "bitjson/error.hpp"
#include "bitjson/io.hpp"

namespace bitjson {
namespace fs = std::filesystem;

namespace {

JsonValue read_json(const fs::path& path) {
    try {
        return parse_json(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), e.offset());
    }
}

}  // namespace

CorpusCase load_case(const fs::path& case_dir) {
    CorpusCase c;
    c.name = case_dir.filename().string();
    c.document = read_json(case_dir / "document.json");
    c.strict_schema = canonicalize(read_json(case_dir / "schema-strict.json"));
    c.loose_schema = canonicalize(read_json(case_dir / "schema-loose.json"));
    if (!is_any(c.loose_schema)) throw SchemaError(c.name + ": loose schema is not the wildcard");

    const fs::path meta_path = case_dir / "meta.json";
    if (fs::exists(meta_path)) {
        const JsonValue meta = read_json(meta_path);
        if (!meta.is_object()) throw UsageError(c.name + ": meta.json must be an object");
        if (const JsonValue* taxonomy = meta.as_object().find("taxonomy"); taxonomy && taxonomy->is_string()) {
            c.taxonomy = taxonomy->as_string();
        }
        if (const JsonValue* refs = meta.as_object().find("references"); refs && refs->is_object()) {
            for (const auto& [key, size] : refs->as_object()) {
                const auto n = integral_value(size);
                if (!n || *n < 0) throw UsageError(c.name + ": reference size for " + key + " is not a byte count");
                c.references.emplace(key, static_cast<std::uint64_t>(*n));
            }
        }
    }
    return c;
}

std::vector<CorpusCase> load_corpus(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw UsageError("corpus directory not found: " + dir.string());
    std::vector<fs::path> case_dirs;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_directory() && fs::exists(entry.path() / "document.json")) case_dirs.push_back(entry.path());
    }
    if (case_dirs.empty()) throw UsageError("corpus directory has no cases: " + dir.string());
    std::sort(case_dirs.begin(), case_dirs.end());
    std::vector<CorpusCase> cases;
    cases.reserve(case_dirs.size());
    for (const auto& case_dir : case_dirs) cases.push_back(load_case(case_dir));
    return cases;
}

}  // namespace bitjson
