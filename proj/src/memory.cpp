#include "memcap/memory.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>
#include <utility>

#include <json.hpp>

namespace memcap {

namespace {

constexpr char kMagic[4] = {'E', 'V', 'C', 'M'};
constexpr std::uint32_t kVersion = 1;

std::string trimmed(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

MemoryEntry make_entry(const MemoryRecord& record, std::size_t dim,
                       std::uint64_t insert_index) {
    if (trimmed(record.name).empty()) {
        throw Error("memory record " + std::to_string(insert_index) +
                    ": name empty after trimming");
    }
    if (record.embeddings.has_value() == record.key.has_value()) {
        throw Error("memory record '" + record.name +
                    "': exactly one of embeddings/key must be present");
    }

    Vec key = record.key.has_value() ? *record.key : mean_embed(*record.embeddings);
    if (key.dim() != dim) {
        throw DimensionMismatchError("memory record '" + record.name + "': key dim " +
                                     std::to_string(key.dim()) + ", memory dim " +
                                     std::to_string(dim));
    }
    const double norm = l2_norm(key);
    if (norm == 0.0) {
        throw ZeroKeyError("memory record '" + record.name +
                           "': pooled key has zero norm");
    }
    return MemoryEntry{std::move(key), record.name, norm, record.source, insert_index};
}

}  // namespace

const char* source_name(Source s) {
    switch (s) {
        case Source::real: return "real";
        case Source::synthetic: return "synthetic";
        case Source::unspecified: return "unspecified";
    }
    return "unspecified";
}

Source source_from_name(const std::string& s) {
    if (s == "real") return Source::real;
    if (s == "synthetic") return Source::synthetic;
    if (s == "unspecified" || s.empty()) return Source::unspecified;
    throw FormatError("unknown source tag '" + s + "'");
}

MemoryRecord MemoryRecord::with_key(std::string name, Vec key, Source source) {
    MemoryRecord r;
    r.name = std::move(name);
    r.source = source;
    r.key = std::move(key);
    return r;
}

MemoryRecord MemoryRecord::with_embeddings(std::string name, FeatureBlock embeddings,
                                           Source source) {
    MemoryRecord r;
    r.name = std::move(name);
    r.source = source;
    r.embeddings = std::move(embeddings);
    return r;
}

VisualNameMemory VisualNameMemory::build(const std::vector<MemoryRecord>& records,
                                         std::size_t dim) {
    if (dim == 0) throw Error("memory dim must be positive");
    std::vector<MemoryEntry> entries;
    entries.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        entries.push_back(make_entry(records[i], dim, entries.size()));
    }
    return VisualNameMemory(dim, std::move(entries));
}

VisualNameMemory VisualNameMemory::expand(const std::vector<MemoryRecord>& records) const {
    std::vector<MemoryEntry> entries = entries_;
    entries.reserve(entries.size() + records.size());
    for (const MemoryRecord& record : records) {
        entries.push_back(make_entry(record, dim_, entries.size()));
    }
    return VisualNameMemory(dim_, std::move(entries));
}

MemoryStats VisualNameMemory::stats() const {
    MemoryStats s;
    s.count = entries_.size();
    s.dim = dim_;
    std::unordered_set<std::string> names;
    names.reserve(entries_.size());
    for (const MemoryEntry& e : entries_) {
        names.insert(e.name);
        switch (e.source) {
            case Source::real: ++s.real_count; break;
            case Source::synthetic: ++s.synthetic_count; break;
            case Source::unspecified: ++s.unspecified_count; break;
        }
    }
    s.distinct_names = names.size();
    return s;
}

void VisualNameMemory::save(std::ostream& out) const {
    out.write(kMagic, 4);
    binio::write_u32(out, kVersion);
    binio::write_u32(out, static_cast<std::uint32_t>(dim_));
    binio::write_u64(out, entries_.size());
    for (const MemoryEntry& e : entries_) {
        binio::write_u8(out, static_cast<std::uint8_t>(e.source));
        binio::write_string(out, e.name);
        for (std::size_t c = 0; c < dim_; ++c) binio::write_f32(out, e.key[c]);
    }
    if (!out) throw IoError("failed writing memory stream");
}

void VisualNameMemory::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    save(out);
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

VisualNameMemory VisualNameMemory::load(std::istream& in) {
    char magic[4];
    if (!in.read(magic, 4)) binio::fail_truncated("memory magic");
    if (std::memcmp(magic, kMagic, 4) != 0) {
        throw FormatError(std::string("bad memory magic '") + std::string(magic, 4) +
                          "', expected 'EVCM'");
    }
    const std::uint32_t version = binio::read_u32(in, "memory version");
    if (version != kVersion) {
        throw FormatError("unsupported memory version " + std::to_string(version));
    }
    const std::uint32_t dim = binio::read_u32(in, "memory dim");
    if (dim == 0) throw FormatError("memory dim is zero");
    const std::uint64_t count = binio::read_u64(in, "memory count");

    std::vector<MemoryEntry> entries;
    entries.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint8_t tag = binio::read_u8(in, "entry source");
        if (tag > 2) throw FormatError("entry " + std::to_string(i) +
                                       ": invalid source tag " + std::to_string(tag));
        std::string name = binio::read_string(in, "entry name");
        std::vector<float> values(dim);
        for (std::uint32_t c = 0; c < dim; ++c)
            values[c] = binio::read_f32(in, "entry key");
        Vec key(std::move(values));
        const double norm = l2_norm(key);
        if (norm == 0.0) {
            throw FormatError("entry " + std::to_string(i) + " ('" + name +
                              "') has zero-norm key");
        }
        entries.push_back(MemoryEntry{std::move(key), std::move(name), norm,
                                      static_cast<Source>(tag), i});
    }
    binio::expect_eof(in, "memory file");
    return VisualNameMemory(dim, std::move(entries));
}

VisualNameMemory VisualNameMemory::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    return load(in);
}

std::uint64_t VisualNameMemory::checksum() const {
    std::ostringstream out(std::ios::binary);
    save(out);
    const std::string bytes = out.str();
    return fnv1a64(bytes.data(), bytes.size());
}

MemoryRecord record_from_json_line(const std::string& line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("record is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("name") || !j["name"].is_string()) {
        throw FormatError("record must be an object with a string 'name'");
    }
    MemoryRecord r;
    r.name = j["name"].get<std::string>();
    if (j.contains("source")) r.source = source_from_name(j["source"].get<std::string>());

    const bool has_embeddings = j.contains("embeddings");
    const bool has_key = j.contains("key");
    if (has_embeddings == has_key) {
        throw FormatError("record '" + r.name +
                          "' must carry exactly one of 'embeddings'/'key'");
    }
    try {
        if (has_key) {
            r.key = Vec(j["key"].get<std::vector<float>>());
        } else {
            r.embeddings =
                FeatureBlock::from_rows(j["embeddings"].get<std::vector<std::vector<float>>>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("record '" + r.name + "': " + e.what());
    }
    return r;
}

std::vector<MemoryRecord> read_records_jsonl(std::istream& in) {
    std::vector<MemoryRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trimmed(line).empty()) continue;
        try {
            records.push_back(record_from_json_line(line));
        } catch (const Error& e) {
            throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return records;
}

std::vector<MemoryRecord> read_records_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    return read_records_jsonl(in);
}

}  // namespace memcap
