#pragma once

// The external visual-name memory: an ordered, immutable key/value store
// of mean-pooled object embeddings (keys) and object names (values), with
// cached norms, JSONL ingestion and bit-exact binary persistence.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "memcap/vecmath.hpp"

namespace memcap {

enum class Source : std::uint8_t {
    unspecified = 0,
    real = 1,
    synthetic = 2,
};

const char* source_name(Source s);
Source source_from_name(const std::string& s);

// One ingested record: an object name plus either raw per-image embeddings
// (mean-pooled at build time) or a pre-averaged key. Exactly one of the
// two payloads is present.
struct MemoryRecord {
    std::string name;
    Source source = Source::unspecified;
    std::optional<FeatureBlock> embeddings;
    std::optional<Vec> key;

    static MemoryRecord with_key(std::string name, Vec key,
                                 Source source = Source::unspecified);
    static MemoryRecord with_embeddings(std::string name, FeatureBlock embeddings,
                                        Source source = Source::unspecified);
};

struct MemoryEntry {
    Vec key;
    std::string name;
    double norm = 0.0;
    Source source = Source::unspecified;
    std::uint64_t insert_index = 0;
};

struct MemoryStats {
    std::uint64_t count = 0;
    std::uint64_t distinct_names = 0;
    std::size_t dim = 0;
    std::uint64_t real_count = 0;
    std::uint64_t synthetic_count = 0;
    std::uint64_t unspecified_count = 0;
};

// Immutable after build. Duplicate names are permitted; zero-norm keys are
// rejected. Entries keep their ingestion order, and insert_index equals the
// position in the records stream.
class VisualNameMemory {
public:
    static VisualNameMemory build(const std::vector<MemoryRecord>& records,
                                  std::size_t dim);

    // New snapshot = this memory's entries followed by the new records.
    // The receiver is left untouched.
    VisualNameMemory expand(const std::vector<MemoryRecord>& records) const;

    MemoryStats stats() const;

    std::size_t dim() const { return dim_; }
    std::size_t count() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const MemoryEntry& entry(std::size_t i) const { return entries_[i]; }
    const std::vector<MemoryEntry>& entries() const { return entries_; }

    void save(const std::filesystem::path& path) const;
    void save(std::ostream& out) const;
    static VisualNameMemory load(const std::filesystem::path& path);
    static VisualNameMemory load(std::istream& in);

    // FNV-1a over the serialized image; used for snapshot identity checks.
    std::uint64_t checksum() const;

private:
    VisualNameMemory(std::size_t dim, std::vector<MemoryEntry> entries)
        : dim_(dim), entries_(std::move(entries)) {}

    std::size_t dim_ = 0;
    std::vector<MemoryEntry> entries_;
};

using MemorySnapshot = std::shared_ptr<const VisualNameMemory>;

// JSON-lines ingestion. One record per line, either
//   {"name": str, "source": "real"|"synthetic", "embeddings": [[f,...] x R]}
// or
//   {"name": str, "key": [f,...]}
MemoryRecord record_from_json_line(const std::string& line);
std::vector<MemoryRecord> read_records_jsonl(std::istream& in);
std::vector<MemoryRecord> read_records_jsonl(const std::filesystem::path& path);

}  // namespace memcap
