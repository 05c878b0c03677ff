#pragma once

// Object-name retrieval over the visual-name memory: one best key per
// query row by cosine similarity, duplicate-name filtering, top-K
// selection with deterministic tie-breaking.

#include <cstddef>
#include <string>
#include <vector>

#include "memcap/memory.hpp"
#include "memcap/vecmath.hpp"

namespace memcap {

// Winner of one query row's scan over the memory.
struct Candidate {
    std::size_t query_index = 0;  // row in the query block
    std::size_t entry_index = 0;  // insert_index of the winning entry
    std::string name;
    double score = 0.0;  // cosine similarity, in [-1, 1]
};

struct ScoredName {
    std::string name;
    double score = 0.0;
};

// Ordered, deduplicated top-K names. Scores are non-increasing and names
// pairwise distinct.
struct RetrievalResult {
    std::vector<ScoredName> names;
    std::size_t k_requested = 0;
};

struct RetrievalConfig {
    std::size_t k = 10;  // k = 0 yields an empty result
};

// For each query row, the entry maximizing cosine similarity. Ties go to
// the smallest insert_index. Throws EmptyMemoryError on an empty memory
// and ZeroVectorError naming the offending query row.
std::vector<Candidate> best_key_per_query(const FeatureBlock& queries,
                                          const VisualNameMemory& mem);

// Keep the best-scoring candidate per distinct name, then the k highest
// scoring names, ordered by score descending; ties by smaller entry_index,
// then smaller query_index.
RetrievalResult dedup_and_topk(const std::vector<Candidate>& candidates, std::size_t k);

RetrievalResult retrieve_names(const FeatureBlock& queries, const VisualNameMemory& mem,
                               const RetrievalConfig& cfg);

}  // namespace memcap
