#include "memcap/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace memcap {

std::vector<Candidate> best_key_per_query(const FeatureBlock& queries,
                                          const VisualNameMemory& mem) {
    if (mem.empty()) throw EmptyMemoryError("best_key_per_query: memory is empty");
    if (queries.dim() != mem.dim()) {
        throw DimensionMismatchError("best_key_per_query: query dim " +
                                     std::to_string(queries.dim()) + ", memory dim " +
                                     std::to_string(mem.dim()));
    }

    std::vector<Candidate> candidates;
    candidates.reserve(queries.rows());
    for (std::size_t j = 0; j < queries.rows(); ++j) {
        const auto q = queries.row(j);
        const double q_norm = l2_norm(q);
        if (q_norm == 0.0) {
            throw ZeroVectorError("best_key_per_query: query row " + std::to_string(j) +
                                  " has zero norm");
        }

        std::size_t best_i = 0;
        double best_score = -2.0;
        for (std::size_t i = 0; i < mem.count(); ++i) {
            const MemoryEntry& e = mem.entry(i);
            double dot = 0.0;
            const float* kd = e.key.data();
            for (std::size_t c = 0; c < q.size(); ++c)
                dot += static_cast<double>(q[c]) * static_cast<double>(kd[c]);
            const double score = std::clamp(dot / (q_norm * e.norm), -1.0, 1.0);
            if (score > best_score) {  // strict: equal scores keep the earlier entry
                best_score = score;
                best_i = i;
            }
        }
        const MemoryEntry& winner = mem.entry(best_i);
        candidates.push_back(Candidate{j, winner.insert_index, winner.name, best_score});
    }
    return candidates;
}

RetrievalResult dedup_and_topk(const std::vector<Candidate>& candidates, std::size_t k) {
    // Best representative per distinct name.
    std::unordered_map<std::string, Candidate> best;
    best.reserve(candidates.size());
    for (const Candidate& c : candidates) {
        auto [it, inserted] = best.try_emplace(c.name, c);
        if (inserted) continue;
        Candidate& cur = it->second;
        const bool wins = c.score > cur.score ||
                          (c.score == cur.score &&
                           (c.entry_index < cur.entry_index ||
                            (c.entry_index == cur.entry_index &&
                             c.query_index < cur.query_index)));
        if (wins) cur = c;
    }

    std::vector<Candidate> survivors;
    survivors.reserve(best.size());
    for (auto& [name, c] : best) survivors.push_back(std::move(c));
    std::sort(survivors.begin(), survivors.end(),
              [](const Candidate& a, const Candidate& b) {
                  if (a.score != b.score) return a.score > b.score;
                  if (a.entry_index != b.entry_index) return a.entry_index < b.entry_index;
                  return a.query_index < b.query_index;
              });

    RetrievalResult result;
    result.k_requested = k;
    const std::size_t take = std::min(k, survivors.size());
    result.names.reserve(take);
    for (std::size_t i = 0; i < take; ++i) {
        result.names.push_back(ScoredName{survivors[i].name, survivors[i].score});
    }
    return result;
}

RetrievalResult retrieve_names(const FeatureBlock& queries, const VisualNameMemory& mem,
                               const RetrievalConfig& cfg) {
    return dedup_and_topk(best_key_per_query(queries, mem), cfg.k);
}

}  // namespace memcap
