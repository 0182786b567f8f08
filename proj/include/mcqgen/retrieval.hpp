#pragma once

#include "mcqgen/corpus.hpp"
#include "mcqgen/embedding.hpp"
#include "mcqgen/mcq.hpp"

#include <cstdint>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace mcqgen {

/// Which MCQ fields are concatenated (newline-separated, fixed order)
/// before embedding for retrieval.
enum class EncodingStrategy {
    none,  // stem only
    key,   // stem + key
    all,   // stem + key + explanation
    one,   // stem + one distractor
};

std::string to_string(EncodingStrategy s);

/// The concatenated text a strategy encodes. A missing explanation
/// encodes as an empty field; strategy `one` requires a distractor
/// index.
std::string encoding_text(const MCQ& q, EncodingStrategy strategy, int distractor_index = -1);

/// Selection result; `short_pool` flags that the pool had fewer than k
/// entries and everything was returned.
struct Selection {
    std::vector<MCQ> items;
    bool short_pool = false;
};

/// A (question, distractor) retrieval unit for the single-distractor
/// strategy.
struct ExamplePair {
    MCQ question;
    size_t distractor_index = 0;
};

struct PairSelection {
    std::vector<ExamplePair> items;
    bool short_pool = false;
};

/// Embedding-based kNN example selection over a frozen pool, with an
/// embedding cache keyed by (model_id, strategy, question id). Safe for
/// concurrent select calls.
class Retriever {
public:
    explicit Retriever(const Embedder& embedder) : embedder_(embedder) {}

    EmbeddingVector encode_mcq(const MCQ& q, EncodingStrategy strategy, int distractor_index = -1) const;

    /// The k pool questions most cosine-similar to the target encoding,
    /// descending; ties broken by ascending id. Returns everything and
    /// flags short_pool when the pool has fewer than k questions.
    Selection knn_select(const MCQ& target, const Corpus& pool, size_t k,
                         EncodingStrategy strategy) const;

    /// Pair-level kNN for the single-distractor strategy: both target
    /// and pool entries encode as stem + that distractor.
    PairSelection knn_select_pairs(const MCQ& target, size_t target_distractor_index,
                                   const std::vector<ExamplePair>& pool, size_t k) const;

    size_t cache_size() const;

private:
    EmbeddingVector cached_encoding(const MCQ& q, EncodingStrategy strategy, int distractor_index) const;

    const Embedder& embedder_;
    mutable std::unordered_map<std::string, EmbeddingVector> cache_;
    mutable std::mutex mutex_;
};

/// Seeded uniform sample without replacement; deterministic per seed
/// independent of platform.
Selection random_select(const Corpus& pool, size_t k, uint64_t seed);
PairSelection random_select_pairs(const std::vector<ExamplePair>& pool, size_t k, uint64_t seed);

}  // namespace mcqgen
