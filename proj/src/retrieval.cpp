#include "mcqgen/retrieval.hpp"

#include "mcqgen/errors.hpp"

#include <algorithm>
#include <random>

namespace mcqgen {

std::string to_string(EncodingStrategy s) {
    switch (s) {
        case EncodingStrategy::none: return "none";
        case EncodingStrategy::key: return "key";
        case EncodingStrategy::all: return "all";
        case EncodingStrategy::one: return "one";
    }
    return "?";
}

std::string encoding_text(const MCQ& q, EncodingStrategy strategy, int distractor_index) {
    switch (strategy) {
        case EncodingStrategy::none:
            return q.stem;
        case EncodingStrategy::key:
            return q.stem + "\n" + q.key;
        case EncodingStrategy::all:
            return q.stem + "\n" + q.key + "\n" + q.key_explanation.value_or("");
        case EncodingStrategy::one: {
            if (distractor_index < 0 ||
                static_cast<size_t>(distractor_index) >= q.distractors.size()) {
                throw EmbeddingError("strategy 'one' needs a valid distractor index for '" +
                                     q.id + "'");
            }
            return q.stem + "\n" + q.distractors[static_cast<size_t>(distractor_index)].answer;
        }
    }
    throw EmbeddingError("unknown encoding strategy");
}

EmbeddingVector Retriever::encode_mcq(const MCQ& q, EncodingStrategy strategy,
                                      int distractor_index) const {
    return embedder_.embed(encoding_text(q, strategy, distractor_index));
}

EmbeddingVector Retriever::cached_encoding(const MCQ& q, EncodingStrategy strategy,
                                           int distractor_index) const {
    std::string cache_key = embedder_.model_id() + "|" + to_string(strategy) + "|" + q.id;
    if (strategy == EncodingStrategy::one) cache_key += "|" + std::to_string(distractor_index);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find(cache_key);
        if (it != cache_.end()) return it->second;
    }
    EmbeddingVector v = encode_mcq(q, strategy, distractor_index);
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_.emplace(std::move(cache_key), std::move(v)).first->second;
}

size_t Retriever::cache_size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_.size();
}

Selection Retriever::knn_select(const MCQ& target, const Corpus& pool, size_t k,
                                EncodingStrategy strategy) const {
    if (pool.empty()) throw EmptyPoolError("knn_select over an empty pool");
    if (pool.find(target.id) != nullptr) {
        throw ConfigError("target '" + target.id + "' must not be in its own candidate pool");
    }

    EmbeddingVector target_vec = encode_mcq(target, strategy);

    struct Scored {
        double similarity;
        size_t index;
    };
    std::vector<Scored> scored;
    scored.reserve(pool.size());
    for (size_t i = 0; i < pool.size(); ++i) {
        EmbeddingVector v = cached_encoding(pool.questions[i], strategy, -1);
        scored.push_back({cosine_similarity(target_vec, v), i});
    }
    std::sort(scored.begin(), scored.end(), [&](const Scored& a, const Scored& b) {
        if (a.similarity != b.similarity) return a.similarity > b.similarity;
        return pool.questions[a.index].id < pool.questions[b.index].id;
    });

    Selection out;
    out.short_pool = pool.size() < k;
    size_t take = std::min(k, pool.size());
    for (size_t i = 0; i < take; ++i) out.items.push_back(pool.questions[scored[i].index]);
    return out;
}

PairSelection Retriever::knn_select_pairs(const MCQ& target, size_t target_distractor_index,
                                          const std::vector<ExamplePair>& pool, size_t k) const {
    if (pool.empty()) throw EmptyPoolError("knn_select_pairs over an empty pool");

    EmbeddingVector target_vec =
        encode_mcq(target, EncodingStrategy::one, static_cast<int>(target_distractor_index));

    struct Scored {
        double similarity;
        size_t index;
    };
    std::vector<Scored> scored;
    scored.reserve(pool.size());
    for (size_t i = 0; i < pool.size(); ++i) {
        const auto& pair = pool[i];
        if (pair.question.id == target.id) {
            throw ConfigError("target '" + target.id + "' must not be in its own candidate pool");
        }
        EmbeddingVector v = cached_encoding(pair.question, EncodingStrategy::one,
                                            static_cast<int>(pair.distractor_index));
        scored.push_back({cosine_similarity(target_vec, v), i});
    }
    std::sort(scored.begin(), scored.end(), [&](const Scored& a, const Scored& b) {
        if (a.similarity != b.similarity) return a.similarity > b.similarity;
        const auto& pa = pool[a.index];
        const auto& pb = pool[b.index];
        if (pa.question.id != pb.question.id) return pa.question.id < pb.question.id;
        return pa.distractor_index < pb.distractor_index;
    });

    PairSelection out;
    out.short_pool = pool.size() < k;
    size_t take = std::min(k, pool.size());
    for (size_t i = 0; i < take; ++i) out.items.push_back(pool[scored[i].index]);
    return out;
}

namespace {

// Fisher-Yates prefix; avoids std::sample/std::shuffle so draws
// reproduce across standard libraries.
std::vector<size_t> sampled_indices(size_t pool_size, size_t k, uint64_t seed) {
    std::vector<size_t> order(pool_size);
    for (size_t i = 0; i < pool_size; ++i) order[i] = i;
    std::mt19937_64 rng(seed);
    size_t take = std::min(k, pool_size);
    for (size_t i = 0; i < take; ++i) {
        size_t j = i + static_cast<size_t>(rng() % (pool_size - i));
        std::swap(order[i], order[j]);
    }
    order.resize(take);
    return order;
}

}  // namespace

Selection random_select(const Corpus& pool, size_t k, uint64_t seed) {
    if (pool.empty()) throw EmptyPoolError("random_select over an empty pool");
    Selection out;
    out.short_pool = pool.size() < k;
    for (size_t idx : sampled_indices(pool.size(), k, seed)) {
        out.items.push_back(pool.questions[idx]);
    }
    return out;
}

PairSelection random_select_pairs(const std::vector<ExamplePair>& pool, size_t k, uint64_t seed) {
    if (pool.empty()) throw EmptyPoolError("random_select_pairs over an empty pool");
    PairSelection out;
    out.short_pool = pool.size() < k;
    for (size_t idx : sampled_indices(pool.size(), k, seed)) {
        out.items.push_back(pool[idx]);
    }
    return out;
}

}  // namespace mcqgen
