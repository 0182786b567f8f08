#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mcqgen {

using EmbeddingVector = std::vector<float>;

/// Text-to-vector provider. Implementations must be deterministic per
/// (model_id, text) and safe for concurrent embed() calls.
class Embedder {
public:
    virtual ~Embedder() = default;
    virtual EmbeddingVector embed(const std::string& text) const = 0;
    virtual std::string model_id() const = 0;
};

/// Deterministic local embedder: hashed bag-of-words with a sign trick.
/// Token overlap translates into cosine similarity, which is all the
/// retrieval tests and offline runs need. No network.
class HashedBowEmbedder : public Embedder {
public:
    explicit HashedBowEmbedder(size_t dimension = 256) : dimension_(dimension) {}

    EmbeddingVector embed(const std::string& text) const override;
    std::string model_id() const override { return "hashed-bow-" + std::to_string(dimension_); }

private:
    size_t dimension_;
};

/// dot(u,v) / (|u||v|). Throws DegenerateVectorError on a zero vector
/// and EmbeddingError on dimension mismatch.
double cosine_similarity(const EmbeddingVector& u, const EmbeddingVector& v);

/// FNV-1a, used wherever the toolkit needs a stable cheap hash.
uint64_t fnv1a64(const std::string& s);

}  // namespace mcqgen
