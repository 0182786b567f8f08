#include "mcqgen/embedding.hpp"

#include "mcqgen/errors.hpp"

#include <cctype>
#include <cmath>

namespace mcqgen {

uint64_t fnv1a64(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

EmbeddingVector HashedBowEmbedder::embed(const std::string& text) const {
    EmbeddingVector v(dimension_, 0.0f);
    std::string token;
    auto flush = [&] {
        if (token.empty()) return;
        uint64_t h = fnv1a64(token);
        size_t idx = static_cast<size_t>(h % dimension_);
        v[idx] += ((h >> 32) & 1) ? 1.0f : -1.0f;
        token.clear();
    };
    for (unsigned char c : text) {
        if (std::isalnum(c) || c >= 0x80) {
            token.push_back(static_cast<char>(std::tolower(c)));
        } else {
            flush();
        }
    }
    flush();
    return v;
}

double cosine_similarity(const EmbeddingVector& u, const EmbeddingVector& v) {
    if (u.size() != v.size()) {
        throw EmbeddingError("cosine over mismatched dimensions: " + std::to_string(u.size()) +
                             " vs " + std::to_string(v.size()));
    }
    double dot = 0.0, nu = 0.0, nv = 0.0;
    for (size_t i = 0; i < u.size(); ++i) {
        dot += static_cast<double>(u[i]) * v[i];
        nu += static_cast<double>(u[i]) * u[i];
        nv += static_cast<double>(v[i]) * v[i];
    }
    if (nu == 0.0 || nv == 0.0) throw DegenerateVectorError("cosine over a zero vector");
    return dot / (std::sqrt(nu) * std::sqrt(nv));
}

}  // namespace mcqgen
