#pragma once

#include "mcqgen/prompt.hpp"

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

namespace mcqgen {

struct CompletionRequest {
    std::string model_id;
    AssembledPrompt prompt;
    int max_tokens = 256;    // output cap used throughout
    double temperature = 0;  // greedy decoding by default
};

struct CompletionResponse {
    std::string text;  // verbatim, whitespace included
    bool cached = false;
    std::map<std::string, std::string> provider_meta;
};

/// Content-addressed key over everything that can change a completion:
/// model, prompt text, max_tokens, temperature.
std::string completion_cache_key(const CompletionRequest& req);

/// Chat-completion backend. complete_raw must be callable from many
/// threads; retry/caching live in the Gateway, not here.
class ChatProvider {
public:
    virtual ~ChatProvider() = default;

    /// Throws TransientProviderError for retryable failures and
    /// CredentialError for authentication failures.
    virtual std::string complete_raw(const CompletionRequest& req) = 0;
    virtual std::string name() const = 0;
};

/// Disk cache, one JSON file per key (atomic write via rename). An
/// empty directory path keeps the cache in memory only.
class CompletionCache {
public:
    explicit CompletionCache(std::string dir);

    std::optional<std::string> lookup(const std::string& key) const;
    void store(const std::string& key, const CompletionRequest& req, const std::string& text);

    /// Removes entries for one model_id, or all entries when the filter
    /// is empty. Returns the number removed.
    size_t purge(const std::string& model_id_filter);

private:
    std::string dir_;
    mutable std::mutex mutex_;
    std::map<std::string, std::string> memory_;  // used when dir_ is empty
};

/// Token bucket. A non-positive rate disables limiting.
class RateLimiter {
public:
    explicit RateLimiter(double requests_per_minute);
    void acquire();

private:
    double per_second_;
    double tokens_;
    std::chrono::steady_clock::time_point last_;
    std::mutex mutex_;
};

struct GatewayOptions {
    std::string cache_dir;         // "" → in-memory cache
    int max_attempts = 4;          // transient failures retried with backoff
    int backoff_base_ms = 250;     // doubled per attempt; 0 in tests
    int max_in_flight = 4;         // bounded provider concurrency
    double requests_per_minute = 0;
};

struct GatewayStats {
    uint64_t cache_hits = 0;
    uint64_t cache_misses = 0;
    uint64_t retries = 0;
};

/// Provider access with deterministic decoding defaults, bounded
/// retries, rate limiting, and the completion cache. Thread-safe.
class Gateway {
public:
    Gateway(std::shared_ptr<ChatProvider> provider, GatewayOptions options);

    CompletionResponse complete(const CompletionRequest& req);
    size_t purge_cache(const std::string& model_id_filter);

    GatewayStats stats() const;
    const std::string& provider_name() const { return provider_name_; }

private:
    std::shared_ptr<ChatProvider> provider_;
    GatewayOptions options_;
    std::string provider_name_;
    CompletionCache cache_;
    RateLimiter limiter_;

    mutable std::mutex stats_mutex_;
    GatewayStats stats_;

    std::mutex slots_mutex_;
    std::condition_variable slots_cv_;
    int in_flight_ = 0;
};

}  // namespace mcqgen
