#include "mcqgen/gateway.hpp"

#include "mcqgen/digest.hpp"
#include "mcqgen/errors.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace mcqgen {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string completion_cache_key(const CompletionRequest& req) {
    std::ostringstream material;
    material << req.model_id << '\x1f' << req.prompt.text << '\x1f' << req.max_tokens << '\x1f'
             << req.temperature;
    return sha256_hex(material.str());
}

CompletionCache::CompletionCache(std::string dir) : dir_(std::move(dir)) {
    if (!dir_.empty()) fs::create_directories(dir_);
}

std::optional<std::string> CompletionCache::lookup(const std::string& key) const {
    std::lock_guard<std::mutex> lock(mutex_);
    if (dir_.empty()) {
        auto it = memory_.find(key);
        if (it == memory_.end()) return std::nullopt;
        return it->second;
    }
    std::ifstream in(fs::path(dir_) / (key + ".json"));
    if (!in) return std::nullopt;
    try {
        json entry = json::parse(in);
        return entry.at("response_text").get<std::string>();
    } catch (const json::exception&) {
        return std::nullopt;  // corrupt entry behaves like a miss
    }
}

void CompletionCache::store(const std::string& key, const CompletionRequest& req,
                            const std::string& text) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (dir_.empty()) {
        memory_[key] = text;
        return;
    }
    json entry;
    entry["model_id"] = req.model_id;
    entry["max_tokens"] = req.max_tokens;
    entry["temperature"] = req.temperature;
    entry["prompt_text"] = req.prompt.text;
    entry["target_id"] = req.prompt.target_id;
    entry["response_text"] = text;
    entry["created_unix"] =
        std::chrono::duration_cast<std::chrono::seconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count();

    fs::path final_path = fs::path(dir_) / (key + ".json");
    fs::path tmp_path = fs::path(dir_) / (key + ".tmp");
    {
        std::ofstream out(tmp_path, std::ios::binary);
        if (!out) throw IoError("cannot write cache entry: " + tmp_path.string());
        out << entry.dump(2) << "\n";
    }
    fs::rename(tmp_path, final_path);
}

size_t CompletionCache::purge(const std::string& model_id_filter) {
    std::lock_guard<std::mutex> lock(mutex_);
    size_t removed = 0;
    if (dir_.empty()) {
        if (model_id_filter.empty()) {
            removed = memory_.size();
            memory_.clear();
        }
        // In-memory entries do not record the model; per-model purge is
        // only meaningful for the disk cache.
        return removed;
    }
    for (const auto& entry : fs::directory_iterator(dir_)) {
        if (entry.path().extension() != ".json") continue;
        if (!model_id_filter.empty()) {
            std::ifstream in(entry.path());
            if (!in) continue;
            try {
                json record = json::parse(in);
                if (record.value("model_id", "") != model_id_filter) continue;
            } catch (const json::exception&) {
                continue;
            }
        }
        fs::remove(entry.path());
        ++removed;
    }
    return removed;
}

RateLimiter::RateLimiter(double requests_per_minute)
    : per_second_(requests_per_minute / 60.0),
      tokens_(requests_per_minute > 0 ? 1.0 : 0.0),
      last_(std::chrono::steady_clock::now()) {}

void RateLimiter::acquire() {
    if (per_second_ <= 0) return;
    std::unique_lock<std::mutex> lock(mutex_);
    for (;;) {
        auto now = std::chrono::steady_clock::now();
        double elapsed = std::chrono::duration<double>(now - last_).count();
        last_ = now;
        tokens_ = std::min(tokens_ + elapsed * per_second_, std::max(1.0, per_second_));
        if (tokens_ >= 1.0) {
            tokens_ -= 1.0;
            return;
        }
        double wait_s = (1.0 - tokens_) / per_second_;
        lock.unlock();
        std::this_thread::sleep_for(std::chrono::duration<double>(wait_s));
        lock.lock();
    }
}

Gateway::Gateway(std::shared_ptr<ChatProvider> provider, GatewayOptions options)
    : provider_(std::move(provider)),
      options_(options),
      provider_name_(provider_ ? provider_->name() : ""),
      cache_(options.cache_dir),
      limiter_(options.requests_per_minute) {
    if (!provider_) throw ConfigError("gateway needs a configured provider");
    if (options_.max_attempts < 1) throw ConfigError("max_attempts must be at least 1");
}

CompletionResponse Gateway::complete(const CompletionRequest& req) {
    if (req.max_tokens < 1) throw ConfigError("max_tokens must be at least 1");
    if (req.temperature < 0) throw ConfigError("temperature must be non-negative");

    std::string key = completion_cache_key(req);
    if (auto hit = cache_.lookup(key)) {
        std::lock_guard<std::mutex> lock(stats_mutex_);
        ++stats_.cache_hits;
        CompletionResponse res;
        res.text = *hit;
        res.cached = true;
        return res;
    }

    {
        std::unique_lock<std::mutex> lock(slots_mutex_);
        slots_cv_.wait(lock, [&] { return in_flight_ < options_.max_in_flight; });
        ++in_flight_;
    }
    struct SlotRelease {
        Gateway* g;
        ~SlotRelease() {
            std::lock_guard<std::mutex> lock(g->slots_mutex_);
            --g->in_flight_;
            g->slots_cv_.notify_one();
        }
    } release{this};

    std::string text;
    std::string last_error;
    bool done = false;
    for (int attempt = 1; attempt <= options_.max_attempts && !done; ++attempt) {
        limiter_.acquire();
        try {
            text = provider_->complete_raw(req);
            done = true;
        } catch (const TransientProviderError& e) {
            last_error = e.what();
            if (attempt == options_.max_attempts) break;
            {
                std::lock_guard<std::mutex> lock(stats_mutex_);
                ++stats_.retries;
            }
            if (options_.backoff_base_ms > 0) {
                std::this_thread::sleep_for(
                    std::chrono::milliseconds(options_.backoff_base_ms << (attempt - 1)));
            }
        }
        // CredentialError and anything else propagate immediately.
    }
    if (!done) {
        throw ProviderUnavailableError("provider '" + provider_name_ + "' failed after " +
                                       std::to_string(options_.max_attempts) +
                                       " attempts: " + last_error);
    }

    cache_.store(key, req, text);
    {
        std::lock_guard<std::mutex> lock(stats_mutex_);
        ++stats_.cache_misses;
    }
    CompletionResponse res;
    res.text = text;
    res.cached = false;
    return res;
}

size_t Gateway::purge_cache(const std::string& model_id_filter) {
    return cache_.purge(model_id_filter);
}

GatewayStats Gateway::stats() const {
    std::lock_guard<std::mutex> lock(stats_mutex_);
    return stats_;
}

}  // namespace mcqgen
