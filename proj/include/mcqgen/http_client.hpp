#pragma once

#include "mcqgen/embedding.hpp"
#include "mcqgen/gateway.hpp"

#include <string>

namespace mcqgen {

/// Where a provider lives and how to authenticate against it. The
/// credential is read from the environment, never from config files.
struct HttpEndpoint {
    std::string base_url;  // e.g. "https://api.example.com" or "http://127.0.0.1:8080"
    std::string path;      // e.g. "/v1/chat/completions"
    std::string api_key_env = "MCQGEN_API_KEY";
    int timeout_seconds = 60;
};

/// Chat-completion provider speaking the common JSON shape:
/// POST {model, messages, max_tokens, temperature} -> {text} or an
/// OpenAI-style choices array.
class HttpChatProvider : public ChatProvider {
public:
    explicit HttpChatProvider(HttpEndpoint endpoint);

    std::string complete_raw(const CompletionRequest& req) override;
    std::string name() const override { return "http:" + endpoint_.base_url; }

private:
    HttpEndpoint endpoint_;
    std::string api_key_;
};

/// Embedding provider: POST {model, input} -> {embedding: [...]} or an
/// OpenAI-style data array.
class HttpEmbedder : public Embedder {
public:
    HttpEmbedder(HttpEndpoint endpoint, std::string model_id);

    EmbeddingVector embed(const std::string& text) const override;
    std::string model_id() const override { return model_id_; }

private:
    HttpEndpoint endpoint_;
    std::string model_id_;
    std::string api_key_;
};

}  // namespace mcqgen
