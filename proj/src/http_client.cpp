#include "mcqgen/http_client.hpp"

#include "mcqgen/errors.hpp"

#include <httplib.h>
#include <json.hpp>

#include <cstdlib>
#include <memory>

namespace mcqgen {

using json = nlohmann::json;

namespace {

std::string read_api_key(const std::string& env_name) {
    if (env_name.empty()) return "";
    const char* value = std::getenv(env_name.c_str());
    return value ? value : "";
}

std::unique_ptr<httplib::Client> make_client(const HttpEndpoint& endpoint) {
    auto client = std::make_unique<httplib::Client>(endpoint.base_url);
    client->set_connection_timeout(endpoint.timeout_seconds);
    client->set_read_timeout(endpoint.timeout_seconds);
    return client;
}

httplib::Headers auth_headers(const std::string& api_key) {
    httplib::Headers headers;
    if (!api_key.empty()) headers.emplace("Authorization", "Bearer " + api_key);
    return headers;
}

// Maps an HTTP outcome onto the gateway's error taxonomy.
std::string check_response(const httplib::Result& result, const std::string& what) {
    if (!result) {
        throw TransientProviderError(what + ": transport error (" +
                                     httplib::to_string(result.error()) + ")");
    }
    int status = result->status;
    if (status == 401 || status == 403) {
        throw CredentialError(what + ": authentication failed (HTTP " + std::to_string(status) + ")");
    }
    if (status == 408 || status == 429 || status >= 500) {
        throw TransientProviderError(what + ": HTTP " + std::to_string(status));
    }
    if (status != 200) {
        throw Error(what + ": HTTP " + std::to_string(status) + " " + result->body);
    }
    return result->body;
}

}  // namespace

HttpChatProvider::HttpChatProvider(HttpEndpoint endpoint)
    : endpoint_(std::move(endpoint)), api_key_(read_api_key(endpoint_.api_key_env)) {}

std::string HttpChatProvider::complete_raw(const CompletionRequest& req) {
    json body;
    body["model"] = req.model_id;
    body["max_tokens"] = req.max_tokens;
    body["temperature"] = req.temperature;
    json messages = json::array();
    for (const auto& m : req.prompt.role_messages) {
        messages.push_back({{"role", m.role}, {"content", m.content}});
    }
    if (messages.empty()) messages.push_back({{"role", "user"}, {"content", req.prompt.text}});
    body["messages"] = std::move(messages);

    auto client = make_client(endpoint_);
    auto result = client->Post(endpoint_.path, auth_headers(api_key_), body.dump(),
                               "application/json");
    std::string payload = check_response(result, "chat completion");

    try {
        json response = json::parse(payload);
        if (response.contains("text") && response["text"].is_string()) {
            return response["text"].get<std::string>();
        }
        if (response.contains("choices") && !response["choices"].empty()) {
            const auto& choice = response["choices"][0];
            if (choice.contains("message")) {
                return choice["message"].value("content", "");
            }
            if (choice.contains("text")) return choice.value("text", "");
        }
    } catch (const json::exception& e) {
        throw Error(std::string("unparseable completion payload: ") + e.what());
    }
    throw Error("completion payload carries no text field");
}

HttpEmbedder::HttpEmbedder(HttpEndpoint endpoint, std::string model_id)
    : endpoint_(std::move(endpoint)),
      model_id_(std::move(model_id)),
      api_key_(read_api_key(endpoint_.api_key_env)) {}

EmbeddingVector HttpEmbedder::embed(const std::string& text) const {
    json body;
    body["model"] = model_id_;
    body["input"] = text;

    auto client = make_client(endpoint_);
    auto result = client->Post(endpoint_.path, auth_headers(api_key_), body.dump(),
                               "application/json");
    std::string payload;
    try {
        payload = check_response(result, "embedding");
    } catch (const TransientProviderError& e) {
        throw EmbeddingError(e.what());
    }

    try {
        json response = json::parse(payload);
        const json* vec = nullptr;
        if (response.contains("embedding")) {
            vec = &response["embedding"];
        } else if (response.contains("data") && !response["data"].empty() &&
                   response["data"][0].contains("embedding")) {
            vec = &response["data"][0]["embedding"];
        }
        if (!vec || !vec->is_array() || vec->empty()) {
            throw EmbeddingError("embedding payload carries no vector");
        }
        EmbeddingVector out;
        out.reserve(vec->size());
        for (const auto& x : *vec) out.push_back(x.get<float>());
        return out;
    } catch (const json::exception& e) {
        throw EmbeddingError(std::string("unparseable embedding payload: ") + e.what());
    }
}

}  // namespace mcqgen
