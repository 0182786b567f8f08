#include "mcqgen/corpus.hpp"

#include "mcqgen/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace mcqgen {

using json = nlohmann::ordered_json;

const MCQ* Corpus::find(const std::string& id) const {
    for (const auto& q : questions) {
        if (q.id == id) return &q;
    }
    return nullptr;
}

namespace {

std::string require_string(const json& obj, const char* field) {
    if (!obj.contains(field) || !obj[field].is_string()) {
        throw Error(std::string("missing or non-string field '") + field + "'");
    }
    return obj[field].get<std::string>();
}

std::optional<std::string> optional_string(const json& obj, const char* field) {
    if (!obj.contains(field) || obj[field].is_null()) return std::nullopt;
    if (!obj[field].is_string()) {
        throw Error(std::string("field '") + field + "' must be a string or null");
    }
    return obj[field].get<std::string>();
}

}  // namespace

MCQ parse_mcq_json(const std::string& line) {
    json obj = json::parse(line);
    if (!obj.is_object()) throw Error("record is not a JSON object");

    MCQ q;
    q.id = require_string(obj, "id");
    q.stem = require_string(obj, "stem");
    q.key = require_string(obj, "key");
    q.key_explanation = optional_string(obj, "key_explanation");
    q.topic = require_string(obj, "topic");
    q.subtopic = require_string(obj, "subtopic");

    if (!obj.contains("distractors") || !obj["distractors"].is_array()) {
        throw Error("missing or non-array field 'distractors'");
    }
    for (const auto& item : obj["distractors"]) {
        Distractor d;
        d.answer = require_string(item, "answer");
        d.feedback = optional_string(item, "feedback");
        q.distractors.push_back(std::move(d));
    }

    if (obj.contains("meta") && obj["meta"].is_object()) {
        SynthProvenance meta;
        meta.template_name = obj["meta"].value("template", "");
        if (obj["meta"].contains("params")) {
            for (auto& [k, v] : obj["meta"]["params"].items()) {
                meta.params[k] = v.is_string() ? v.get<std::string>() : v.dump();
            }
        }
        q.meta = std::move(meta);
    }
    return q;
}

Corpus load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open corpus file: " + path);

    Corpus corpus;
    corpus.source_tag = path;
    std::set<std::string> ids;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        MCQ q;
        try {
            q = parse_mcq_json(line);
        } catch (const json::exception& e) {
            throw CorpusParseError(line_no, e.what());
        } catch (const SchemaError&) {
            throw;
        } catch (const Error& e) {
            throw CorpusParseError(line_no, e.what());
        }
        validate_mcq(q);
        if (!ids.insert(q.id).second) throw SchemaError(q.id, "duplicate question id");
        corpus.questions.push_back(std::move(q));
    }
    return corpus;
}

std::string mcq_to_json(const MCQ& q) {
    json obj;
    obj["id"] = q.id;
    obj["stem"] = q.stem;
    obj["key"] = q.key;
    obj["key_explanation"] = q.key_explanation ? json(*q.key_explanation) : json(nullptr);
    json ds = json::array();
    for (const auto& d : q.distractors) {
        json item;
        item["answer"] = d.answer;
        item["feedback"] = d.feedback ? json(*d.feedback) : json(nullptr);
        ds.push_back(std::move(item));
    }
    obj["distractors"] = std::move(ds);
    obj["topic"] = q.topic;
    obj["subtopic"] = q.subtopic;
    if (q.meta) {
        json meta;
        meta["template"] = q.meta->template_name;
        json params;
        for (const auto& [k, v] : q.meta->params) params[k] = v;
        meta["params"] = std::move(params);
        obj["meta"] = std::move(meta);
    }
    return obj.dump();
}

std::string corpus_to_jsonl(const Corpus& corpus) {
    std::ostringstream out;
    for (const auto& q : corpus.questions) out << mcq_to_json(q) << "\n";
    return out.str();
}

void save_corpus(const Corpus& corpus, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write corpus file: " + path);
    out << corpus_to_jsonl(corpus);
}

Split split_corpus(const Corpus& corpus, double ratio, uint64_t seed) {
    if (corpus.size() < 2) throw CorpusTooSmallError("corpus must contain at least 2 questions");
    if (!(ratio > 0.0 && ratio < 1.0)) throw ConfigError("split ratio must be in (0, 1)");

    // Hand-rolled Fisher-Yates: std::shuffle's draw sequence is
    // implementation-defined, and splits must reproduce across toolchains.
    std::vector<size_t> order(corpus.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::mt19937_64 rng(seed);
    for (size_t i = order.size() - 1; i > 0; --i) {
        size_t j = static_cast<size_t>(rng() % (i + 1));
        std::swap(order[i], order[j]);
    }

    auto cut = static_cast<size_t>(std::llround(ratio * static_cast<double>(corpus.size())));
    cut = std::clamp<size_t>(cut, 1, corpus.size() - 1);

    Split split;
    split.ratio = ratio;
    split.seed = seed;
    split.candidates.source_tag = corpus.source_tag + "#candidates";
    split.test.source_tag = corpus.source_tag + "#test";
    for (size_t i = 0; i < order.size(); ++i) {
        auto& side = i < cut ? split.candidates : split.test;
        side.questions.push_back(corpus.questions[order[i]]);
    }
    return split;
}

Corpus filter_candidates(const Corpus& candidates, const MCQ& target, bool exclude_same_subtopic) {
    if (!exclude_same_subtopic) return candidates;
    Corpus out;
    out.source_tag = candidates.source_tag;
    for (const auto& q : candidates.questions) {
        if (q.subtopic != target.subtopic) out.questions.push_back(q);
    }
    if (out.empty()) {
        throw EmptyPoolError("no candidates left after excluding subtopic '" + target.subtopic + "'");
    }
    return out;
}

}  // namespace mcqgen
