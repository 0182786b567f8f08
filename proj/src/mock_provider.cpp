#include "mcqgen/mock_provider.hpp"

#include "mcqgen/embedding.hpp"
#include "mcqgen/errors.hpp"
#include "mcqgen/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace mcqgen {

void ScriptedProvider::script(const std::string& prompt_text, const std::string& response) {
    responses_[prompt_text] = response;
}

void ScriptedProvider::set_fallback(std::function<std::string(const CompletionRequest&)> fn) {
    fallback_ = std::move(fn);
}

std::string ScriptedProvider::complete_raw(const CompletionRequest& req) {
    auto it = responses_.find(req.prompt.text);
    if (it != responses_.end()) return it->second;
    if (fallback_) return fallback_(req);
    throw Error("scripted provider has no response for this prompt (target '" +
                req.prompt.target_id + "')");
}

OracleProvider::OracleProvider(Corpus corpus, OracleOptions options)
    : corpus_(std::move(corpus)), options_(options) {
    for (const auto& q : corpus_.questions) by_id_[q.id] = &q;
    std::vector<std::string> all_ids;
    all_ids.reserve(corpus_.size());
    for (const auto& q : corpus_.questions) all_ids.push_back(q.id);
    set_pair_universe(all_ids);
}

void OracleProvider::set_pair_universe(const std::vector<std::string>& question_ids) {
    pair_rank_.clear();
    size_t rank = 0;
    for (const auto& id : question_ids) {
        auto it = by_id_.find(id);
        if (it == by_id_.end()) throw ConfigError("oracle pair universe mentions unknown id '" + id + "'");
        for (size_t i = 0; i < it->second->distractors.size(); ++i) {
            pair_rank_[id + "#" + std::to_string(i)] = rank++;
        }
    }
    pair_total_ = rank;
}

const MCQ& OracleProvider::target_of(const CompletionRequest& req) const {
    auto it = by_id_.find(req.prompt.target_id);
    if (it == by_id_.end()) {
        throw Error("oracle provider cannot resolve target id '" + req.prompt.target_id + "'");
    }
    return *it->second;
}

bool OracleProvider::pair_keeps_marker(const std::string& id, int distractor_index) const {
    double rate = std::clamp(options_.feedback_marker_rate, 0.0, 1.0);
    auto it = pair_rank_.find(id + "#" + std::to_string(distractor_index));
    if (it == pair_rank_.end() || pair_total_ == 0) return rate >= 1.0;
    // Integer accounting: exactly round(rate * total) marked pairs,
    // spread evenly over the universe.
    auto marked_total = static_cast<uint64_t>(std::llround(rate * static_cast<double>(pair_total_)));
    uint64_t rank = it->second;
    return (rank + 1) * marked_total / pair_total_ > rank * marked_total / pair_total_;
}

std::string OracleProvider::complete_raw(const CompletionRequest& req) {
    const AssembledPrompt& prompt = req.prompt;
    switch (prompt.kind) {
        case PromptKind::distractor_gen: {
            const MCQ& q = target_of(req);
            size_t n = q.distractors.size();
            std::vector<bool> corrupt(n, false);
            std::mt19937_64 rng(fnv1a64(q.id) ^ options_.seed);
            if (options_.distractor_corrupt_exactly >= 0) {
                size_t k = std::min<size_t>(n, static_cast<size_t>(options_.distractor_corrupt_exactly));
                std::vector<size_t> order(n);
                for (size_t i = 0; i < n; ++i) order[i] = i;
                for (size_t i = 0; i < k; ++i) {
                    size_t j = i + static_cast<size_t>(rng() % (n - i));
                    std::swap(order[i], order[j]);
                }
                for (size_t i = 0; i < k; ++i) corrupt[order[i]] = true;
            } else if (options_.distractor_corrupt_probability > 0) {
                for (size_t i = 0; i < n; ++i) {
                    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
                    corrupt[i] = u < options_.distractor_corrupt_probability;
                }
            }
            std::ostringstream out;
            for (size_t i = 0; i < n; ++i) {
                out << (i + 1) << ". ";
                if (corrupt[i]) {
                    out << "wrong-" << q.id << "-" << (i + 1);
                } else {
                    out << q.distractors[i].answer;
                }
                out << "\n";
            }
            return out.str();
        }
        case PromptKind::feedback_gen: {
            const MCQ& q = target_of(req);
            int idx = prompt.target_distractor_index;
            if (idx < 0 || static_cast<size_t>(idx) >= q.distractors.size()) {
                throw Error("oracle feedback prompt lacks a distractor index for '" + q.id + "'");
            }
            const auto& fb = q.distractors[static_cast<size_t>(idx)].feedback;
            if (!fb) throw Error("no ground-truth feedback for '" + q.id + "'");
            if (pair_keeps_marker(q.id, idx)) return *fb;
            return synth::strip_marker(*fb);
        }
        case PromptKind::answer_adjust: {
            const MCQ& q = target_of(req);
            if (synth::has_marker(prompt.text)) {
                return "Following the feedback fixes the mistake.\nFinal answer: " + q.key;
            }
            return "The feedback does not say what to do.\nFinal answer: unknown";
        }
        case PromptKind::distractor_predict: {
            const MCQ& q = target_of(req);
            int idx = prompt.target_distractor_index;
            if (idx < 0 || static_cast<size_t>(idx) >= q.distractors.size()) {
                throw Error("oracle judge prompt lacks a distractor index for '" + q.id + "'");
            }
            if (synth::has_marker(prompt.text)) {
                return "The feedback names the error directly.\nFinal answer: " +
                       q.distractors[static_cast<size_t>(idx)].answer;
            }
            return "The feedback is too generic.\nFinal answer: unknown";
        }
    }
    throw Error("oracle provider: unknown prompt kind");
}

}  // namespace mcqgen
