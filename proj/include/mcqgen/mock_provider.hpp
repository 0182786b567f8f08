#pragma once

#include "mcqgen/corpus.hpp"
#include "mcqgen/gateway.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace mcqgen {

/// Mock provider answering from an exact prompt→response map, with an
/// optional fallback function. Unscripted prompts throw.
class ScriptedProvider : public ChatProvider {
public:
    void script(const std::string& prompt_text, const std::string& response);
    void set_fallback(std::function<std::string(const CompletionRequest&)> fn);

    std::string complete_raw(const CompletionRequest& req) override;
    std::string name() const override { return "scripted-mock"; }

private:
    std::map<std::string, std::string> responses_;
    std::function<std::string(const CompletionRequest&)> fallback_;
};

struct OracleOptions {
    /// Per-distractor probability of replacing a ground-truth answer
    /// with a guaranteed non-match.
    double distractor_corrupt_probability = 0.0;
    /// When >= 0, corrupt exactly this many slots per question instead.
    int distractor_corrupt_exactly = -1;
    /// Fraction of (question, distractor) pairs whose generated
    /// feedback keeps its provenance marker. Accounting is exact over
    /// the pair universe: floor/ceil never drifts the global rate.
    double feedback_marker_rate = 1.0;
    uint64_t seed = 0;
};

/// Mock provider that answers every prompt kind from the corpus's own
/// ground truth:
///   - distractor generation: the question's distractors, corrupted per
///     options, as a numbered list
///   - feedback generation: the pair's ground-truth feedback, with the
///     provenance marker kept for exactly the configured rate of pairs
///   - judge prompts: correct final answer iff the prompt carries a
///     provenance marker
///
/// Deterministic per (corpus, options, target id); no network.
class OracleProvider : public ChatProvider {
public:
    OracleProvider(Corpus corpus, OracleOptions options);

    /// Restricts marker-rate accounting to these questions' pairs (in
    /// the given order), e.g. the test split of an experiment.
    void set_pair_universe(const std::vector<std::string>& question_ids);

    std::string complete_raw(const CompletionRequest& req) override;
    std::string name() const override { return "oracle-mock"; }

private:
    const MCQ& target_of(const CompletionRequest& req) const;
    bool pair_keeps_marker(const std::string& id, int distractor_index) const;

    Corpus corpus_;
    OracleOptions options_;
    std::map<std::string, const MCQ*> by_id_;
    std::map<std::string, size_t> pair_rank_;
    size_t pair_total_ = 0;
};

}  // namespace mcqgen
