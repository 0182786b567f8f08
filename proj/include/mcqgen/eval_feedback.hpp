#pragma once

#include "mcqgen/gateway.hpp"
#include "mcqgen/mcq.hpp"
#include "mcqgen/prompt.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mcqgen {

/// One judge call's outcome. `malformed` marks outputs that stayed
/// unparseable after the single repair retry; they score 0.
struct JudgeOutcome {
    int pass = 0;
    bool malformed = false;
    std::string extracted;
    std::string transcript;
};

/// Reference-free metric: the judge starts from the incorrect answer,
/// applies the feedback, and must land on the key.
JudgeOutcome answer_adjustment(const MCQ& mcq, size_t distractor_index,
                               const std::string& feedback, Gateway& judge,
                               const std::string& judge_model_id,
                               const PromptTemplates& templates, int max_tokens = 256);

/// Reference-free metric: the judge must infer, from stem + key +
/// feedback, which incorrect answer the feedback responds to.
JudgeOutcome distractor_prediction(const MCQ& mcq, size_t distractor_index,
                                   const std::string& feedback, Gateway& judge,
                                   const std::string& judge_model_id,
                                   const PromptTemplates& templates, int max_tokens = 256);

/// Scores for one (question, distractor) pair. Reference-based fields
/// are absent when the pair has no ground-truth feedback; judge fields
/// are absent when no judge ran.
struct FeedbackEvalResult {
    std::string question_id;
    int distractor_index = 0;
    std::optional<double> bleu;
    std::optional<double> rouge_l;
    std::optional<double> meteor;
    std::optional<int> adj_pass;
    std::optional<int> dist_pred_pass;
    bool adj_malformed = false;
    bool pred_malformed = false;
    std::string adj_transcript;
    std::string pred_transcript;
};

/// Computes the three reference-based metrics for one candidate
/// feedback against its reference.
void score_against_reference(FeedbackEvalResult& result, const std::string& candidate,
                             const std::string& reference);

/// Column means scaled to percentages, each over the samples where the
/// column is present. Throws EmptyEvaluationError on an empty batch.
struct FeedbackAggregate {
    std::optional<double> bleu;
    std::optional<double> rouge_l;
    std::optional<double> meteor;
    std::optional<double> adj;
    std::optional<double> dist_pred;
    size_t total = 0;
    size_t referenced = 0;  // samples entering the reference-based columns
    size_t judged = 0;      // samples entering the judge columns
};
FeedbackAggregate aggregate_feedback(const std::vector<FeedbackEvalResult>& results);

}  // namespace mcqgen
