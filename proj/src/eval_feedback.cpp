#include "mcqgen/eval_feedback.hpp"

#include "mcqgen/answer.hpp"
#include "mcqgen/errors.hpp"
#include "mcqgen/text_metrics.hpp"

namespace mcqgen {

namespace {

// Completes the judge prompt and extracts the final answer, retrying
// once with a format reminder when the output cannot be parsed.
JudgeOutcome run_judge(AssembledPrompt prompt, const MCQ& mcq, size_t distractor_index,
                       Gateway& judge, const std::string& judge_model_id, int max_tokens) {
    prompt.target_id = mcq.id;
    prompt.target_distractor_index = static_cast<int>(distractor_index);

    CompletionRequest req;
    req.model_id = judge_model_id;
    req.prompt = prompt;
    req.max_tokens = max_tokens;
    req.temperature = 0;

    JudgeOutcome outcome;
    outcome.transcript = judge.complete(req).text;
    try {
        outcome.extracted = parse_final_answer(outcome.transcript);
        return outcome;
    } catch (const MalformedOutputError&) {
    }

    CompletionRequest repair = req;
    repair.prompt.text += repair_suffix(prompt.kind, 0);
    if (!repair.prompt.role_messages.empty()) {
        repair.prompt.role_messages.back().content += repair_suffix(prompt.kind, 0);
    }
    outcome.transcript = judge.complete(repair).text;
    try {
        outcome.extracted = parse_final_answer(outcome.transcript);
    } catch (const MalformedOutputError&) {
        outcome.malformed = true;
    }
    return outcome;
}

int matches_answer(const std::string& extracted, const std::string& expected) {
    try {
        return answers_match(normalize_answer(extracted), normalize_answer(expected)) ? 1 : 0;
    } catch (const InvalidAnswerError&) {
        return 0;
    }
}

}  // namespace

JudgeOutcome answer_adjustment(const MCQ& mcq, size_t distractor_index,
                               const std::string& feedback, Gateway& judge,
                               const std::string& judge_model_id,
                               const PromptTemplates& templates, int max_tokens) {
    const std::string& wrong = mcq.distractors.at(distractor_index).answer;
    AssembledPrompt prompt = build_adjustment_prompt(mcq.stem, wrong, feedback, templates);
    JudgeOutcome outcome =
        run_judge(std::move(prompt), mcq, distractor_index, judge, judge_model_id, max_tokens);
    if (!outcome.malformed) outcome.pass = matches_answer(outcome.extracted, mcq.key);
    return outcome;
}

JudgeOutcome distractor_prediction(const MCQ& mcq, size_t distractor_index,
                                   const std::string& feedback, Gateway& judge,
                                   const std::string& judge_model_id,
                                   const PromptTemplates& templates, int max_tokens) {
    const std::string& wrong = mcq.distractors.at(distractor_index).answer;
    AssembledPrompt prompt =
        build_distractor_prediction_prompt(mcq.stem, mcq.key, feedback, templates);
    JudgeOutcome outcome =
        run_judge(std::move(prompt), mcq, distractor_index, judge, judge_model_id, max_tokens);
    if (!outcome.malformed) outcome.pass = matches_answer(outcome.extracted, wrong);
    return outcome;
}

void score_against_reference(FeedbackEvalResult& result, const std::string& candidate,
                             const std::string& reference) {
    TokenSequence cand = tokenize(candidate);
    TokenSequence ref = tokenize(reference);
    result.bleu = bleu(cand, ref);
    result.rouge_l = rouge_l(cand, ref);
    result.meteor = meteor(cand, ref);
}

FeedbackAggregate aggregate_feedback(const std::vector<FeedbackEvalResult>& results) {
    if (results.empty()) throw EmptyEvaluationError("no feedback results to aggregate");

    FeedbackAggregate agg;
    agg.total = results.size();
    double bleu_sum = 0, rouge_sum = 0, meteor_sum = 0, adj_sum = 0, pred_sum = 0;
    size_t adj_count = 0, pred_count = 0;
    for (const auto& r : results) {
        if (r.bleu) {
            ++agg.referenced;
            bleu_sum += *r.bleu;
            rouge_sum += r.rouge_l.value_or(0.0);
            meteor_sum += r.meteor.value_or(0.0);
        }
        if (r.adj_pass) {
            ++adj_count;
            adj_sum += *r.adj_pass;
        }
        if (r.dist_pred_pass) {
            ++pred_count;
            pred_sum += *r.dist_pred_pass;
        }
    }
    if (agg.referenced > 0) {
        double n = static_cast<double>(agg.referenced);
        agg.bleu = bleu_sum / n * 100.0;
        agg.rouge_l = rouge_sum / n * 100.0;
        agg.meteor = meteor_sum / n * 100.0;
    }
    if (adj_count > 0) agg.adj = adj_sum / static_cast<double>(adj_count) * 100.0;
    if (pred_count > 0) agg.dist_pred = pred_sum / static_cast<double>(pred_count) * 100.0;
    agg.judged = std::max(adj_count, pred_count);
    return agg;
}

}  // namespace mcqgen
