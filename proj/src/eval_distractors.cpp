#include "mcqgen/eval_distractors.hpp"

#include "mcqgen/errors.hpp"

#include <algorithm>
#include <map>

namespace mcqgen {

int DistractorEvalResult::partial_match() const {
    if (n == 0) throw UndefinedMetricError("partial match undefined for n = 0");
    return matched_count >= 1 ? 1 : 0;
}

int DistractorEvalResult::exact_match() const {
    if (n == 0) throw UndefinedMetricError("exact match undefined for n = 0");
    return matched_count == n ? 1 : 0;
}

double DistractorEvalResult::proportional_match() const {
    if (n == 0) throw UndefinedMetricError("proportional match undefined for n = 0");
    return static_cast<double>(matched_count) / static_cast<double>(n);
}

std::vector<CanonicalAnswer> dedup_answers(const std::vector<CanonicalAnswer>& answers) {
    std::vector<CanonicalAnswer> out;
    std::map<std::string, bool> seen;
    for (const auto& a : answers) {
        if (seen.emplace(answer_class_key(a), true).second) out.push_back(a);
    }
    return out;
}

int align_and_count(const std::vector<CanonicalAnswer>& ground,
                    const std::vector<CanonicalAnswer>& generated) {
    std::map<std::string, int> pool;
    for (const auto& g : ground) ++pool[answer_class_key(g)];
    int matched = 0;
    for (const auto& g : generated) {
        auto it = pool.find(answer_class_key(g));
        if (it != pool.end() && it->second > 0) {
            --it->second;
            ++matched;
        }
    }
    return matched;
}

DistractorEvalResult evaluate_distractor_set(const std::string& question_id,
                                             const std::vector<std::string>& ground_raw,
                                             const std::vector<std::string>& generated_raw) {
    std::vector<CanonicalAnswer> ground;
    for (const auto& raw : ground_raw) ground.push_back(normalize_answer(raw));

    std::vector<CanonicalAnswer> generated;
    for (const auto& raw : generated_raw) {
        try {
            generated.push_back(normalize_answer(raw));
        } catch (const InvalidAnswerError&) {
            // Blank candidate: the slot simply cannot match.
        }
    }
    generated = dedup_answers(generated);

    DistractorEvalResult result;
    result.question_id = question_id;
    result.n = static_cast<int>(ground.size());
    result.matched_count = align_and_count(ground, generated);
    return result;
}

DistractorAggregate aggregate_distractor_results(const std::vector<DistractorEvalResult>& results) {
    if (results.empty()) throw EmptyEvaluationError("no distractor results to aggregate");
    DistractorAggregate agg;
    agg.count = results.size();
    for (const auto& r : results) {
        agg.exact += r.exact_match();
        agg.partial += r.partial_match();
        agg.proportional += r.proportional_match();
    }
    double n = static_cast<double>(results.size());
    agg.exact = agg.exact / n * 100.0;
    agg.partial = agg.partial / n * 100.0;
    agg.proportional = agg.proportional / n * 100.0;
    return agg;
}

}  // namespace mcqgen
