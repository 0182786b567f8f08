#pragma once

#include "mcqgen/answer.hpp"

#include <string>
#include <vector>

namespace mcqgen {

/// Alignment outcome for one question's generated distractor set.
struct DistractorEvalResult {
    std::string question_id;
    int matched_count = 0;
    int n = 0;  // ground-truth distractor count

    int partial_match() const;       // 1 iff at least one generated matches
    int exact_match() const;         // 1 iff all n slots match
    double proportional_match() const;  // matched / n
};

/// Drops later duplicates (under answers_match) keeping first
/// occurrences. Generated sets are de-duplicated before any metric so a
/// degenerate repeated answer cannot inflate the proportional score.
std::vector<CanonicalAnswer> dedup_answers(const std::vector<CanonicalAnswer>& answers);

/// Size of a maximum matching between the two sets under answers_match.
/// The predicate is an equivalence on canonical forms, so this equals
/// the multiset-intersection size of the equivalence classes; `generated`
/// must already be de-duplicated.
int align_and_count(const std::vector<CanonicalAnswer>& ground,
                    const std::vector<CanonicalAnswer>& generated);

/// Normalizes, de-duplicates, aligns. Slots lost to parse failures or
/// dedup count as non-matches.
DistractorEvalResult evaluate_distractor_set(const std::string& question_id,
                                             const std::vector<std::string>& ground_raw,
                                             const std::vector<std::string>& generated_raw);

/// Aggregate row: mean of each metric over the results, scaled to
/// percentages. Throws EmptyEvaluationError on an empty batch.
struct DistractorAggregate {
    double exact = 0.0;
    double partial = 0.0;
    double proportional = 0.0;
    size_t count = 0;
};
DistractorAggregate aggregate_distractor_results(const std::vector<DistractorEvalResult>& results);

}  // namespace mcqgen
