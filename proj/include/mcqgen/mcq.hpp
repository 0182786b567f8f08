#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mcqgen {

/// An incorrect answer option with its optional feedback message.
struct Distractor {
    std::string answer;
    std::optional<std::string> feedback;
};

/// Records which synthetic template and parameters produced a question.
/// Absent for questions loaded from external corpora.
struct SynthProvenance {
    std::string template_name;
    std::map<std::string, std::string> params;
};

/// One multiple-choice question: stem, correct answer (key), optional
/// worked explanation of the key, and the incorrect options.
struct MCQ {
    std::string id;
    std::string stem;
    std::string key;
    std::optional<std::string> key_explanation;
    std::vector<Distractor> distractors;
    std::string topic;
    std::string subtopic;
    std::optional<SynthProvenance> meta;
};

/// Checks the MCQ invariants, throwing SchemaError on violation:
///   - id, stem, key and every distractor answer are non-blank
///   - at least one distractor
///   - after normalization, the key's canonical text differs from every
///     distractor's, and distractor canonical texts are pairwise distinct
///
/// Distinctness is canonical-text level on purpose: a "simplest form"
/// question legitimately pairs a key with a numerically equal distractor
/// in a different display form.
void validate_mcq(const MCQ& q);

}  // namespace mcqgen
