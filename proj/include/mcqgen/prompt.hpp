#pragma once

#include "mcqgen/mcq.hpp"
#include "mcqgen/retrieval.hpp"

#include <map>
#include <string>
#include <vector>

namespace mcqgen {

/// Generation / baseline methods. The kNN variants differ in which
/// fields are encoded for retrieval and which appear in the prompt;
/// `random` shares the full prompt shape with knn_all.
enum class Method { knn_none, knn_key, knn_all, knn_one, random, zero_shot };

Method method_from_string(const std::string& name);
std::string to_string(Method m);
bool method_uses_knn(Method m);

/// Retrieval encoding paired with each method (kNN methods only).
EncodingStrategy encoding_for(Method m);

enum class FeedbackScope { none, one, all };
enum class DistractorScope { one, all };

/// Which MCQ fields appear in the prompt for a method.
struct PromptFormat {
    Method method = Method::zero_shot;
    bool includes_key = false;
    bool includes_explanation = false;
    FeedbackScope feedback_scope = FeedbackScope::none;
    DistractorScope distractor_scope = DistractorScope::all;

    static PromptFormat for_method(Method m);
};

enum class PromptKind { distractor_gen, feedback_gen, answer_adjust, distractor_predict };

struct ChatMessage {
    std::string role;
    std::string content;
};

/// A fully rendered prompt plus the bookkeeping needed downstream:
/// which question (and distractor) it targets and which examples were
/// spliced in.
struct AssembledPrompt {
    PromptKind kind = PromptKind::distractor_gen;
    std::string text;
    std::vector<ChatMessage> role_messages;
    std::string target_id;
    std::vector<std::string> example_ids;
    int target_distractor_index = -1;
    std::vector<std::string> warnings;
};

/// The instruction/template texts, overridable from plain-text files
/// with {placeholder} slots. Placeholders: n, stem, key, distractor,
/// feedback, examples_block.
class PromptTemplates {
public:
    /// Built-in defaults.
    static PromptTemplates defaults();

    /// Reads <dir>/<slot>.txt for every slot that exists; missing files
    /// keep the default text. Slots: distractor_instructions,
    /// feedback_instructions, answer_adjustment, distractor_prediction.
    static PromptTemplates load_dir(const std::string& dir);

    const std::string& get(const std::string& slot) const;
    void set(const std::string& slot, std::string text);

    static std::string render(const std::string& tmpl,
                              const std::map<std::string, std::string>& values);

private:
    std::map<std::string, std::string> slots_;
};

/// One in-context example rendered for the distractor task. Exposed so
/// the render/parse round-trip is testable in isolation.
std::string render_distractor_example_block(const MCQ& q, const PromptFormat& fmt);

/// Few-shot or zero-shot distractor-generation prompt. Examples must be
/// empty for zero_shot. Requests exactly target.distractors.size()
/// distractors as a numbered list.
AssembledPrompt build_distractor_prompt(const MCQ& target, const std::vector<MCQ>& examples,
                                        const PromptFormat& fmt, const PromptTemplates& templates);

/// Feedback-generation prompt for one (question, distractor) pair.
/// Each example contributes exactly one distractor and its feedback;
/// an example whose chosen distractor has no feedback throws
/// ExampleUnusableError.
AssembledPrompt build_feedback_prompt(const MCQ& target, size_t distractor_index,
                                      const std::vector<ExamplePair>& examples,
                                      const PromptFormat& fmt, const PromptTemplates& templates);

/// Judge prompt: start from the incorrect answer, apply the feedback,
/// end with a marked final line. The key is deliberately absent.
AssembledPrompt build_adjustment_prompt(const std::string& stem,
                                        const std::string& distractor_answer,
                                        const std::string& feedback,
                                        const PromptTemplates& templates);

/// Judge prompt: infer, from stem + key + feedback, which incorrect
/// answer the feedback responds to. The distractor is deliberately
/// absent.
AssembledPrompt build_distractor_prediction_prompt(const std::string& stem,
                                                   const std::string& key,
                                                   const std::string& feedback,
                                                   const PromptTemplates& templates);

/// Extracts exactly expected_n answers from a numbered/bulleted list.
/// Tolerates "1.", "1)", "A)", "-", "*" labels. Throws
/// MalformedOutputError on any other count.
std::vector<std::string> parse_distractor_response(const std::string& raw, size_t expected_n);

/// Content after the final-answer marker; falls back to the last
/// non-empty line. Throws MalformedOutputError when nothing remains.
std::string parse_final_answer(const std::string& raw);

/// The reminder appended for the single automatic repair retry after a
/// MalformedOutputError.
std::string repair_suffix(PromptKind kind, size_t expected_n);

}  // namespace mcqgen
