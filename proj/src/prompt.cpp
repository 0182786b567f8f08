#include "mcqgen/prompt.hpp"

#include "mcqgen/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace mcqgen {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string ascii_lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

const char* kDistractorInstructions =
    "You are an experienced math teacher writing multiple-choice questions. For the last "
    "question below, write exactly {n} incorrect answer options (distractors). Each distractor "
    "should reflect a specific mistake or misconception a student could plausibly make when "
    "answering. Reply with a numbered list of exactly {n} distractors, one per line, and "
    "nothing else.";

const char* kFeedbackInstructions =
    "You are an experienced math teacher. A student answered a math question incorrectly. "
    "Write one short feedback message for the student: point out the mistake they likely made "
    "and guide them toward the correct answer without solving everything for them. Reply with "
    "the feedback message only.";

const char* kAnswerAdjustment =
    "A student answered a math question incorrectly and received feedback on their answer. "
    "Start from the student's incorrect answer, take the steps the feedback suggests, and work "
    "out the corrected answer. Show your reasoning, then give the corrected answer on its own "
    "last line in the form \"Final answer: <answer>\".\n"
    "\n"
    "Question: {stem}\n"
    "Student's incorrect answer: {distractor}\n"
    "Feedback given to the student: {feedback}";

const char* kDistractorPrediction =
    "A student answered a math question incorrectly and received the feedback below. Use the "
    "question, its correct answer, and the feedback to work out which incorrect answer the "
    "student gave. Show your reasoning, then give that incorrect answer on its own last line "
    "in the form \"Final answer: <answer>\".\n"
    "\n"
    "Question: {stem}\n"
    "Correct answer: {key}\n"
    "Feedback given to the student: {feedback}";

}  // namespace

Method method_from_string(const std::string& name) {
    if (name == "knn_none") return Method::knn_none;
    if (name == "knn_key") return Method::knn_key;
    if (name == "knn_all") return Method::knn_all;
    if (name == "knn_one") return Method::knn_one;
    if (name == "random") return Method::random;
    if (name == "zero_shot") return Method::zero_shot;
    throw ConfigError("unknown method: '" + name + "'");
}

std::string to_string(Method m) {
    switch (m) {
        case Method::knn_none: return "knn_none";
        case Method::knn_key: return "knn_key";
        case Method::knn_all: return "knn_all";
        case Method::knn_one: return "knn_one";
        case Method::random: return "random";
        case Method::zero_shot: return "zero_shot";
    }
    return "?";
}

bool method_uses_knn(Method m) {
    return m == Method::knn_none || m == Method::knn_key || m == Method::knn_all ||
           m == Method::knn_one;
}

EncodingStrategy encoding_for(Method m) {
    switch (m) {
        case Method::knn_none: return EncodingStrategy::none;
        case Method::knn_key: return EncodingStrategy::key;
        case Method::knn_all: return EncodingStrategy::all;
        case Method::knn_one: return EncodingStrategy::one;
        default:
            throw ConfigError("method '" + to_string(m) + "' does not retrieve by embedding");
    }
}

PromptFormat PromptFormat::for_method(Method m) {
    switch (m) {
        case Method::knn_none:
            return {m, false, false, FeedbackScope::none, DistractorScope::all};
        case Method::knn_key:
            return {m, true, false, FeedbackScope::none, DistractorScope::all};
        case Method::knn_all:
            return {m, true, true, FeedbackScope::all, DistractorScope::all};
        case Method::knn_one:
            return {m, false, false, FeedbackScope::one, DistractorScope::one};
        case Method::random:
            // Shares the fullest prompt shape with knn_all.
            return {m, true, true, FeedbackScope::all, DistractorScope::all};
        case Method::zero_shot:
            return {m, true, true, FeedbackScope::none, DistractorScope::all};
    }
    throw ConfigError("unknown method");
}

PromptTemplates PromptTemplates::defaults() {
    PromptTemplates t;
    t.slots_["distractor_instructions"] = kDistractorInstructions;
    t.slots_["feedback_instructions"] = kFeedbackInstructions;
    t.slots_["answer_adjustment"] = kAnswerAdjustment;
    t.slots_["distractor_prediction"] = kDistractorPrediction;
    return t;
}

PromptTemplates PromptTemplates::load_dir(const std::string& dir) {
    PromptTemplates t = defaults();
    for (auto& [slot, text] : t.slots_) {
        std::filesystem::path p = std::filesystem::path(dir) / (slot + ".txt");
        std::ifstream in(p);
        if (!in) continue;
        std::ostringstream buf;
        buf << in.rdbuf();
        std::string loaded = buf.str();
        while (!loaded.empty() && (loaded.back() == '\n' || loaded.back() == '\r')) {
            loaded.pop_back();
        }
        text = loaded;
    }
    return t;
}

const std::string& PromptTemplates::get(const std::string& slot) const {
    auto it = slots_.find(slot);
    if (it == slots_.end()) throw ConfigError("unknown template slot: '" + slot + "'");
    return it->second;
}

void PromptTemplates::set(const std::string& slot, std::string text) {
    slots_[slot] = std::move(text);
}

std::string PromptTemplates::render(const std::string& tmpl,
                                    const std::map<std::string, std::string>& values) {
    std::string out = tmpl;
    for (const auto& [name, value] : values) {
        std::string slot = "{" + name + "}";
        size_t pos = 0;
        while ((pos = out.find(slot, pos)) != std::string::npos) {
            out.replace(pos, slot.size(), value);
            pos += value.size();
        }
    }
    return out;
}

namespace {

void append_question_fields(std::ostringstream& out, const MCQ& q, const PromptFormat& fmt,
                            std::vector<std::string>* warnings) {
    out << "Question: " << q.stem << "\n";
    if (fmt.includes_key) out << "Correct answer: " << q.key << "\n";
    if (fmt.includes_explanation) {
        if (q.key_explanation) {
            out << "Explanation: " << *q.key_explanation << "\n";
        } else if (warnings) {
            warnings->push_back("question '" + q.id + "' has no explanation; field omitted");
        }
    }
}

}  // namespace

std::string render_distractor_example_block(const MCQ& q, const PromptFormat& fmt) {
    std::ostringstream out;
    append_question_fields(out, q, fmt, nullptr);
    out << "Distractors:\n";
    for (size_t i = 0; i < q.distractors.size(); ++i) {
        out << (i + 1) << ". " << q.distractors[i].answer << "\n";
    }
    if (fmt.feedback_scope == FeedbackScope::all) {
        for (size_t i = 0; i < q.distractors.size(); ++i) {
            if (q.distractors[i].feedback) {
                out << "Feedback " << (i + 1) << ": " << *q.distractors[i].feedback << "\n";
            }
        }
    }
    return out.str();
}

AssembledPrompt build_distractor_prompt(const MCQ& target, const std::vector<MCQ>& examples,
                                        const PromptFormat& fmt,
                                        const PromptTemplates& templates) {
    if (fmt.method == Method::zero_shot && !examples.empty()) {
        throw ConfigError("zero_shot prompts take no in-context examples");
    }

    AssembledPrompt prompt;
    prompt.kind = PromptKind::distractor_gen;
    prompt.target_id = target.id;

    std::string n = std::to_string(target.distractors.size());
    std::string instructions =
        PromptTemplates::render(templates.get("distractor_instructions"), {{"n", n}});

    std::ostringstream body;
    for (size_t i = 0; i < examples.size(); ++i) {
        prompt.example_ids.push_back(examples[i].id);
        body << "Example " << (i + 1) << ":\n"
             << render_distractor_example_block(examples[i], fmt) << "\n";
    }
    if (!examples.empty()) body << "Your turn.\n";
    append_question_fields(body, target, fmt, &prompt.warnings);
    body << "Distractors:\n";

    prompt.role_messages = {{"system", instructions}, {"user", body.str()}};
    prompt.text = instructions + "\n\n" + body.str();
    return prompt;
}

AssembledPrompt build_feedback_prompt(const MCQ& target, size_t distractor_index,
                                      const std::vector<ExamplePair>& examples,
                                      const PromptFormat& fmt,
                                      const PromptTemplates& templates) {
    if (fmt.method == Method::zero_shot && !examples.empty()) {
        throw ConfigError("zero_shot prompts take no in-context examples");
    }
    if (distractor_index >= target.distractors.size()) {
        throw ConfigError("distractor index out of range for '" + target.id + "'");
    }

    AssembledPrompt prompt;
    prompt.kind = PromptKind::feedback_gen;
    prompt.target_id = target.id;
    prompt.target_distractor_index = static_cast<int>(distractor_index);

    std::string instructions = templates.get("feedback_instructions");

    std::ostringstream body;
    for (size_t i = 0; i < examples.size(); ++i) {
        const auto& ex = examples[i];
        const auto& d = ex.question.distractors.at(ex.distractor_index);
        if (!d.feedback) {
            throw ExampleUnusableError(ex.question.id, "chosen distractor has no feedback");
        }
        prompt.example_ids.push_back(ex.question.id);
        body << "Example " << (i + 1) << ":\n"
             << "Question: " << ex.question.stem << "\n"
             << "Incorrect answer: " << d.answer << "\n"
             << "Feedback: " << *d.feedback << "\n\n";
    }
    if (!examples.empty()) body << "Your turn.\n";
    body << "Question: " << target.stem << "\n";
    if (fmt.method == Method::zero_shot) {
        // The zero-shot judge of the task is given the key; few-shot
        // formats leave it out.
        body << "Correct answer: " << target.key << "\n";
    }
    body << "Incorrect answer: " << target.distractors[distractor_index].answer << "\n"
         << "Feedback:";

    prompt.role_messages = {{"system", instructions}, {"user", body.str()}};
    prompt.text = instructions + "\n\n" + body.str();
    return prompt;
}

AssembledPrompt build_adjustment_prompt(const std::string& stem,
                                        const std::string& distractor_answer,
                                        const std::string& feedback,
                                        const PromptTemplates& templates) {
    AssembledPrompt prompt;
    prompt.kind = PromptKind::answer_adjust;
    prompt.text = PromptTemplates::render(
        templates.get("answer_adjustment"),
        {{"stem", stem}, {"distractor", distractor_answer}, {"feedback", feedback}});
    prompt.role_messages = {{"user", prompt.text}};
    return prompt;
}

AssembledPrompt build_distractor_prediction_prompt(const std::string& stem,
                                                   const std::string& key,
                                                   const std::string& feedback,
                                                   const PromptTemplates& templates) {
    AssembledPrompt prompt;
    prompt.kind = PromptKind::distractor_predict;
    prompt.text = PromptTemplates::render(
        templates.get("distractor_prediction"),
        {{"stem", stem}, {"key", key}, {"feedback", feedback}});
    prompt.role_messages = {{"user", prompt.text}};
    return prompt;
}

namespace {

// Strips a list label ("3.", "12)", "B)", "-", "*", "•") followed by
// whitespace; returns the remainder, or nullopt when the line is not a
// list item.
std::optional<std::string> strip_list_label(const std::string& line) {
    size_t i = 0;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) return std::nullopt;

    size_t label_end = std::string::npos;
    if (std::isdigit(static_cast<unsigned char>(line[i]))) {
        size_t j = i;
        while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
        if (j < line.size() && (line[j] == '.' || line[j] == ')')) label_end = j + 1;
    } else if (std::isalpha(static_cast<unsigned char>(line[i])) &&
               std::tolower(static_cast<unsigned char>(line[i])) >= 'a' &&
               std::tolower(static_cast<unsigned char>(line[i])) <= 'd') {
        if (i + 1 < line.size() && (line[i + 1] == '.' || line[i + 1] == ')')) label_end = i + 2;
    } else if (line[i] == '-' || line[i] == '*') {
        label_end = i + 1;
    } else if (line.compare(i, 3, "•") == 0) {
        label_end = i + 3;
    }

    if (label_end == std::string::npos) return std::nullopt;
    if (label_end >= line.size() || (line[label_end] != ' ' && line[label_end] != '\t')) {
        return std::nullopt;
    }
    return trim(line.substr(label_end));
}

}  // namespace

std::vector<std::string> parse_distractor_response(const std::string& raw, size_t expected_n) {
    std::vector<std::string> items;
    std::istringstream in(raw);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto item = strip_list_label(line);
        if (item && !item->empty()) items.push_back(*item);
    }
    if (items.size() != expected_n) {
        throw MalformedOutputError("expected " + std::to_string(expected_n) +
                                   " list items, found " + std::to_string(items.size()));
    }
    return items;
}

namespace {

std::string clean_extracted_answer(std::string s) {
    s = trim(s);
    while (!s.empty() && (s.front() == ':' || s.front() == '=')) s = trim(s.substr(1));
    if (s.size() >= 3 && s.compare(0, 3, "is ") == 0) s = trim(s.substr(3));
    while (!s.empty() && (s.back() == '.' || std::isspace(static_cast<unsigned char>(s.back())))) {
        s.pop_back();
    }
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = trim(s.substr(1, s.size() - 2));
    return s;
}

std::string rest_of_line(const std::string& text, size_t from) {
    size_t eol = text.find('\n', from);
    if (eol == std::string::npos) eol = text.size();
    return text.substr(from, eol - from);
}

}  // namespace

std::string parse_final_answer(const std::string& raw) {
    if (trim(raw).empty()) throw MalformedOutputError("empty judge output");

    std::string lower = ascii_lower(raw);

    size_t marker = lower.rfind("final answer");
    if (marker != std::string::npos) {
        std::string content = clean_extracted_answer(rest_of_line(raw, marker + 12));
        if (!content.empty()) return content;
    }

    // Last non-empty line, with an "answer is"/"answer:" tail if present.
    size_t end = raw.size();
    while (end > 0) {
        size_t start = raw.rfind('\n', end - 1);
        size_t line_begin = start == std::string::npos ? 0 : start + 1;
        std::string line = trim(raw.substr(line_begin, end - line_begin));
        if (!line.empty()) {
            std::string line_lower = ascii_lower(line);
            for (const char* tail : {"answer is", "answer:"}) {
                size_t pos = line_lower.rfind(tail);
                if (pos != std::string::npos) {
                    std::string content =
                        clean_extracted_answer(line.substr(pos + std::strlen(tail)));
                    if (!content.empty()) return content;
                }
            }
            return clean_extracted_answer(line);
        }
        if (start == std::string::npos) break;
        end = start;
    }
    throw MalformedOutputError("no extractable final answer");
}

std::string repair_suffix(PromptKind kind, size_t expected_n) {
    if (kind == PromptKind::distractor_gen) {
        std::string n = std::to_string(expected_n);
        return "\n\nYour previous reply could not be parsed. Reply again with exactly " + n +
               " lines, numbered 1. to " + n + "., one distractor per line, and nothing else.";
    }
    if (kind == PromptKind::feedback_gen) {
        return "\n\nYour previous reply could not be parsed. Reply with the feedback message "
               "only.";
    }
    return "\n\nYour previous reply could not be parsed. End your reply with one line in the "
           "exact form \"Final answer: <answer>\".";
}

}  // namespace mcqgen
