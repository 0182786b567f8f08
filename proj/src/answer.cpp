#include "mcqgen/answer.hpp"

#include "mcqgen/errors.hpp"

#include <cctype>
#include <cstdint>
#include <string_view>

namespace mcqgen {

namespace {

bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

void replace_all(std::string& s, std::string_view from, std::string_view to) {
    size_t pos = 0;
    while ((pos = s.find(from, pos)) != std::string::npos) {
        s.replace(pos, from.size(), to);
        pos += to.size();
    }
}

// Returns the content of a balanced {...} group starting at `open`
// (which must point at '{'), or nullopt when unbalanced. `end` is set
// one past the closing brace.
std::optional<std::string> brace_group(const std::string& s, size_t open, size_t& end) {
    if (open >= s.size() || s[open] != '{') return std::nullopt;
    int depth = 0;
    for (size_t i = open; i < s.size(); ++i) {
        if (s[i] == '{') ++depth;
        else if (s[i] == '}') {
            --depth;
            if (depth == 0) {
                end = i + 1;
                return s.substr(open + 1, i - open - 1);
            }
        }
    }
    return std::nullopt;
}

// Rewrites every \frac{a}{b} into a/b. Nested fractions are handled by
// re-scanning until no \frac remains.
void rewrite_fractions(std::string& s) {
    for (int pass = 0; pass < 32; ++pass) {
        size_t pos = s.find("\\frac");
        if (pos == std::string::npos) return;
        size_t after = pos + 5;
        size_t num_end = 0;
        auto num = brace_group(s, after, num_end);
        if (!num) {
            // Malformed; drop the token so it cannot loop forever.
            s.erase(pos, 5);
            continue;
        }
        size_t den_end = 0;
        auto den = brace_group(s, num_end, den_end);
        if (!den) {
            s.replace(pos, num_end - pos, *num);
            continue;
        }
        s.replace(pos, den_end - pos, *num + "/" + *den);
    }
}

// Rewrites ^{n} into ^n.
void rewrite_superscripts(std::string& s) {
    size_t pos = 0;
    while ((pos = s.find("^{", pos)) != std::string::npos) {
        size_t end = 0;
        auto group = brace_group(s, pos + 1, end);
        if (!group) {
            ++pos;
            continue;
        }
        s.replace(pos, end - pos, "^" + *group);
        ++pos;
    }
}

// Collapses runs of whitespace; keeps a single space only when it sits
// between two alphanumeric characters.
std::string collapse_spaces(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < s.size() && std::isspace(static_cast<unsigned char>(s[j]))) ++j;
            bool left_word = !out.empty() && is_word_char(out.back());
            bool right_word = j < s.size() && is_word_char(s[j]);
            if (left_word && right_word) out.push_back(' ');
            i = j;
        } else {
            out.push_back(c);
            ++i;
        }
    }
    return out;
}

constexpr int kMaxPlainDigits = 15;
constexpr int kMaxFractionDigits = 9;

// Parses a pure decimal number ([+-]? digits [. digits]) into an exact
// rational. Rejects anything else, including numbers long enough to
// risk 64-bit overflow.
std::optional<Rational> parse_decimal(std::string_view s, int max_digits) {
    if (s.empty()) return std::nullopt;
    bool negative = false;
    size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
        negative = s[0] == '-';
        i = 1;
    }
    long long numerator = 0;
    long long denominator = 1;
    int digits = 0;
    bool seen_dot = false;
    bool seen_digit = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c == '.') {
            if (seen_dot) return std::nullopt;
            seen_dot = true;
            continue;
        }
        if (c < '0' || c > '9') return std::nullopt;
        if (++digits > max_digits) return std::nullopt;
        seen_digit = true;
        numerator = numerator * 10 + (c - '0');
        if (seen_dot) denominator *= 10;
    }
    if (!seen_digit) return std::nullopt;
    if (negative) numerator = -numerator;
    return Rational(numerator, denominator);
}

std::optional<Rational> parse_numeric(const std::string& text) {
    size_t slash = text.find('/');
    if (slash == std::string::npos) return parse_decimal(text, kMaxPlainDigits);
    if (text.find('/', slash + 1) != std::string::npos) return std::nullopt;
    auto num = parse_decimal(std::string_view(text).substr(0, slash), kMaxFractionDigits);
    auto den = parse_decimal(std::string_view(text).substr(slash + 1), kMaxFractionDigits);
    if (!num || !den || den->numerator() == 0) return std::nullopt;
    return *num / *den;
}

}  // namespace

CanonicalAnswer normalize_answer(const std::string& raw) {
    std::string text = raw;

    replace_all(text, "\\[", " ");
    replace_all(text, "\\]", " ");
    replace_all(text, "\\(", " ");
    replace_all(text, "\\)", " ");
    replace_all(text, "$", "");

    replace_all(text, "\\times", "×");
    rewrite_fractions(text);
    rewrite_superscripts(text);

    for (char& c : text) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    text = collapse_spaces(text);

    if (text.empty()) throw InvalidAnswerError("answer is empty after normalization: '" + raw + "'");

    CanonicalAnswer out;
    out.canonical_text = std::move(text);
    out.numeric_value = parse_numeric(out.canonical_text);
    return out;
}

bool answers_match(const CanonicalAnswer& a, const CanonicalAnswer& b) {
    if (a.canonical_text == b.canonical_text) return true;
    return a.numeric_value && b.numeric_value && *a.numeric_value == *b.numeric_value;
}

std::string answer_class_key(const CanonicalAnswer& a) {
    if (a.numeric_value) {
        return "n:" + std::to_string(a.numeric_value->numerator()) + "/" +
               std::to_string(a.numeric_value->denominator());
    }
    return "t:" + a.canonical_text;
}

}  // namespace mcqgen
