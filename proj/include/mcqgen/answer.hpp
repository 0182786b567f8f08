#pragma once

#include <boost/rational.hpp>

#include <optional>
#include <string>

namespace mcqgen {

using Rational = boost::rational<long long>;

/// Normalized form of an answer option. All equality judgments in the
/// toolkit go through this type: two answers are considered the same
/// option iff their canonical texts match or both carry equal exact
/// rational values.
struct CanonicalAnswer {
    std::string canonical_text;
    std::optional<Rational> numeric_value;

    bool operator==(const CanonicalAnswer&) const = default;
};

/// Canonicalizes raw answer text:
///   - strips math-markup delimiters (\[ \], \( \), $ $)
///   - maps \times to ×, \frac{a}{b} to a/b, ^{n} to ^n
///   - lowercases ASCII letters
///   - collapses whitespace; a single space survives only between two
///     alphanumeric characters
///   - parses the result as an exact rational when it is a pure number
///     or an a/b fraction
///
/// Idempotent: normalizing a canonical text returns it unchanged.
/// Throws InvalidAnswerError if nothing is left after normalization.
CanonicalAnswer normalize_answer(const std::string& raw);

/// True iff the canonical texts are equal, or both values are numeric
/// and equal as exact rationals.
bool answers_match(const CanonicalAnswer& a, const CanonicalAnswer& b);

/// Stable key identifying the answer's equivalence class under
/// answers_match. Numeric answers share a key regardless of display
/// form ("6/10" and "0.6" map to the same key).
std::string answer_class_key(const CanonicalAnswer& a);

}  // namespace mcqgen
