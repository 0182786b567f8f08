#include "mcqgen/mcq.hpp"

#include "mcqgen/answer.hpp"
#include "mcqgen/errors.hpp"

#include <set>

namespace mcqgen {

void validate_mcq(const MCQ& q) {
    if (q.id.empty()) throw SchemaError(q.id, "empty id");
    if (q.stem.empty()) throw SchemaError(q.id, "empty stem");
    if (q.distractors.empty()) throw SchemaError(q.id, "question has no distractors");

    CanonicalAnswer key;
    try {
        key = normalize_answer(q.key);
    } catch (const InvalidAnswerError&) {
        throw SchemaError(q.id, "key is blank after normalization");
    }

    std::set<std::string> seen;
    for (size_t i = 0; i < q.distractors.size(); ++i) {
        CanonicalAnswer d;
        try {
            d = normalize_answer(q.distractors[i].answer);
        } catch (const InvalidAnswerError&) {
            throw SchemaError(q.id, "distractor " + std::to_string(i + 1) + " is blank");
        }
        if (d.canonical_text == key.canonical_text) {
            throw SchemaError(q.id, "key equals distractor " + std::to_string(i + 1) +
                                        " after normalization ('" + d.canonical_text + "')");
        }
        if (!seen.insert(d.canonical_text).second) {
            throw SchemaError(q.id, "duplicate distractor '" + d.canonical_text + "'");
        }
    }
}

}  // namespace mcqgen
