#pragma once

#include "mcqgen/mcq.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mcqgen {

/// An immutable set of MCQs with unique ids.
struct Corpus {
    std::vector<MCQ> questions;
    std::string source_tag;

    size_t size() const { return questions.size(); }
    bool empty() const { return questions.empty(); }
    const MCQ* find(const std::string& id) const;
};

/// Candidate/test partition of a corpus.
struct Split {
    Corpus candidates;
    Corpus test;
    double ratio = 0.0;
    uint64_t seed = 0;
};

/// Loads a line-delimited JSON corpus. Each line is one object:
///   {"id": str, "stem": str, "key": str, "key_explanation": str|null,
///    "distractors": [{"answer": str, "feedback": str|null}, ...],
///    "topic": str, "subtopic": str}
/// An optional "meta" object carries synthetic provenance.
///
/// Throws CorpusParseError with the 1-based line number on malformed
/// lines, SchemaError on invariant violations (duplicate ids, key equal
/// to a distractor, ...), IoError if the file cannot be read.
Corpus load_corpus(const std::string& path);

/// Parses one JSONL record. Exposed for loaders over other transports.
MCQ parse_mcq_json(const std::string& line);

/// Writes the corpus in the JSONL schema above, one question per line.
/// Output is byte-deterministic for a given corpus.
void save_corpus(const Corpus& corpus, const std::string& path);
std::string corpus_to_jsonl(const Corpus& corpus);
std::string mcq_to_json(const MCQ& q);

/// Shuffles with a seeded PRNG and cuts at round(ratio * size).
/// Deterministic for a given (corpus order, ratio, seed); both sides
/// are non-empty. Throws CorpusTooSmallError below 2 questions.
Split split_corpus(const Corpus& corpus, double ratio, uint64_t seed);

/// Drops candidates sharing the target's subtopic when the flag is set;
/// identity otherwise. Throws EmptyPoolError when nothing survives.
Corpus filter_candidates(const Corpus& candidates, const MCQ& target, bool exclude_same_subtopic);

}  // namespace mcqgen
