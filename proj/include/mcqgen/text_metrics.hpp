#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace mcqgen {

using TokenSequence = std::vector<std::string>;

/// Deterministic tokenizer for the reference-based feedback metrics:
/// lowercase, whitespace-split, punctuation detached as single tokens,
/// math symbols (×, ^, /) kept as tokens. A '.' stays inside a token
/// only between two digits, so "0.92" is one token and "quite!" is two.
TokenSequence tokenize(const std::string& text);

/// Sentence-level BLEU-4 against a single reference: geometric mean of
/// modified n-gram precisions (add-one smoothing for n >= 2, none for
/// n = 1), times brevity penalty min(1, e^(1 - r/c)). Zero unigram
/// overlap or an empty candidate scores 0. The reference must be
/// non-empty.
double bleu(const TokenSequence& candidate, const TokenSequence& reference);

/// Longest common subsequence length (dynamic programming).
size_t lcs_length(const TokenSequence& a, const TokenSequence& b);

/// ROUGE-L F1: P = LCS/|cand|, R = LCS/|ref|, F = 2PR/(P+R) (0 when
/// both are 0). Empty candidate scores 0; reference must be non-empty.
double rouge_l(const TokenSequence& candidate, const TokenSequence& reference);

/// Unigram alignment behind METEOR: exact matches first, then stem
/// matches among the leftovers (Porter). `chunks` counts maximal runs
/// of adjacent matches in both sequences.
struct MeteorAlignment {
    size_t matches = 0;
    size_t chunks = 0;
};
MeteorAlignment meteor_alignment(const TokenSequence& candidate, const TokenSequence& reference);

/// METEOR with exact+stem stages: F = PR / (0.9 P + 0.1 R), fragmentation
/// penalty 0.5 (chunks/matches)^3, score = F (1 - penalty).
double meteor(const TokenSequence& candidate, const TokenSequence& reference);

}  // namespace mcqgen
