#include "mcqgen/text_metrics.hpp"

#include "mcqgen/errors.hpp"
#include "mcqgen/stemmer.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <unordered_map>

namespace mcqgen {

TokenSequence tokenize(const std::string& text) {
    TokenSequence tokens;
    std::string current;
    auto flush = [&] {
        if (!current.empty()) {
            tokens.push_back(current);
            current.clear();
        }
    };
    for (size_t i = 0; i < text.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (std::isspace(c)) {
            flush();
        } else if (std::isalnum(c)) {
            current.push_back(static_cast<char>(std::tolower(c)));
        } else if (c == '.') {
            bool prev_digit = !current.empty() &&
                              std::isdigit(static_cast<unsigned char>(current.back()));
            bool next_digit = i + 1 < text.size() &&
                              std::isdigit(static_cast<unsigned char>(text[i + 1]));
            if (prev_digit && next_digit) {
                current.push_back('.');
            } else {
                flush();
                tokens.emplace_back(1, '.');
            }
        } else if (c >= 0x80) {
            // One UTF-8 codepoint becomes one token (×, ÷, •, ...).
            flush();
            std::string cp(1, static_cast<char>(c));
            while (i + 1 < text.size() &&
                   (static_cast<unsigned char>(text[i + 1]) & 0xC0) == 0x80) {
                cp.push_back(text[++i]);
            }
            tokens.push_back(cp);
        } else {
            flush();
            tokens.emplace_back(1, static_cast<char>(c));
        }
    }
    flush();
    return tokens;
}

namespace {

void require_reference(const TokenSequence& reference) {
    if (reference.empty()) throw UndefinedMetricError("reference token sequence is empty");
}

std::unordered_map<std::string, int> ngram_counts(const TokenSequence& tokens, size_t n) {
    std::unordered_map<std::string, int> counts;
    if (tokens.size() < n) return counts;
    for (size_t i = 0; i + n <= tokens.size(); ++i) {
        std::string key;
        for (size_t j = 0; j < n; ++j) {
            key += tokens[i + j];
            key.push_back('\x1f');
        }
        ++counts[key];
    }
    return counts;
}

}  // namespace

double bleu(const TokenSequence& candidate, const TokenSequence& reference) {
    require_reference(reference);
    if (candidate.empty()) return 0.0;

    double log_sum = 0.0;
    for (size_t n = 1; n <= 4; ++n) {
        auto cand = ngram_counts(candidate, n);
        auto ref = ngram_counts(reference, n);
        long long clipped = 0;
        long long total = 0;
        for (const auto& [gram, count] : cand) {
            total += count;
            auto it = ref.find(gram);
            if (it != ref.end()) clipped += std::min(count, it->second);
        }
        double p;
        if (n == 1) {
            p = total > 0 ? static_cast<double>(clipped) / static_cast<double>(total) : 0.0;
            if (p == 0.0) return 0.0;
        } else {
            p = static_cast<double>(clipped + 1) / static_cast<double>(total + 1);
        }
        log_sum += std::log(p);
    }

    double r = static_cast<double>(reference.size());
    double c = static_cast<double>(candidate.size());
    double brevity = std::min(1.0, std::exp(1.0 - r / c));
    return brevity * std::exp(log_sum / 4.0);
}

size_t lcs_length(const TokenSequence& a, const TokenSequence& b) {
    if (a.empty() || b.empty()) return 0;
    std::vector<size_t> prev(b.size() + 1, 0);
    std::vector<size_t> curr(b.size() + 1, 0);
    for (size_t i = 1; i <= a.size(); ++i) {
        for (size_t j = 1; j <= b.size(); ++j) {
            if (a[i - 1] == b[j - 1]) {
                curr[j] = prev[j - 1] + 1;
            } else {
                curr[j] = std::max(prev[j], curr[j - 1]);
            }
        }
        std::swap(prev, curr);
    }
    return prev[b.size()];
}

double rouge_l(const TokenSequence& candidate, const TokenSequence& reference) {
    require_reference(reference);
    if (candidate.empty()) return 0.0;
    double lcs = static_cast<double>(lcs_length(candidate, reference));
    if (lcs == 0.0) return 0.0;
    double precision = lcs / static_cast<double>(candidate.size());
    double recall = lcs / static_cast<double>(reference.size());
    return 2.0 * precision * recall / (precision + recall);
}

MeteorAlignment meteor_alignment(const TokenSequence& candidate, const TokenSequence& reference) {
    std::vector<int> cand_to_ref(candidate.size(), -1);
    std::vector<bool> ref_used(reference.size(), false);

    // Stage 1: exact matches, earliest reference slot first.
    for (size_t i = 0; i < candidate.size(); ++i) {
        for (size_t j = 0; j < reference.size(); ++j) {
            if (!ref_used[j] && candidate[i] == reference[j]) {
                cand_to_ref[i] = static_cast<int>(j);
                ref_used[j] = true;
                break;
            }
        }
    }

    // Stage 2: stem matches among the leftovers.
    std::vector<std::string> cand_stems(candidate.size());
    std::vector<std::string> ref_stems(reference.size());
    for (size_t i = 0; i < candidate.size(); ++i) cand_stems[i] = porter_stem(candidate[i]);
    for (size_t j = 0; j < reference.size(); ++j) ref_stems[j] = porter_stem(reference[j]);
    for (size_t i = 0; i < candidate.size(); ++i) {
        if (cand_to_ref[i] != -1) continue;
        for (size_t j = 0; j < reference.size(); ++j) {
            if (!ref_used[j] && cand_stems[i] == ref_stems[j]) {
                cand_to_ref[i] = static_cast<int>(j);
                ref_used[j] = true;
                break;
            }
        }
    }

    MeteorAlignment out;
    int prev_cand = -2;
    int prev_ref = -2;
    for (size_t i = 0; i < candidate.size(); ++i) {
        if (cand_to_ref[i] == -1) continue;
        ++out.matches;
        if (static_cast<int>(i) != prev_cand + 1 || cand_to_ref[i] != prev_ref + 1) ++out.chunks;
        prev_cand = static_cast<int>(i);
        prev_ref = cand_to_ref[i];
    }
    return out;
}

double meteor(const TokenSequence& candidate, const TokenSequence& reference) {
    require_reference(reference);
    if (candidate.empty()) return 0.0;

    MeteorAlignment alignment = meteor_alignment(candidate, reference);
    if (alignment.matches == 0) return 0.0;

    double m = static_cast<double>(alignment.matches);
    double precision = m / static_cast<double>(candidate.size());
    double recall = m / static_cast<double>(reference.size());
    double f_mean = precision * recall / (0.9 * precision + 0.1 * recall);
    double frag = static_cast<double>(alignment.chunks) / m;
    double penalty = 0.5 * frag * frag * frag;
    return f_mean * (1.0 - penalty);
}

}  // namespace mcqgen
