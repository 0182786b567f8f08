#pragma once

#include "mcqgen/corpus.hpp"
#include "mcqgen/mcq.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace mcqgen::synth {

/// Ground-truth feedback in synthetic corpora ends with a provenance
/// marker "[gt:<template>#<slot>]". Scripted judges key on it, and
/// corruption models strip it.
inline constexpr std::string_view kMarkerPrefix = "[gt:";

std::string make_marker(const std::string& template_name, int slot);

/// Removes a trailing provenance marker, if any.
std::string strip_marker(const std::string& feedback);
bool has_marker(const std::string& text);

/// Everything a template draw produces for one question.
struct SynthDraft {
    std::string stem;
    std::string key;
    std::string key_explanation;
    std::vector<Distractor> distractors;
    std::map<std::string, std::string> params;
};

/// A parameterized question family. `draw` samples admissible
/// parameters from the generator's PRNG; the distractor rules embed
/// specific anticipated student errors, so ground-truth provenance is
/// known per slot.
struct SynthTemplate {
    std::string name;
    std::string topic;
    std::string subtopic;
    std::function<SynthDraft(std::mt19937_64&)> draw;
};

// Fixed-parameter builders behind the templates. Exposed so tests can
// pin exact parameter values.
SynthDraft percent_decrease_draft(int percent, int years);
SynthDraft multiples_draft(int base, const std::string& name);
SynthDraft fraction_simplify_draft(int tenths);
// Decimal digits d1..d3 of whole.d1d2d3; d1 <= 8 and d2 >= 5 keep the
// rounded distractor distinct from the truncated key.
SynthDraft truncation_draft(int whole, int d1, int d2, int d3);
SynthDraft negative_square_draft(int n);

/// The built-in families: compound percentage decrease, multiples,
/// fraction simplification, truncation, negative squares.
std::vector<SynthTemplate> builtin_templates();

/// Generates `count` questions round-robin over the templates,
/// deterministically for a given seed. Drafts whose answers collide are
/// resampled; SynthesisError after a bounded number of retries.
Corpus generate_synthetic(const std::vector<SynthTemplate>& templates, int count, uint64_t seed);

}  // namespace mcqgen::synth
