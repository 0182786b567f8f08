#include "mcqgen/synth.hpp"

#include "mcqgen/answer.hpp"
#include "mcqgen/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace mcqgen::synth {

namespace {

// "0.92" / "1.08" style multiplier text, trailing zeros trimmed.
std::string hundredths(int whole, int cents) {
    std::string s = std::to_string(whole) + ".";
    if (cents % 10 == 0) {
        s += std::to_string(cents / 10);
    } else {
        if (cents < 10) s += "0";
        s += std::to_string(cents);
    }
    return s;
}

std::string power(const std::string& base, int exponent) {
    return "\\times " + base + "^{" + std::to_string(exponent) + "}";
}

int draw_int(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<uint64_t>(hi - lo + 1));
}

const std::vector<std::string>& student_names() {
    static const std::vector<std::string> names = {
        "sheila", "tom", "priya", "marco", "aisha", "daniel", "yuki", "omar",
    };
    return names;
}

}  // namespace

std::string make_marker(const std::string& template_name, int slot) {
    return std::string(kMarkerPrefix) + template_name + "#" + std::to_string(slot) + "]";
}

bool has_marker(const std::string& text) {
    return text.find(kMarkerPrefix) != std::string::npos;
}

std::string strip_marker(const std::string& feedback) {
    std::string out = feedback;
    size_t pos;
    while ((pos = out.find(kMarkerPrefix)) != std::string::npos) {
        size_t close = out.find(']', pos);
        size_t erase_end = close == std::string::npos ? out.size() : close + 1;
        size_t start = pos;
        while (start > 0 && out[start - 1] == ' ') --start;
        out.erase(start, erase_end - start);
    }
    return out;
}

SynthDraft percent_decrease_draft(int percent, int years) {
    const std::string dec = hundredths(0, 100 - percent);
    const std::string inc = hundredths(1, percent);
    const std::string frac = hundredths(0, percent);
    const std::string p = std::to_string(percent);
    const std::string y = std::to_string(years);
    const std::string name = "percent-decrease";

    SynthDraft d;
    d.stem = "which multiplier can be used to find the value after an amount has decreased in "
             "value by " + p + "% for " + y + " years?";
    d.key = power(dec, years);
    d.key_explanation = "a decrease of " + p + "% leaves " + std::to_string(100 - percent) +
                        "% of the value, so each year we multiply by " + dec +
                        ". over " + y + " years that is \\times " + dec + "^{" + y + "}.";
    d.distractors = {
        {power(inc, years),
         "It looks like you have found the multiplier for an increase of " + p +
             "% but we need to find the decrease. " + make_marker(name, 1)},
        {power(frac, years),
         "This multiplier only keeps " + p + "% of the value. After a decrease of " + p +
             "% the amount keeps " + std::to_string(100 - percent) +
             "%, so the multiplier comes from 100% - " + p + "%. " + make_marker(name, 2)},
        {dec + " \\times " + y,
         "Multiplying " + dec + " by " + y + " treats this as simple interest. The value is "
             "multiplied by " + dec + " again each year, so we need a power. " +
             make_marker(name, 3)},
    };
    d.params = {{"percent", p}, {"years", y}};
    return d;
}

SynthDraft multiples_draft(int base, const std::string& name) {
    const std::string b = std::to_string(base);
    const std::string tmpl = "multiples";

    SynthDraft d;
    d.stem = name + " is listing the multiples of " + b + " in ascending order. " +
             name + " starts with " + b + ". what number should " + name + " write next?";
    d.key = std::to_string(2 * base);
    d.key_explanation = "multiples of " + b + " go up in steps of " + b + ", so after " + b +
                        " comes " + b + " + " + b + " = " + std::to_string(2 * base) + ".";
    d.distractors = {
        {std::to_string(base + 1),
         "I think you added 1. Multiples of " + b + " go up in steps of " + b + ". " +
             make_marker(tmpl, 1)},
        {std::to_string(base * base),
         std::to_string(base * base) + " is " + b + " times " + b +
             ", which comes further along the list. The next multiple after " + b + " is " + b +
             " times 2. " + make_marker(tmpl, 2)},
        {"1",
         "Not quite, I think you divided by " + b + ". We need to find the multiples of " + b +
             ", the numbers in the " + b + " times table. " + make_marker(tmpl, 3)},
    };
    d.params = {{"base", b}, {"name", name}};
    return d;
}

SynthDraft fraction_simplify_draft(int tenths) {
    const int g = std::gcd(tenths, 10);
    const int num = tenths / g;
    const int den = 10 / g;
    const std::string t = std::to_string(tenths);
    const std::string tmpl = "fraction-simplify";
    auto frac = [](int a, int b) {
        return "\\frac{" + std::to_string(a) + "}{" + std::to_string(b) + "}";
    };

    SynthDraft d;
    d.stem = "convert 0." + t + " to a fraction in its simplest form.";
    d.key = frac(num, den);
    d.key_explanation = "0." + t + " means " + t + " tenths. dividing the numerator and "
                        "denominator by " + std::to_string(g) + " gives " +
                        std::to_string(num) + "/" + std::to_string(den) + ".";
    d.distractors = {
        {frac(tenths, 10),
         "You have written 0." + t + " as " + t + " tenths, which is equal, but the question "
             "asks for the simplest form. Divide the numerator and the denominator by " +
             std::to_string(g) + ". " + make_marker(tmpl, 1)},
        {frac(tenths * 10, 100),
         std::to_string(tenths * 10) + "/100 reads 0." + t + " as hundredths. It is equal but "
             "still simplifies further. " + make_marker(tmpl, 2)},
        {frac(1, tenths),
         "I think you used the " + t + " as the denominator. 0." + t + " means " + t +
             " tenths, not one " + t + "th. " + make_marker(tmpl, 3)},
    };
    d.params = {{"tenths", t}};
    return d;
}

SynthDraft truncation_draft(int whole, int d1, int d2, int d3) {
    const std::string w = std::to_string(whole);
    const std::string full = w + "." + std::to_string(d1) + std::to_string(d2) + std::to_string(d3);
    const std::string tmpl = "truncation";

    SynthDraft d;
    d.stem = "\\[ " + full + " \\] truncate this number to 1 decimal place";
    d.key = w + "." + std::to_string(d1);
    d.key_explanation = "truncating keeps the digits up to the cut and drops the rest, so " +
                        full + " truncated to 1 decimal place is " + d.key + ".";
    d.distractors = {
        {w + "." + std::to_string(d1 + 1),
         "Not quite! Remember with truncating we just cut off the rest of the digits without "
         "any rounding. " + make_marker(tmpl, 1)},
        {w + "." + std::to_string(d1) + std::to_string(d2),
         "You have truncated to 2 decimal places. We only keep 1 digit after the decimal "
         "point. " + make_marker(tmpl, 2)},
        {w,
         "This cuts off all the decimal places. Truncating to 1 decimal place keeps one digit "
         "after the point. " + make_marker(tmpl, 3)},
    };
    d.params = {{"number", full}};
    return d;
}

SynthDraft negative_square_draft(int n) {
    const std::string s = std::to_string(n);
    const std::string sq = std::to_string(n * n);
    const std::string dbl = std::to_string(2 * n);
    const std::string tmpl = "negative-square";

    SynthDraft d;
    d.stem = "\\[ - (" + s + ")^{2} = \\square \\] what value belongs in the box?";
    d.key = "-" + sq;
    d.key_explanation = "the negative sign sits outside the bracket, so work out " + s +
                        " squared first (" + sq + ") and then make the answer negative.";
    d.distractors = {
        {sq,
         "Not quite. As the negative is outside the bracket you need to work out " + s +
             " squared and then make the answer negative. " + make_marker(tmpl, 1)},
        {"-" + dbl,
         "I think you multiplied " + s + " by 2. Squaring means multiplying the number by "
             "itself. " + make_marker(tmpl, 2)},
        {dbl,
         "Remember to square the number rather than double it, and the minus sign outside the "
         "bracket stays. " + make_marker(tmpl, 3)},
    };
    d.params = {{"n", s}};
    return d;
}

std::vector<SynthTemplate> builtin_templates() {
    std::vector<SynthTemplate> out;
    out.push_back({"percent-decrease", "Number", "Percentages and Compound Change",
                   [](std::mt19937_64& rng) {
                       int percent = draw_int(rng, 2, 30);
                       int years = draw_int(rng, 2, 9);
                       return percent_decrease_draft(percent, years);
                   }});
    out.push_back({"multiples", "Number", "Multiples and Factors",
                   [](std::mt19937_64& rng) {
                       int base = draw_int(rng, 3, 12);
                       const auto& names = student_names();
                       return multiples_draft(base, names[rng() % names.size()]);
                   }});
    out.push_back({"fraction-simplify", "Number", "Fractions",
                   [](std::mt19937_64& rng) {
                       static const int choices[] = {2, 4, 5, 6, 8};
                       return fraction_simplify_draft(choices[rng() % 5]);
                   }});
    out.push_back({"truncation", "Number", "Rounding and Estimating",
                   [](std::mt19937_64& rng) {
                       int whole = draw_int(rng, 10, 99);
                       int d1 = draw_int(rng, 0, 8);
                       int d2 = draw_int(rng, 5, 9);
                       int d3 = draw_int(rng, 1, 9);
                       return truncation_draft(whole, d1, d2, d3);
                   }});
    out.push_back({"negative-square", "Number", "Basic Arithmetic",
                   [](std::mt19937_64& rng) {
                       return negative_square_draft(draw_int(rng, 11, 31));
                   }});
    return out;
}

Corpus generate_synthetic(const std::vector<SynthTemplate>& templates, int count, uint64_t seed) {
    if (count < 1) throw ConfigError("synthetic count must be at least 1");
    if (templates.empty()) throw ConfigError("no synthetic templates given");

    constexpr int kMaxRetries = 16;
    int id_width = std::max<int>(4, static_cast<int>(std::to_string(count).size()));

    Corpus corpus;
    corpus.source_tag = "synthetic";
    std::mt19937_64 rng(seed);
    for (int i = 0; i < count; ++i) {
        const SynthTemplate& tmpl = templates[static_cast<size_t>(i) % templates.size()];
        MCQ q;
        bool ok = false;
        for (int attempt = 0; attempt < kMaxRetries && !ok; ++attempt) {
            SynthDraft draft = tmpl.draw(rng);
            std::ostringstream id;
            id << "synth-";
            std::string digits = std::to_string(i + 1);
            id << std::string(static_cast<size_t>(id_width) - digits.size(), '0') << digits;
            q = MCQ{id.str(),
                    draft.stem,
                    draft.key,
                    draft.key_explanation,
                    draft.distractors,
                    tmpl.topic,
                    tmpl.subtopic,
                    SynthProvenance{tmpl.name, draft.params}};
            try {
                validate_mcq(q);
                ok = true;
            } catch (const SchemaError&) {
                // Collision between sampled answers; draw again.
            }
        }
        if (!ok) {
            throw SynthesisError("template '" + tmpl.name + "' kept producing colliding answers");
        }
        corpus.questions.push_back(std::move(q));
    }
    return corpus;
}

}  // namespace mcqgen::synth
