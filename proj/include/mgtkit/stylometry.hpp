#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mgtkit {

// Fixed-order stylometric feature vector. The first eight features are the
// top-ranked news-landscape features; the rest are documented extras that
// keep chi-squared ranking meaningful.
struct StyloVector {
    static constexpr std::size_t kNumFeatures = 20;

    std::array<double, kNumFeatures> values{};
    // Set when the text has no words or no sentences, in which case the
    // readability score is reported as 0.
    bool degenerate = false;

    static const std::array<std::string, kNumFeatures>& feature_names();

    // Value by feature name; throws DataError for unknown names.
    double at(std::string_view name) const;
};

// Approximate syllable count: maximal vowel groups (a e i o u y) on the
// lowercased word, minus a silent trailing 'e' when it forms its own group
// and is not the only one; minimum 1.
std::size_t count_syllables(std::string_view lower_word);

// Extracts all features from raw text. Pure: same text, same vector.
//
// Feature definitions (token = word token, see tokenize()):
//   nnp_count               capitalized tokens not at sentence start
//   vbd_count               irregular-past lexicon hits, or "-ed" tokens not
//                           in the embedded exception list
//   word_count              token count
//   flesch_kincaid          0.39*(words/sentences) + 11.8*(syllables/words)
//                           - 15.59; 0 with degenerate flag if undefined
//   positive_opinion_count  positive-lexicon hits
//   wpos                    positive hits / word_count
//   sneg                    fraction of sentences with more negative than
//                           positive lexicon hits
//   date_count              merged spans of year (1900-2099), month-name
//                           (with adjacent day/year; bare month names do not
//                           count), and ISO yyyy-mm-dd patterns
//   type_token_ratio        distinct lowercased tokens / word_count
//   avg_sentence_length     word_count / sentence count
//   punctuation_rate        ASCII punctuation chars / total chars
//   quote_count             straight or curly double-quote marks
//   all_caps_rate           all-uppercase tokens (len >= 2) / word_count
//   negative_opinion_count  negative-lexicon hits
//   wneg                    negative hits / word_count
//   spos                    fraction of sentences with more positive than
//                           negative lexicon hits
//   question_rate           fraction of sentences containing '?'
//   exclamation_rate        fraction of sentences containing '!'
//   stopword_rate           stopword hits / word_count
//   avg_word_length         mean token length in bytes
StyloVector extract_stylometrics(std::string_view text);

// Batch helper: one row per sample, columns in feature_names() order.
std::vector<StyloVector> extract_stylometrics_batch(const std::vector<std::string>& texts);

}  // namespace mgtkit
