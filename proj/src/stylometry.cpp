#include "mgtkit/stylometry.hpp"

#include "mgtkit/errors.hpp"
#include "mgtkit/lexicons.hpp"
#include "mgtkit/text.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <unordered_set>

namespace mgtkit {

namespace {

enum FeatureIndex : std::size_t {
    kNnpCount = 0,
    kVbdCount,
    kWordCount,
    kFleschKincaid,
    kPositiveOpinionCount,
    kWpos,
    kSneg,
    kDateCount,
    kTypeTokenRatio,
    kAvgSentenceLength,
    kPunctuationRate,
    kQuoteCount,
    kAllCapsRate,
    kNegativeOpinionCount,
    kWneg,
    kSpos,
    kQuestionRate,
    kExclamationRate,
    kStopwordRate,
    kAvgWordLength,
};

bool is_vowel(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

bool is_upper_ascii(char c) { return c >= 'A' && c <= 'Z'; }

bool all_caps(const std::string& original) {
    if (original.size() < 2) return false;
    return std::all_of(original.begin(), original.end(), is_upper_ascii);
}

bool is_past_tense(const std::string& lower) {
    if (lex::irregular_past().count(lower)) return true;
    if (lower.size() >= 4 && lower.ends_with("ed") && !lex::ed_exceptions().count(lower)) {
        return true;
    }
    return false;
}

struct Span {
    std::size_t begin;
    std::size_t end;
};

// Collects match spans of `re` over `text` into `spans`.
void collect_matches(const std::string& text, const std::regex& re, std::vector<Span>& spans) {
    for (auto it = std::sregex_iterator(text.begin(), text.end(), re); it != std::sregex_iterator(); ++it) {
        spans.push_back({static_cast<std::size_t>(it->position()),
                         static_cast<std::size_t>(it->position() + it->length())});
    }
}

std::string month_alternation() {
    std::string alt;
    for (const auto& m : lex::month_names()) {
        if (!alt.empty()) alt += '|';
        alt += m;
    }
    return alt;
}

// Date mentions: standalone years, month names with an adjacent day or year,
// and ISO dates. Overlapping spans merge into a single mention.
std::size_t count_dates(const std::string& text) {
    static const std::regex year_re(R"(\b(19|20)\d{2}\b)");
    static const std::regex iso_re(R"(\b(19|20)\d{2}-\d{2}-\d{2}\b)");
    static const std::regex month_re(
        R"(\b()" + month_alternation() +
            R"()\.?\s+\d{1,2}(st|nd|rd|th)?(\s*,?\s+(19|20)\d{2})?\b|\b\d{1,2}(st|nd|rd|th)?\s+()" +
            month_alternation() + R"()\b(\s*,?\s+(19|20)\d{2})?)",
        std::regex::icase);

    std::vector<Span> spans;
    collect_matches(text, year_re, spans);
    collect_matches(text, iso_re, spans);
    collect_matches(text, month_re, spans);
    if (spans.empty()) return 0;

    std::sort(spans.begin(), spans.end(),
              [](const Span& a, const Span& b) { return a.begin < b.begin || (a.begin == b.begin && a.end < b.end); });
    std::size_t merged = 1;
    std::size_t cur_end = spans[0].end;
    for (std::size_t i = 1; i < spans.size(); ++i) {
        if (spans[i].begin < cur_end) {
            cur_end = std::max(cur_end, spans[i].end);
        } else {
            ++merged;
            cur_end = spans[i].end;
        }
    }
    return merged;
}

}  // namespace

const std::array<std::string, StyloVector::kNumFeatures>& StyloVector::feature_names() {
    static const std::array<std::string, kNumFeatures> names = {
        "nnp_count",       "vbd_count",      "word_count",       "flesch_kincaid",
        "positive_opinion_count", "wpos",    "sneg",             "date_count",
        "type_token_ratio", "avg_sentence_length", "punctuation_rate", "quote_count",
        "all_caps_rate",   "negative_opinion_count", "wneg",     "spos",
        "question_rate",   "exclamation_rate", "stopword_rate",  "avg_word_length",
    };
    return names;
}

double StyloVector::at(std::string_view name) const {
    const auto& names = feature_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return values[i];
    }
    throw DataError("unknown stylometric feature '" + std::string(name) + "'");
}

std::size_t count_syllables(std::string_view lower_word) {
    std::size_t groups = 0;
    bool in_group = false;
    std::size_t last_group_len = 0;
    for (char c : lower_word) {
        if (is_vowel(c)) {
            if (!in_group) {
                ++groups;
                in_group = true;
                last_group_len = 0;
            }
            ++last_group_len;
        } else {
            in_group = false;
        }
    }
    // Silent trailing 'e' when it is a group of its own and not the only one.
    if (groups > 1 && lower_word.ends_with('e') && in_group && last_group_len == 1) --groups;
    return std::max<std::size_t>(groups, 1);
}

StyloVector extract_stylometrics(std::string_view text) {
    const TokenizedText tt = tokenize(text);
    const std::string owned(text);

    StyloVector out;
    auto& v = out.values;

    const std::size_t words = tt.tokens.size();
    const std::size_t sentences = tt.sentences.size();
    v[kWordCount] = static_cast<double>(words);
    out.degenerate = (words == 0 || sentences == 0);

    // Token-level scans.
    std::size_t syllables = 0;
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t vbd = 0;
    std::size_t stopwords = 0;
    std::size_t caps = 0;
    std::size_t total_len = 0;
    std::unordered_set<std::string_view> distinct;
    for (const Token& tok : tt.tokens) {
        syllables += count_syllables(tok.lower);
        if (lex::positive_words().count(tok.lower)) ++positive;
        if (lex::negative_words().count(tok.lower)) ++negative;
        if (is_past_tense(tok.lower)) ++vbd;
        if (lex::stopwords().count(tok.lower)) ++stopwords;
        if (all_caps(tok.original)) ++caps;
        total_len += tok.lower.size();
        distinct.insert(tok.lower);
    }
    v[kVbdCount] = static_cast<double>(vbd);
    v[kPositiveOpinionCount] = static_cast<double>(positive);
    v[kNegativeOpinionCount] = static_cast<double>(negative);
    if (words > 0) {
        v[kWpos] = static_cast<double>(positive) / static_cast<double>(words);
        v[kWneg] = static_cast<double>(negative) / static_cast<double>(words);
        v[kStopwordRate] = static_cast<double>(stopwords) / static_cast<double>(words);
        v[kAllCapsRate] = static_cast<double>(caps) / static_cast<double>(words);
        v[kTypeTokenRatio] = static_cast<double>(distinct.size()) / static_cast<double>(words);
        v[kAvgWordLength] = static_cast<double>(total_len) / static_cast<double>(words);
    }

    // Sentence-level scans.
    std::size_t nnp = 0;
    std::size_t neg_sentences = 0;
    std::size_t pos_sentences = 0;
    std::size_t question_sentences = 0;
    std::size_t exclaim_sentences = 0;
    for (const Sentence& s : tt.sentences) {
        std::size_t s_pos = 0;
        std::size_t s_neg = 0;
        for (std::size_t t = s.token_begin; t < s.token_end; ++t) {
            const Token& tok = tt.tokens[t];
            if (t != s.token_begin && !tok.original.empty() && is_upper_ascii(tok.original[0])) ++nnp;
            if (lex::positive_words().count(tok.lower)) ++s_pos;
            if (lex::negative_words().count(tok.lower)) ++s_neg;
        }
        if (s_neg > s_pos) ++neg_sentences;
        if (s_pos > s_neg) ++pos_sentences;
        const std::string_view span = text.substr(s.byte_begin, s.byte_end - s.byte_begin);
        if (span.find('?') != std::string_view::npos) ++question_sentences;
        if (span.find('!') != std::string_view::npos) ++exclaim_sentences;
    }
    v[kNnpCount] = static_cast<double>(nnp);
    if (sentences > 0) {
        v[kSneg] = static_cast<double>(neg_sentences) / static_cast<double>(sentences);
        v[kSpos] = static_cast<double>(pos_sentences) / static_cast<double>(sentences);
        v[kQuestionRate] = static_cast<double>(question_sentences) / static_cast<double>(sentences);
        v[kExclamationRate] = static_cast<double>(exclaim_sentences) / static_cast<double>(sentences);
        v[kAvgSentenceLength] = static_cast<double>(words) / static_cast<double>(sentences);
    }

    if (!out.degenerate) {
        v[kFleschKincaid] = 0.39 * (static_cast<double>(words) / static_cast<double>(sentences)) +
                            11.8 * (static_cast<double>(syllables) / static_cast<double>(words)) -
                            15.59;
    }

    // Character-level scans.
    std::size_t punct = 0;
    std::size_t quotes = 0;
    for (std::size_t i = 0; i < owned.size(); ++i) {
        const unsigned char c = static_cast<unsigned char>(owned[i]);
        if (c < 0x80 && std::ispunct(c)) ++punct;
        if (c == '"') ++quotes;
        // UTF-8 left/right double quotation marks (e2 80 9c / e2 80 9d).
        if (c == 0xe2 && i + 2 < owned.size() && static_cast<unsigned char>(owned[i + 1]) == 0x80) {
            const unsigned char third = static_cast<unsigned char>(owned[i + 2]);
            if (third == 0x9c || third == 0x9d) ++quotes;
        }
    }
    if (!owned.empty()) v[kPunctuationRate] = static_cast<double>(punct) / static_cast<double>(owned.size());
    v[kQuoteCount] = static_cast<double>(quotes);

    v[kDateCount] = static_cast<double>(count_dates(owned));
    return out;
}

std::vector<StyloVector> extract_stylometrics_batch(const std::vector<std::string>& texts) {
    std::vector<StyloVector> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(extract_stylometrics(t));
    return out;
}

}  // namespace mgtkit
