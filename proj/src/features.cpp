#include "mgtkit/features.hpp"

#include "mgtkit/errors.hpp"
#include "mgtkit/text.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace mgtkit {

std::size_t Vocabulary::index_of(const std::string& term) const {
    auto it = index_.find(term);
    return it == index_.end() ? npos : it->second;
}

double idf_value(std::size_t n_docs, std::size_t doc_freq) {
    return std::log((1.0 + static_cast<double>(n_docs)) / (1.0 + static_cast<double>(doc_freq))) + 1.0;
}

Vocabulary fit_vocabulary(const std::vector<std::string>& texts, std::size_t min_df,
                          std::size_t max_terms) {
    if (texts.empty()) throw DataError("cannot fit a vocabulary on an empty corpus");

    // Ordered map so the document-frequency table iterates lexicographically.
    std::map<std::string, std::size_t> df;
    for (const auto& text : texts) {
        std::vector<std::string> toks = word_tokens(text);
        std::sort(toks.begin(), toks.end());
        toks.erase(std::unique(toks.begin(), toks.end()), toks.end());
        for (auto& t : toks) ++df[t];
    }

    // Survivors of the min_df filter, ranked by document frequency descending
    // with lexicographic tie-break (map order supplies the tie-break).
    std::vector<std::pair<std::string, std::size_t>> ranked;
    for (const auto& [term, freq] : df) {
        if (freq >= min_df) ranked.emplace_back(term, freq);
    }
    if (ranked.empty()) throw DataError("vocabulary is empty after the min_df filter");
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    if (ranked.size() > max_terms) ranked.resize(max_terms);
    std::sort(ranked.begin(), ranked.end());

    Vocabulary vocab;
    vocab.n_docs = texts.size();
    vocab.terms.reserve(ranked.size());
    vocab.doc_freq.reserve(ranked.size());
    vocab.idf.reserve(ranked.size());
    for (auto& [term, freq] : ranked) {
        vocab.index_.emplace(term, vocab.terms.size());
        vocab.terms.push_back(std::move(term));
        vocab.doc_freq.push_back(freq);
        vocab.idf.push_back(idf_value(vocab.n_docs, freq));
    }
    return vocab;
}

Vocabulary fit_vocabulary(const Dataset& train, std::size_t min_df, std::size_t max_terms) {
    std::vector<std::string> texts;
    texts.reserve(train.size());
    for (const auto& s : train.samples) texts.push_back(s.text);
    return fit_vocabulary(texts, min_df, max_terms);
}

Vocabulary rebuild_vocabulary(std::vector<std::string> terms, std::vector<std::size_t> doc_freq,
                              std::size_t n_docs) {
    if (terms.size() != doc_freq.size()) {
        throw DataError("vocabulary terms and doc_freq lengths differ");
    }
    if (!std::is_sorted(terms.begin(), terms.end()) ||
        std::adjacent_find(terms.begin(), terms.end()) != terms.end()) {
        throw DataError("vocabulary terms must be sorted and unique");
    }
    Vocabulary vocab;
    vocab.n_docs = n_docs;
    vocab.terms = std::move(terms);
    vocab.doc_freq = std::move(doc_freq);
    vocab.idf.reserve(vocab.terms.size());
    for (std::size_t i = 0; i < vocab.terms.size(); ++i) {
        vocab.index_.emplace(vocab.terms[i], i);
        vocab.idf.push_back(idf_value(n_docs, vocab.doc_freq[i]));
    }
    return vocab;
}

namespace {

SparseVec count_in_vocab(std::string_view text, const Vocabulary& vocab) {
    std::vector<double> counts(vocab.size(), 0.0);
    bool any = false;
    for (const auto& tok : word_tokens(text)) {
        const std::size_t idx = vocab.index_of(tok);
        if (idx == Vocabulary::npos) continue;
        counts[idx] += 1.0;
        any = true;
    }
    SparseVec out;
    if (!any) return out;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] > 0.0) out.entries.emplace_back(i, counts[i]);
    }
    return out;
}

}  // namespace

SparseVec vectorize_counts(std::string_view text, const Vocabulary& vocab) {
    return count_in_vocab(text, vocab);
}

SparseVec vectorize_tfidf(std::string_view text, const Vocabulary& vocab) {
    SparseVec vec = count_in_vocab(text, vocab);
    double norm_sq = 0.0;
    for (auto& [idx, w] : vec.entries) {
        w *= vocab.idf[idx];
        norm_sq += w * w;
    }
    if (norm_sq > 0.0) {
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (auto& [idx, w] : vec.entries) w *= inv;
    }
    return vec;
}

double cosine(const SparseVec& a, const SparseVec& b) {
    double dot = 0.0;
    double na = 0.0;
    double nb = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.entries.size() && j < b.entries.size()) {
        if (a.entries[i].first == b.entries[j].first) {
            dot += a.entries[i].second * b.entries[j].second;
            ++i;
            ++j;
        } else if (a.entries[i].first < b.entries[j].first) {
            ++i;
        } else {
            ++j;
        }
    }
    for (const auto& [idx, w] : a.entries) na += w * w;
    for (const auto& [idx, w] : b.entries) nb += w * w;
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<ChiSquaredEntry> chi_squared_rank(const Mat& X, const std::vector<std::size_t>& y,
                                              std::size_t num_classes) {
    if (X.rows != y.size()) throw DataError("feature matrix rows must match label count");
    if (num_classes < 2) throw DataError("chi-squared ranking needs at least 2 classes");
    for (std::size_t c : y) {
        if (c >= num_classes) throw DataError("label index out of range");
    }

    const double n = static_cast<double>(X.rows);
    std::vector<double> class_totals(num_classes, 0.0);
    for (std::size_t c : y) class_totals[c] += 1.0;

    std::vector<ChiSquaredEntry> out(X.cols);
    for (std::size_t f = 0; f < X.cols; ++f) {
        std::vector<double> present(num_classes, 0.0);
        double present_total = 0.0;
        for (std::size_t r = 0; r < X.rows; ++r) {
            if (X(r, f) > 0.0) {
                present[y[r]] += 1.0;
                present_total += 1.0;
            }
        }
        out[f].feature = f;
        // Constant columns carry no class signal; score 0 by convention.
        if (present_total == 0.0 || present_total == n) continue;

        double stat = 0.0;
        const double absent_total = n - present_total;
        for (std::size_t c = 0; c < num_classes; ++c) {
            const double e_present = present_total * class_totals[c] / n;
            const double e_absent = absent_total * class_totals[c] / n;
            const double o_present = present[c];
            const double o_absent = class_totals[c] - present[c];
            if (e_present > 0.0) stat += (o_present - e_present) * (o_present - e_present) / e_present;
            if (e_absent > 0.0) stat += (o_absent - e_absent) * (o_absent - e_absent) / e_absent;
        }
        out[f].statistic = stat;
    }

    std::sort(out.begin(), out.end(), [](const ChiSquaredEntry& a, const ChiSquaredEntry& b) {
        if (a.statistic != b.statistic) return a.statistic > b.statistic;
        return a.feature < b.feature;
    });
    return out;
}

}  // namespace mgtkit
