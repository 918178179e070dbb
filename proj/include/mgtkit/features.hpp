#pragma once

#include "mgtkit/corpus.hpp"
#include "mgtkit/linalg.hpp"

#include <cstddef>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mgtkit {

// Fitted term vocabulary with smoothed inverse document frequencies:
// idf[t] = ln((1 + n_docs) / (1 + doc_freq[t])) + 1. Terms are stored in
// lexicographic order; immutable after fitting.
struct Vocabulary {
    std::vector<std::string> terms;
    std::vector<std::size_t> doc_freq;
    std::vector<double> idf;
    std::size_t n_docs = 0;

    std::size_t size() const { return terms.size(); }
    // Index of a term, or npos when out of vocabulary.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t index_of(const std::string& term) const;

  private:
    friend Vocabulary fit_vocabulary(const std::vector<std::string>&, std::size_t, std::size_t);
    friend Vocabulary rebuild_vocabulary(std::vector<std::string>, std::vector<std::size_t>,
                                         std::size_t);
    std::unordered_map<std::string, std::size_t> index_;
};

double idf_value(std::size_t n_docs, std::size_t doc_freq);

// Reconstitutes a fitted vocabulary from stored terms and document
// frequencies (idf values are recomputed). Throws DataError on length
// mismatch or unsorted/duplicate terms.
Vocabulary rebuild_vocabulary(std::vector<std::string> terms, std::vector<std::size_t> doc_freq,
                              std::size_t n_docs);

// Selects terms with document frequency >= min_df, keeping the top max_terms
// by document frequency (ties broken lexicographically). Throws DataError
// when nothing survives the filter.
Vocabulary fit_vocabulary(const std::vector<std::string>& texts, std::size_t min_df,
                          std::size_t max_terms);
Vocabulary fit_vocabulary(const Dataset& train, std::size_t min_df, std::size_t max_terms);

// Sparse vector over vocabulary indices; entries sorted by index. An empty
// entry list doubles as the all-zero flag (text had no in-vocab tokens).
struct SparseVec {
    std::vector<std::pair<std::size_t, double>> entries;
    bool all_zero() const { return entries.empty(); }
};

// Term count * idf, L2-normalized over the present terms.
SparseVec vectorize_tfidf(std::string_view text, const Vocabulary& vocab);

// Raw in-vocabulary term counts (bag of words).
SparseVec vectorize_counts(std::string_view text, const Vocabulary& vocab);

// Cosine similarity; 0 when either vector is all-zero.
double cosine(const SparseVec& a, const SparseVec& b);

struct ChiSquaredEntry {
    std::size_t feature = 0;
    double statistic = 0.0;
};

// Chi-squared statistic of each feature column against the class labels,
// with values binarized at > 0. Constant features score 0. Result is sorted
// by statistic descending, ties broken by feature index ascending.
std::vector<ChiSquaredEntry> chi_squared_rank(const Mat& X, const std::vector<std::size_t>& y,
                                              std::size_t num_classes);

}  // namespace mgtkit
