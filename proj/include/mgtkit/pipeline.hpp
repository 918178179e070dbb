#pragma once

#include "mgtkit/corpus.hpp"
#include "mgtkit/features.hpp"
#include "mgtkit/stylometry.hpp"

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

namespace mgtkit {

struct FeatureOptions {
    std::size_t min_df = 2;
    std::size_t max_terms = 2000;
};

// Z-score scaler for the stylometric block; features with zero variance map
// to 0 instead of dividing by zero.
struct StyloScaler {
    std::vector<double> mean;
    std::vector<double> stddev;

    std::vector<double> apply(const StyloVector& s) const;
};

StyloScaler fit_stylo_scaler(const std::vector<StyloVector>& rows);

// Precomputed encoder inputs keyed by sample id, for the pass-through
// feature mode (parity experiments with externally produced embeddings).
struct EmbeddingStore {
    std::unordered_map<std::string, std::vector<double>> by_id;
    std::size_t dim = 0;
};

// Reads JSONL rows of the form {"id": "...", "h": [numbers]}. All rows must
// share one dimension.
EmbeddingStore load_embeddings_jsonl(const std::string& path);

// Dense model input plus the schema it was produced under.
struct FeatureVector {
    std::vector<double> values;
    std::string schema_id;
    // Set when the TF-IDF block is all zero (no in-vocabulary tokens).
    bool tfidf_all_zero = false;
};

// Text-to-vector front end. In TfidfStylo mode the vector is the TF-IDF
// block followed by the scaled stylometric block; in External mode vectors
// are looked up by sample id.
struct FeaturePipeline {
    enum class Mode { TfidfStylo, External };

    Mode mode = Mode::TfidfStylo;
    Vocabulary vocab;
    StyloScaler scaler;
    EmbeddingStore embeddings;
    std::string schema_id;

    std::size_t dim() const;

    // Vectorizes raw text (TfidfStylo mode only).
    FeatureVector transform_text(std::string_view text) const;
    // Vectorizes a sample; External mode resolves by sample id and throws
    // DataError when the id is missing.
    FeatureVector transform(const TextSample& sample) const;
    std::vector<FeatureVector> transform(const Dataset& dataset) const;
};

FeaturePipeline fit_pipeline(const Dataset& train, const FeatureOptions& options);
FeaturePipeline external_pipeline(EmbeddingStore store);

}  // namespace mgtkit
