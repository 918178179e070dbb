#include "mgtkit/pipeline.hpp"

#include "mgtkit/csv.hpp"
#include "mgtkit/digest.hpp"
#include "mgtkit/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>

namespace mgtkit {

namespace {

using nlohmann::json;

std::string tfidf_stylo_schema(const Vocabulary& vocab, const StyloScaler& scaler) {
    std::string desc = "tfidf+stylo;n_docs=" + std::to_string(vocab.n_docs) + ";terms=";
    for (std::size_t i = 0; i < vocab.terms.size(); ++i) {
        desc += vocab.terms[i];
        desc += ':';
        desc += format_double(vocab.idf[i]);
        desc += ',';
    }
    desc += ";stylo=";
    for (const auto& name : StyloVector::feature_names()) {
        desc += name;
        desc += ',';
    }
    desc += ";scaler=";
    for (std::size_t i = 0; i < scaler.mean.size(); ++i) {
        desc += format_double(scaler.mean[i]);
        desc += '/';
        desc += format_double(scaler.stddev[i]);
        desc += ',';
    }
    return digest_string(desc);
}

std::string external_schema(const EmbeddingStore& store) {
    return digest_string("external;dim=" + std::to_string(store.dim) + ";n=" +
                         std::to_string(store.by_id.size()));
}

}  // namespace

std::vector<double> StyloScaler::apply(const StyloVector& s) const {
    std::vector<double> out(s.values.size(), 0.0);
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        if (stddev[i] > 0.0) out[i] = (s.values[i] - mean[i]) / stddev[i];
    }
    return out;
}

StyloScaler fit_stylo_scaler(const std::vector<StyloVector>& rows) {
    if (rows.empty()) throw DataError("cannot fit a feature scaler on an empty corpus");
    const std::size_t d = StyloVector::kNumFeatures;
    StyloScaler scaler;
    scaler.mean.assign(d, 0.0);
    scaler.stddev.assign(d, 0.0);
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < d; ++i) scaler.mean[i] += row.values[i];
    }
    for (std::size_t i = 0; i < d; ++i) scaler.mean[i] /= static_cast<double>(rows.size());
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < d; ++i) {
            const double diff = row.values[i] - scaler.mean[i];
            scaler.stddev[i] += diff * diff;
        }
    }
    for (std::size_t i = 0; i < d; ++i) {
        scaler.stddev[i] = std::sqrt(scaler.stddev[i] / static_cast<double>(rows.size()));
    }
    return scaler;
}

EmbeddingStore load_embeddings_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open embeddings file " + path);

    EmbeddingStore store;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json row = json::parse(line, nullptr, false);
        const std::string where = path + " line " + std::to_string(line_no);
        if (row.is_discarded()) throw DataError(where + ": malformed JSON");
        if (!row.contains("id") || !row["id"].is_string()) {
            throw DataError(where + ": missing string field 'id'");
        }
        if (!row.contains("h") || !row["h"].is_array() || row["h"].empty()) {
            throw DataError(where + ": missing non-empty array field 'h'");
        }
        std::vector<double> h;
        h.reserve(row["h"].size());
        for (const auto& v : row["h"]) {
            if (!v.is_number()) throw DataError(where + ": non-numeric embedding entry");
            h.push_back(v.get<double>());
        }
        if (store.dim == 0) {
            store.dim = h.size();
        } else if (h.size() != store.dim) {
            throw DataError(where + ": embedding dimension " + std::to_string(h.size()) +
                            " does not match earlier dimension " + std::to_string(store.dim));
        }
        if (!store.by_id.emplace(row["id"].get<std::string>(), std::move(h)).second) {
            throw DataError(where + ": duplicate id '" + row["id"].get<std::string>() + "'");
        }
    }
    if (store.by_id.empty()) throw DataError("embeddings file " + path + " has no rows");
    return store;
}

std::size_t FeaturePipeline::dim() const {
    if (mode == Mode::External) return embeddings.dim;
    return vocab.size() + StyloVector::kNumFeatures;
}

FeatureVector FeaturePipeline::transform_text(std::string_view text) const {
    if (mode == Mode::External) {
        throw DataError("external feature mode vectorizes by sample id, not raw text");
    }
    FeatureVector out;
    out.schema_id = schema_id;
    out.values.assign(dim(), 0.0);

    const SparseVec tfidf = vectorize_tfidf(text, vocab);
    out.tfidf_all_zero = tfidf.all_zero();
    for (const auto& [idx, w] : tfidf.entries) out.values[idx] = w;

    const std::vector<double> stylo = scaler.apply(extract_stylometrics(text));
    for (std::size_t i = 0; i < stylo.size(); ++i) out.values[vocab.size() + i] = stylo[i];
    return out;
}

FeatureVector FeaturePipeline::transform(const TextSample& sample) const {
    if (mode == Mode::TfidfStylo) return transform_text(sample.text);
    auto it = embeddings.by_id.find(sample.id);
    if (it == embeddings.by_id.end()) {
        throw DataError("no embedding for sample id '" + sample.id + "'");
    }
    FeatureVector out;
    out.schema_id = schema_id;
    out.values = it->second;
    return out;
}

std::vector<FeatureVector> FeaturePipeline::transform(const Dataset& dataset) const {
    std::vector<FeatureVector> out;
    out.reserve(dataset.size());
    for (const auto& s : dataset.samples) out.push_back(transform(s));
    return out;
}

FeaturePipeline fit_pipeline(const Dataset& train, const FeatureOptions& options) {
    if (train.samples.empty()) throw DataError("cannot fit a feature pipeline on an empty dataset");
    FeaturePipeline p;
    p.mode = FeaturePipeline::Mode::TfidfStylo;
    p.vocab = fit_vocabulary(train, options.min_df, options.max_terms);

    std::vector<StyloVector> rows;
    rows.reserve(train.size());
    for (const auto& s : train.samples) rows.push_back(extract_stylometrics(s.text));
    p.scaler = fit_stylo_scaler(rows);
    p.schema_id = tfidf_stylo_schema(p.vocab, p.scaler);
    return p;
}

FeaturePipeline external_pipeline(EmbeddingStore store) {
    FeaturePipeline p;
    p.mode = FeaturePipeline::Mode::External;
    p.embeddings = std::move(store);
    p.schema_id = external_schema(p.embeddings);
    return p;
}

}  // namespace mgtkit
