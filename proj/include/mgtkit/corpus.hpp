#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mgtkit {

/// One document with its attribution label and language tag. The detection
/// label is derived from the author via LabelSpace, never stored.
struct TextSample {
    std::string text;
    std::string author;
    std::string language = "und";
    std::string id;
};

/// Ordered author classes. The human class is a first-class attribution
/// label; `human_index` points at it.
struct LabelSpace {
    std::vector<std::string> classes;
    std::size_t human_index = 0;

    std::size_t num_classes() const { return classes.size(); }
    std::optional<std::size_t> index_of(std::string_view name) const;
    void validate() const;  // unique non-empty names, human_index in range
    bool operator==(const LabelSpace&) const = default;
};

struct Dataset {
    std::vector<TextSample> samples;
    LabelSpace label_space;

    std::size_t size() const { return samples.size(); }
    /// Class index of a sample's author; throws DataError on unknown authors.
    std::size_t class_index(const TextSample& s) const;
    void validate() const;
};

/// Reads UTF-8 JSONL (one object per line, keys: text, author, language, id).
/// Missing language defaults to "und", missing id to "line-<n>". Errors name
/// the offending line.
Dataset load_jsonl(const std::string& path, const LabelSpace& space);

// Derives a label space from the distinct authors in a JSONL dataset
// (sorted lexicographically). `human_class` must be among them.
LabelSpace infer_label_space(const std::string& path, const std::string& human_class);

/// Echo format of load_jsonl; load -> save -> load is identity on samples.
void save_jsonl(const Dataset& ds, const std::string& path);

/// Unlabeled documents for prediction; only "text" is required.
struct UnlabeledSample {
    std::string text;
    std::string language = "und";
    std::string id;
};
std::vector<UnlabeledSample> load_jsonl_texts(const std::string& path);

/// Stratified split. Per class, the validation part gets
/// floor((1 - ratio) * n) samples and the remainder stays in train.
/// Deterministic for a fixed seed.
std::pair<Dataset, Dataset> split(const Dataset& ds, double ratio, std::uint64_t seed);

/// 0 iff the sample's author is the human class, else 1.
int detection_label(const TextSample& s, const LabelSpace& space);

using WeightedVocab = std::vector<std::pair<std::string, double>>;

struct ClassStyle {
    std::string name;
    WeightedVocab vocab;          // class-specific unigram table
    double mean_length = 90.0;    // tokens per document
    double sentiment_rate = 0.02; // chance a token comes from a sentiment lexicon
    double positive_share = 0.6;  // of sentiment tokens, fraction positive
};

/// Desk-scale corpus recipe. Each class samples from
/// (1 - separation) * common_vocab + separation * class vocab, so separation
/// directly controls inter-class vocabulary overlap.
struct SyntheticSpec {
    std::vector<ClassStyle> class_styles;
    WeightedVocab common_vocab;
    std::size_t human_index = 0;
    std::size_t samples_per_class = 100;
    double separation = 0.5;
    std::string language = "en";

    void validate() const;
};

/// Built-in styles: one human class plus `machine_classes` machine classes.
/// Machine classes share part of their specific vocabulary with each other
/// while the human pool is disjoint from all machine pools, so the human
/// class is maximally distant at any separation > 0. Two language variants
/// ("en" and "fx") have fully disjoint vocabularies.
SyntheticSpec default_synthetic_spec(std::size_t machine_classes,
                                     std::size_t samples_per_class,
                                     double separation,
                                     const std::string& language = "en");

/// Bit-reproducible for fixed (spec, seed).
Dataset generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed);

}  // namespace mgtkit
