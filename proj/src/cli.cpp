#include "mgtkit/cli.hpp"

#include "mgtkit/artifacts.hpp"
#include "mgtkit/baselines.hpp"
#include "mgtkit/checkpoint.hpp"
#include "mgtkit/corpus.hpp"
#include "mgtkit/csv.hpp"
#include "mgtkit/digest.hpp"
#include "mgtkit/errors.hpp"
#include "mgtkit/evaluation.hpp"
#include "mgtkit/obfuscation.hpp"
#include "mgtkit/pipeline.hpp"
#include "mgtkit/training.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mgtkit::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

enum class KeyType { Int, Real, Bool, Str };

struct KeySpec {
    KeyType type;
    json def;
    const char* help;
};

// Every configuration key the toolkit understands, with defaults. Flags use
// the key name verbatim (`--train.learning_rate 0.01`); config files hold
// one flat JSON object with the same keys. Keys valid here but not used by
// the invoked subcommand are accepted in files and ignored.
const std::map<std::string, KeySpec>& registry() {
    static const std::map<std::string, KeySpec> reg = {
        {"data", {KeyType::Str, "", "input dataset (JSONL)"}},
        {"out", {KeyType::Str, ".", "output file or directory"}},
        {"model", {KeyType::Str, "", "checkpoint file to load"}},
        {"embeddings", {KeyType::Str, "", "external embeddings JSONL (id -> h)"}},
        {"threads", {KeyType::Int, 1, "worker threads (default 1 for reproducibility)"}},
        {"human_class", {KeyType::Str, "human", "author name of the human class"}},

        {"synth.machine_classes", {KeyType::Int, 3, "number of machine styles (1-8)"}},
        {"synth.samples_per_class", {KeyType::Int, 200, "documents per class"}},
        {"synth.separation", {KeyType::Real, 0.5, "class-specific vocabulary share (0-1)"}},
        {"synth.language", {KeyType::Str, "en", "language(s), comma-separated: en, fx"}},
        {"synth.seed", {KeyType::Int, 42, "generator seed"}},

        {"features.min_df", {KeyType::Int, 2, "minimum document frequency for vocabulary terms"}},
        {"features.max_terms", {KeyType::Int, 2000, "vocabulary size cap"}},
        {"features.mode", {KeyType::Str, "tfidf_stylo", "tfidf_stylo or external"}},

        {"train.model", {KeyType::Str, "joint", "joint, logreg, or mnb"}},
        {"train.split", {KeyType::Real, 0.8, "train fraction of the stratified split"}},
        {"train.learning_rate", {KeyType::Real, 1e-3, "AdamW base learning rate"}},
        {"train.lambda_d", {KeyType::Real, 0.5, "detection loss weight"}},
        {"train.lambda_a", {KeyType::Real, 0.5, "attribution loss weight"}},
        {"train.batch_size", {KeyType::Int, 32, "minibatch size"}},
        {"train.max_epochs", {KeyType::Int, 30, "maximum training epochs"}},
        {"train.weight_decay", {KeyType::Real, 0.01, "decoupled weight decay"}},
        {"train.dropout", {KeyType::Real, 0.5, "encoder dropout rate"}},
        {"train.patience", {KeyType::Int, 6, "early-stopping patience in epochs"}},
        {"train.seed", {KeyType::Int, 42, "initialization/shuffle seed"}},
        {"train.pcgrad", {KeyType::Bool, false, "project conflicting task gradients"}},
        {"train.human_attrib_mode", {KeyType::Str, "class", "class or masked"}},
        {"train.score_metric",
         {KeyType::Str, "mean_f1", "mean_f1, detection_f1, or attribution_f1"}},
        {"train.hidden_dims", {KeyType::Str, "256", "comma-separated hidden widths; empty for none"}},
        {"train.encoder_dim", {KeyType::Int, 64, "shared representation dimension"}},
        {"train.activation", {KeyType::Str, "tanh", "linear, tanh, or relu"}},
        {"train.mnb_alpha", {KeyType::Real, 1.0, "additive smoothing for the MNB baseline"}},

        {"pca.components", {KeyType::Int, 2, "number of principal components"}},

        {"ablate.grid",
         {KeyType::Str, "0.3:0.7,0.5:0.5,0.7:0.3",
          "lambda grid as comma-separated lambda_d:lambda_a pairs"}},

        {"attack.kind", {KeyType::Str, "identity", "identity, mutant_x, or backtranslate"}},
        {"attack.population_size", {KeyType::Int, 20, "GA population size"}},
        {"attack.generations", {KeyType::Int, 25, "GA generations"}},
        {"attack.mutation_rate", {KeyType::Real, 0.05, "per-token synonym replacement rate"}},
        {"attack.crossover_rate", {KeyType::Real, 0.3, "sentence-level crossover rate"}},
        {"attack.w_probability", {KeyType::Real, 0.5, "fitness weight on evading attribution"}},
        {"attack.w_similarity", {KeyType::Real, 0.5, "fitness weight on content similarity"}},
        {"attack.similarity_floor", {KeyType::Real, 0.7, "minimum accepted TF-IDF similarity"}},
        {"attack.seed", {KeyType::Int, 42, "attack stream seed"}},
        {"attack.per_class_cap", {KeyType::Int, 500, "samples attacked per class"}},
        {"attack.translator", {KeyType::Str, "stub", "stub, command, or http"}},
        {"attack.source_lang", {KeyType::Str, "en", "source language for back-translation"}},
        {"attack.pivot", {KeyType::Str, "fr", "pivot language for back-translation"}},
        {"attack.command", {KeyType::Str, "", "translation command (stdin -> stdout)"}},
        {"attack.host", {KeyType::Str, "127.0.0.1", "translation service host"}},
        {"attack.port", {KeyType::Int, 8080, "translation service port"}},
        {"attack.http_path", {KeyType::Str, "/translate", "translation service route"}},
    };
    return reg;
}

const char* type_name(KeyType t) {
    switch (t) {
        case KeyType::Int: return "an integer";
        case KeyType::Real: return "a number";
        case KeyType::Bool: return "a boolean";
        case KeyType::Str: return "a string";
    }
    return "a value";
}

json parse_flag_value(const std::string& key, KeyType type, const std::string& text) {
    switch (type) {
        case KeyType::Int: {
            long long v = 0;
            const auto* begin = text.data();
            const auto* end = text.data() + text.size();
            auto [ptr, ec] = std::from_chars(begin, end, v);
            if (ec != std::errc{} || ptr != end) {
                throw UsageError("flag --" + key + " expects an integer, got '" + text + "'");
            }
            return v;
        }
        case KeyType::Real: {
            try {
                std::size_t idx = 0;
                const double v = std::stod(text, &idx);
                if (idx != text.size()) throw std::invalid_argument("trailing characters");
                return v;
            } catch (const std::exception&) {
                throw UsageError("flag --" + key + " expects a number, got '" + text + "'");
            }
        }
        case KeyType::Bool: {
            if (text == "true" || text == "1") return true;
            if (text == "false" || text == "0") return false;
            throw UsageError("flag --" + key + " expects true or false, got '" + text + "'");
        }
        case KeyType::Str: return text;
    }
    throw UsageError("flag --" + key + " has an unknown type");
}

void check_file_value(const std::string& file, const std::string& key, KeyType type,
                      const json& v) {
    const bool ok = (type == KeyType::Int && v.is_number_integer()) ||
                    (type == KeyType::Real && v.is_number()) ||
                    (type == KeyType::Bool && v.is_boolean()) ||
                    (type == KeyType::Str && v.is_string());
    if (!ok) {
        throw UsageError(file + ": configuration key '" + key + "' expects " + type_name(type));
    }
}

// Fully resolved flat configuration (defaults < config file < flags) plus
// the input digests accumulated while loading files.
struct RunConfig {
    std::map<std::string, json> values;
    std::map<std::string, std::string> input_digests;

    const json& at(const std::string& key) const {
        auto it = values.find(key);
        if (it == values.end()) {
            throw UsageError("configuration key '" + key + "' is not available here");
        }
        return it->second;
    }
    std::string str(const std::string& key) const { return at(key).get<std::string>(); }
    double real(const std::string& key) const { return at(key).get<double>(); }
    bool flag(const std::string& key) const { return at(key).get<bool>(); }
    std::uint64_t uint(const std::string& key) const {
        const long long v = at(key).get<long long>();
        if (v < 0) throw UsageError("configuration key '" + key + "' must be non-negative");
        return static_cast<std::uint64_t>(v);
    }

    std::string required_path(const std::string& key) const {
        std::string v = str(key);
        if (v.empty()) throw UsageError("missing required --" + key);
        return v;
    }

    json resolved() const {
        json j = json::object();
        for (const auto& [k, v] : values) j[k] = v;
        return j;
    }
    Provenance provenance() const { return Provenance{resolved(), input_digests}; }
};

struct SubSpec {
    CLI::App* app = nullptr;
    std::vector<std::string> keys;
    std::map<std::string, std::string> flag_storage;
    std::string config_path;
    std::function<void(RunConfig&)> handler;
};

RunConfig resolve_config(const SubSpec& spec) {
    RunConfig rc;
    for (const auto& key : spec.keys) {
        rc.values[key] = registry().at(key).def;
    }

    if (!spec.config_path.empty()) {
        std::ifstream in(spec.config_path, std::ios::binary);
        if (!in) throw DataError("cannot open config file: " + spec.config_path);
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw DataError(spec.config_path + ": invalid JSON: " + e.what());
        }
        if (!j.is_object()) {
            throw UsageError(spec.config_path + ": configuration must be one flat JSON object");
        }
        for (const auto& [key, value] : j.items()) {
            auto rit = registry().find(key);
            if (rit == registry().end()) {
                throw UsageError(spec.config_path + ": unknown configuration key '" + key + "'");
            }
            if (!rc.values.count(key)) continue;  // valid key, unused by this subcommand
            check_file_value(spec.config_path, key, rit->second.type, value);
            rc.values[key] = value;
        }
        rc.input_digests["config"] = digest_file(spec.config_path);
    }

    for (const auto& key : spec.keys) {
        if (spec.app->count("--" + key) == 0) continue;
        rc.values[key] = parse_flag_value(key, registry().at(key).type,
                                          spec.flag_storage.at(key));
    }

    if (rc.values.count("threads") && rc.uint("threads") == 0) {
        throw UsageError("--threads must be at least 1");
    }
    return rc;
}

std::vector<std::string> section_keys(const std::string& prefix) {
    std::vector<std::string> keys;
    for (const auto& [key, spec] : registry()) {
        if (key.rfind(prefix, 0) == 0) keys.push_back(key);
    }
    return keys;
}

std::vector<std::string> concat_keys(std::vector<std::string> base,
                                     const std::vector<std::string>& extra) {
    base.insert(base.end(), extra.begin(), extra.end());
    return base;
}

// --- shared plumbing -------------------------------------------------------

fs::path ensure_dir(const std::string& out) {
    fs::path dir = out.empty() ? fs::path(".") : fs::path(out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw DataError("cannot create output directory '" + dir.string() + "': " + ec.message());
    return dir;
}

// --out naming a file with the given extension is taken literally; anything
// else names a directory that receives `default_name`.
std::pair<fs::path, fs::path> resolve_out(const std::string& out, std::string_view ext,
                                          const std::string& default_name) {
    fs::path p = out.empty() ? fs::path(".") : fs::path(out);
    if (p.extension() == ext) {
        fs::path dir = p.parent_path();
        if (dir.empty()) dir = ".";
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) throw DataError("cannot create output directory '" + dir.string() + "': " + ec.message());
        return {dir, p};
    }
    fs::path dir = ensure_dir(out);
    return {dir, dir / default_name};
}

std::vector<std::size_t> parse_hidden_dims(const std::string& text) {
    std::vector<std::size_t> dims;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        std::string piece = text.substr(start, end - start);
        while (!piece.empty() && piece.front() == ' ') piece.erase(piece.begin());
        while (!piece.empty() && piece.back() == ' ') piece.pop_back();
        if (!piece.empty()) {
            long long v = 0;
            const auto* b = piece.data();
            auto [ptr, ec] = std::from_chars(b, b + piece.size(), v);
            if (ec != std::errc{} || ptr != b + piece.size() || v <= 0) {
                throw UsageError("train.hidden_dims expects comma-separated positive integers, got '" +
                                 text + "'");
            }
            dims.push_back(static_cast<std::size_t>(v));
        }
        if (end == text.size()) break;
        start = end + 1;
    }
    return dims;
}

Activation parse_activation(const std::string& name) {
    if (name == "linear") return Activation::Linear;
    if (name == "tanh") return Activation::Tanh;
    if (name == "relu") return Activation::Relu;
    throw UsageError("train.activation must be linear, tanh, or relu, got '" + name + "'");
}

TrainConfig train_config_from(const RunConfig& rc) {
    TrainConfig tc;
    tc.learning_rate = rc.real("train.learning_rate");
    tc.lambda_d = rc.real("train.lambda_d");
    tc.lambda_a = rc.real("train.lambda_a");
    tc.batch_size = rc.uint("train.batch_size");
    tc.max_epochs = rc.uint("train.max_epochs");
    tc.weight_decay = rc.real("train.weight_decay");
    tc.dropout = rc.real("train.dropout");
    tc.patience = rc.uint("train.patience");
    tc.seed = rc.uint("train.seed");
    tc.pcgrad = rc.flag("train.pcgrad");

    const std::string mode = rc.str("train.human_attrib_mode");
    if (mode == "class") {
        tc.human_attrib_mode = HumanAttribMode::Class;
    } else if (mode == "masked") {
        tc.human_attrib_mode = HumanAttribMode::Masked;
    } else {
        throw UsageError("train.human_attrib_mode must be class or masked, got '" + mode + "'");
    }

    const std::string metric = rc.str("train.score_metric");
    if (metric == "mean_f1") {
        tc.score_metric = ScoreMetric::MeanF1;
    } else if (metric == "detection_f1") {
        tc.score_metric = ScoreMetric::DetectionF1;
    } else if (metric == "attribution_f1") {
        tc.score_metric = ScoreMetric::AttributionF1;
    } else {
        throw UsageError("train.score_metric must be mean_f1, detection_f1, or attribution_f1, got '" +
                         metric + "'");
    }

    tc.hidden_dims = parse_hidden_dims(rc.str("train.hidden_dims"));
    tc.encoder_dim = rc.uint("train.encoder_dim");
    tc.activation = parse_activation(rc.str("train.activation"));
    tc.validate();
    return tc;
}

FeatureOptions feature_options_from(const RunConfig& rc) {
    FeatureOptions fo;
    fo.min_df = rc.uint("features.min_df");
    fo.max_terms = rc.uint("features.max_terms");
    if (fo.max_terms == 0) throw UsageError("features.max_terms must be at least 1");
    return fo;
}

ObfuscationConfig obfuscation_config_from(const RunConfig& rc) {
    ObfuscationConfig oc;
    oc.population_size = rc.uint("attack.population_size");
    oc.generations = rc.uint("attack.generations");
    oc.mutation_rate = rc.real("attack.mutation_rate");
    oc.crossover_rate = rc.real("attack.crossover_rate");
    oc.w_probability = rc.real("attack.w_probability");
    oc.w_similarity = rc.real("attack.w_similarity");
    oc.similarity_floor = rc.real("attack.similarity_floor");
    oc.seed = rc.uint("attack.seed");
    oc.validate();
    return oc;
}

EmbeddingStore load_store(RunConfig& rc) {
    const std::string path = rc.required_path("embeddings");
    EmbeddingStore store = load_embeddings_jsonl(path);
    rc.input_digests["embeddings"] = digest_file(path);
    return store;
}

FeaturePipeline build_pipeline(RunConfig& rc, const Dataset& train_part) {
    const std::string mode = rc.str("features.mode");
    if (mode == "tfidf_stylo") {
        return fit_pipeline(train_part, feature_options_from(rc));
    }
    if (mode == "external") {
        return external_pipeline(load_store(rc));
    }
    throw UsageError("features.mode must be tfidf_stylo or external, got '" + mode + "'");
}

Dataset load_data(RunConfig& rc, const LabelSpace& space) {
    const std::string path = rc.required_path("data");
    Dataset ds = load_jsonl(path, space);
    rc.input_digests["data"] = digest_file(path);
    return ds;
}

Dataset load_data_inferred(RunConfig& rc) {
    const std::string path = rc.required_path("data");
    const LabelSpace space = infer_label_space(path, rc.str("human_class"));
    Dataset ds = load_jsonl(path, space);
    rc.input_digests["data"] = digest_file(path);
    return ds;
}

Checkpoint load_model(RunConfig& rc) {
    const std::string path = rc.required_path("model");
    Checkpoint cp = load_checkpoint(path);
    rc.input_digests["model"] = digest_file(path);
    // External-embedding checkpoints store only the expected dimension; the
    // vectors themselves must be supplied again.
    if (cp.pipeline.mode == FeaturePipeline::Mode::External) {
        EmbeddingStore store = load_store(rc);
        if (store.dim != cp.pipeline.embeddings.dim) {
            throw DataError("embedding dimension " + std::to_string(store.dim) +
                            " does not match the checkpoint's " +
                            std::to_string(cp.pipeline.embeddings.dim));
        }
        cp.pipeline.embeddings = std::move(store);
    }
    return cp;
}

Mat to_matrix(const std::vector<FeatureVector>& rows) {
    if (rows.empty()) throw DataError("no feature vectors to assemble");
    Mat m(rows.size(), rows[0].values.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].values.size() != m.cols) throw DataError("inconsistent feature dimensions");
        for (std::size_t jx = 0; jx < m.cols; ++jx) m(i, jx) = rows[i].values[jx];
    }
    return m;
}

std::vector<std::size_t> attribution_labels(const Dataset& ds) {
    std::vector<std::size_t> y;
    y.reserve(ds.size());
    for (const auto& s : ds.samples) y.push_back(ds.class_index(s));
    return y;
}

Vec dense_counts(std::string_view text, const Vocabulary& vocab) {
    Vec counts(vocab.size(), 0.0);
    for (const auto& [idx, value] : vectorize_counts(text, vocab).entries) {
        counts[idx] = value;
    }
    return counts;
}

Mat count_matrix(const Dataset& ds, const Vocabulary& vocab) {
    Mat m(ds.size(), vocab.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const Vec counts = dense_counts(ds.samples[i].text, vocab);
        for (std::size_t jx = 0; jx < m.cols; ++jx) m(i, jx) = counts[jx];
    }
    return m;
}

MetricsReport evaluate_mnb(const MnbModel& mnb, const Dataset& ds, const Vocabulary& vocab) {
    if (ds.samples.empty()) throw DataError("cannot evaluate an empty dataset");
    if (mnb.num_classes() != ds.label_space.num_classes()) {
        throw DataError("label space size does not match the model's class count");
    }
    std::vector<std::size_t> det_pred, det_truth, att_pred, att_truth;
    for (const auto& s : ds.samples) {
        const MnbPrediction pred = predict_mnb(dense_counts(s.text, vocab), mnb);
        att_pred.push_back(pred.label);
        att_truth.push_back(ds.class_index(s));
        det_pred.push_back(pred.label == ds.label_space.human_index ? 0 : 1);
        det_truth.push_back(static_cast<std::size_t>(detection_label(s, ds.label_space)));
    }
    MetricsReport report;
    report.num_samples = ds.size();
    report.detection = task_metrics(det_pred, det_truth, 2, {"human", "machine"});
    report.attribution =
        task_metrics(att_pred, att_truth, mnb.num_classes(), ds.label_space.classes);
    return report;
}

Vec softmax_of(const Vec& logits) {
    double max = logits[0];
    for (double v : logits) max = std::max(max, v);
    Vec p(logits.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        p[i] = std::exp(logits[i] - max);
        sum += p[i];
    }
    for (double& v : p) v /= sum;
    return p;
}

// --- subcommand handlers ---------------------------------------------------

void cmd_synth(RunConfig& rc) {
    const std::uint64_t machine_classes = rc.uint("synth.machine_classes");
    const std::uint64_t per_class = rc.uint("synth.samples_per_class");
    const double separation = rc.real("synth.separation");
    const std::uint64_t seed = rc.uint("synth.seed");

    std::vector<std::string> languages;
    {
        const std::string spec = rc.str("synth.language");
        std::size_t start = 0;
        while (start <= spec.size()) {
            std::size_t end = spec.find(',', start);
            if (end == std::string::npos) end = spec.size();
            std::string lang = spec.substr(start, end - start);
            if (!lang.empty()) languages.push_back(lang);
            if (end == spec.size()) break;
            start = end + 1;
        }
        if (languages.empty()) throw UsageError("synth.language names no languages");
    }

    Dataset combined;
    for (const auto& lang : languages) {
        const SyntheticSpec spec =
            default_synthetic_spec(machine_classes, per_class, separation, lang);
        Dataset ds = generate_synthetic(spec, seed);
        if (combined.samples.empty()) {
            combined.label_space = ds.label_space;
        }
        for (auto& s : ds.samples) {
            if (languages.size() > 1) s.id = lang + ":" + s.id;
            combined.samples.push_back(std::move(s));
        }
    }

    const auto [dir, file] = resolve_out(rc.str("out"), ".jsonl", "data.jsonl");
    save_jsonl(combined, file.string());
    write_manifest(dir, rc.provenance(), {file.filename().string()});
    std::cout << "wrote " << file.string() << " (" << combined.size() << " samples)\n";
}

void cmd_train(RunConfig& rc) {
    const Dataset ds = load_data_inferred(rc);
    const TrainConfig tc = train_config_from(rc);
    const auto [train_part, val_part] = split(ds, rc.real("train.split"), tc.seed);
    const FeaturePipeline pipeline = build_pipeline(rc, train_part);

    Checkpoint cp;
    cp.pipeline = pipeline;
    cp.label_space = ds.label_space;
    cp.config = rc.resolved();
    cp.input_digests = rc.input_digests;

    std::vector<EpochRecord> history;
    std::size_t best_epoch = 0;
    const std::string kind = rc.str("train.model");
    if (kind == "joint") {
        cp.model_kind = "joint";
        TrainResult result = train(train_part, val_part, pipeline, tc);
        cp.params = std::move(result.best);
        history = std::move(result.history);
        best_epoch = result.best_epoch;
    } else if (kind == "logreg") {
        cp.model_kind = "softmax_regression";
        const Mat x_train = to_matrix(pipeline.transform(train_part));
        const Mat x_val = to_matrix(pipeline.transform(val_part));
        TrainResult result =
            fit_softmax_regression(x_train, attribution_labels(train_part), x_val,
                                   attribution_labels(val_part),
                                   ds.label_space.num_classes(), tc);
        cp.params = std::move(result.best);
        history = std::move(result.history);
        best_epoch = result.best_epoch;
    } else if (kind == "mnb") {
        if (pipeline.mode != FeaturePipeline::Mode::TfidfStylo) {
            throw UsageError("train.model=mnb requires features.mode=tfidf_stylo");
        }
        cp.model_kind = "mnb";
        cp.mnb = fit_mnb(count_matrix(train_part, pipeline.vocab),
                         attribution_labels(train_part), ds.label_space.num_classes(),
                         rc.real("train.mnb_alpha"));
    } else {
        throw UsageError("train.model must be joint, logreg, or mnb, got '" + kind + "'");
    }

    const auto [dir, file] = resolve_out(rc.str("out"), ".json", "model.json");
    save_checkpoint(cp, file.string());
    std::vector<std::string> outputs{file.filename().string()};
    if (!history.empty()) {
        write_history_csv(dir / "history.csv", history);
        outputs.push_back("history.csv");
        std::cout << "trained " << history.size() << " epochs, kept epoch " << best_epoch << "\n";
    }
    write_manifest(dir, rc.provenance(), outputs);
    std::cout << "wrote " << file.string() << "\n";
}

void cmd_eval(RunConfig& rc) {
    Checkpoint cp = load_model(rc);
    const Dataset ds = load_data(rc, cp.label_space);

    MetricsReport report;
    if (cp.model_kind == "mnb") {
        report = evaluate_mnb(cp.mnb, ds, cp.pipeline.vocab);
    } else {
        report = evaluate(cp.params, ds, cp.pipeline);
    }
    report.dataset_id = rc.input_digests.at("data");
    report.checkpoint_id = rc.input_digests.at("model");

    const fs::path dir = ensure_dir(rc.str("out"));
    write_json_artifact(dir / "metrics.json", metrics_report_json(report), rc.provenance());
    write_confusion_csv(dir / "confusion_detection.csv", report.detection.matrix);
    write_confusion_csv(dir / "confusion_attribution.csv", report.attribution.matrix);
    write_manifest(dir, rc.provenance(),
                   {"metrics.json", "confusion_detection.csv", "confusion_attribution.csv"});
    std::cout << "detection macro-F1 " << format_double(report.detection.macro_f1)
              << ", attribution macro-F1 " << format_double(report.attribution.macro_f1) << "\n";
}

void cmd_predict(RunConfig& rc) {
    Checkpoint cp = load_model(rc);
    const std::string data_path = rc.required_path("data");
    const std::vector<UnlabeledSample> rows = load_jsonl_texts(data_path);
    rc.input_digests["data"] = digest_file(data_path);

    const auto [dir, file] = resolve_out(rc.str("out"), ".jsonl", "predictions.jsonl");
    std::ofstream out(file, std::ios::binary);
    if (!out) throw DataError("cannot open '" + file.string() + "' for writing");

    for (const auto& row : rows) {
        TextSample sample;
        sample.text = row.text;
        sample.language = row.language;
        sample.id = row.id;

        json line;
        line["id"] = row.id;
        if (cp.model_kind == "mnb") {
            const MnbPrediction pred =
                predict_mnb(dense_counts(row.text, cp.pipeline.vocab), cp.mnb);
            const Vec p_attrib = softmax_of(pred.log_posterior);
            const double p_detect = 1.0 - p_attrib[cp.label_space.human_index];
            line["p_detect"] = p_detect;
            line["p_attrib"] = p_attrib;
            line["detect_label"] = p_detect >= 0.5 ? 1 : 0;
            line["attrib_label"] = cp.label_space.classes[pred.label];
        } else {
            const Prediction pred = predict(cp.pipeline.transform(sample), cp.params);
            line["p_detect"] = pred.p_detect;
            line["p_attrib"] = pred.p_attrib;
            line["detect_label"] = pred.detect_label;
            line["attrib_label"] = cp.label_space.classes[pred.attrib_label];
        }
        out << line.dump() << '\n';
    }
    out.flush();
    if (!out) throw DataError("failed while writing '" + file.string() + "'");
    out.close();

    write_manifest(dir, rc.provenance(), {file.filename().string()});
    std::cout << "wrote " << file.string() << " (" << rows.size() << " predictions)\n";
}

void cmd_features_rank(RunConfig& rc) {
    const Dataset ds = load_data_inferred(rc);
    if (rc.str("features.mode") != "tfidf_stylo") {
        throw UsageError("features rank requires features.mode=tfidf_stylo");
    }
    const FeaturePipeline pipeline = fit_pipeline(ds, feature_options_from(rc));
    const Mat x = to_matrix(pipeline.transform(ds));
    const std::vector<ChiSquaredEntry> ranked =
        chi_squared_rank(x, attribution_labels(ds), ds.label_space.num_classes());

    std::vector<std::string> names;
    names.reserve(pipeline.dim());
    for (const auto& term : pipeline.vocab.terms) names.push_back("term:" + term);
    for (const auto& stylo : StyloVector::feature_names()) {
        names.push_back(std::string("stylo:") + stylo);
    }

    const fs::path dir = ensure_dir(rc.str("out"));
    write_feature_rank_csv(dir / "feature_rank.csv", ranked, names);
    write_manifest(dir, rc.provenance(), {"feature_rank.csv"});
    std::cout << "wrote " << (dir / "feature_rank.csv").string() << " (" << ranked.size()
              << " features)\n";
}

void cmd_pca(RunConfig& rc) {
    Checkpoint cp = load_model(rc);
    if (cp.model_kind == "mnb") {
        throw DataError("pca needs an encoder checkpoint (joint or softmax_regression)");
    }
    const Dataset ds = load_data(rc, cp.label_space);
    const std::uint64_t k = rc.uint("pca.components");

    const Mat h = encode_dataset(cp.params, ds, cp.pipeline);
    const PcaResult pca = pca_project(h, k);

    std::vector<std::string> ids, labels;
    for (const auto& s : ds.samples) {
        ids.push_back(s.id);
        labels.push_back(s.author);
    }

    const fs::path dir = ensure_dir(rc.str("out"));
    write_pca_csv(dir / "pca.csv", pca, ids, labels);
    {
        CsvWriter csv((dir / "pca_variance.csv").string(), {"component", "variance_fraction"});
        for (std::size_t c = 0; c < pca.variance_fraction.size(); ++c) {
            csv.row({"pc" + std::to_string(c + 1), format_double(pca.variance_fraction[c])});
        }
        csv.close();
    }
    write_manifest(dir, rc.provenance(), {"pca.csv", "pca_variance.csv"});
    std::cout << "wrote " << (dir / "pca.csv").string() << "\n";
}

std::vector<std::pair<double, double>> parse_grid(const std::string& text) {
    std::vector<std::pair<double, double>> grid;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        const std::string piece = text.substr(start, end - start);
        if (!piece.empty()) {
            const std::size_t colon = piece.find(':');
            if (colon == std::string::npos) {
                throw UsageError("ablate.grid entries must look like lambda_d:lambda_a, got '" +
                                 piece + "'");
            }
            try {
                std::size_t i1 = 0, i2 = 0;
                const double lambda_d = std::stod(piece.substr(0, colon), &i1);
                const double lambda_a = std::stod(piece.substr(colon + 1), &i2);
                if (i1 != colon || i2 != piece.size() - colon - 1) {
                    throw std::invalid_argument("trailing characters");
                }
                grid.emplace_back(lambda_d, lambda_a);
            } catch (const std::exception&) {
                throw UsageError("ablate.grid entries must look like lambda_d:lambda_a, got '" +
                                 piece + "'");
            }
        }
        if (end == text.size()) break;
        start = end + 1;
    }
    if (grid.empty()) throw UsageError("ablate.grid names no grid points");
    return grid;
}

void cmd_ablate(RunConfig& rc) {
    const Dataset ds = load_data_inferred(rc);
    const TrainConfig tc = train_config_from(rc);
    const auto [train_part, val_part] = split(ds, rc.real("train.split"), tc.seed);
    const FeaturePipeline pipeline = build_pipeline(rc, train_part);
    const std::vector<AblationRow> rows =
        lambda_ablation(train_part, val_part, pipeline, tc, parse_grid(rc.str("ablate.grid")));

    const fs::path dir = ensure_dir(rc.str("out"));
    write_ablation_csv(dir / "ablation.csv", rows);
    write_manifest(dir, rc.provenance(), {"ablation.csv"});
    std::cout << "wrote " << (dir / "ablation.csv").string() << " (" << rows.size()
              << " grid points)\n";
}

void cmd_crossval(RunConfig& rc) {
    const Dataset ds = load_data_inferred(rc);
    const TrainConfig tc = train_config_from(rc);

    std::map<std::string, Dataset> grouped;
    for (const auto& s : ds.samples) {
        Dataset& bucket = grouped[s.language];
        bucket.label_space = ds.label_space;
        bucket.samples.push_back(s);
    }
    std::vector<std::pair<std::string, Dataset>> by_language;
    for (auto& [lang, bucket] : grouped) {
        by_language.emplace_back(lang, std::move(bucket));
    }

    const std::vector<CrossLingualCell> cells =
        cross_lingual_matrix(by_language, feature_options_from(rc), tc);

    const fs::path dir = ensure_dir(rc.str("out"));
    write_cross_lingual_csv(dir / "crossval.csv", cells);
    write_manifest(dir, rc.provenance(), {"crossval.csv"});
    std::cout << "wrote " << (dir / "crossval.csv").string() << " (" << cells.size()
              << " cells)\n";
}

void cmd_attack(RunConfig& rc) {
    Checkpoint cp = load_model(rc);
    if (cp.model_kind == "mnb") {
        throw DataError("attack needs an encoder checkpoint (joint or softmax_regression)");
    }
    const Dataset ds = load_data(rc, cp.label_space);
    const ObfuscationConfig oc = obfuscation_config_from(rc);
    const std::uint64_t cap = rc.uint("attack.per_class_cap");
    if (cap == 0) throw UsageError("attack.per_class_cap must be at least 1");

    const std::string kind = rc.str("attack.kind");
    std::string attack_name = kind;
    AttackFn attack;
    std::unique_ptr<TranslatorAdapter> translator;

    if (kind == "identity") {
        attack = [](const TextSample& s, Rng&) { return std::optional<std::string>(s.text); };
    } else if (kind == "mutant_x") {
        const ModelParams& params = cp.params;
        const FeaturePipeline& pipeline = cp.pipeline;
        const LabelSpace& space = cp.label_space;
        attack = [&params, &pipeline, &space, oc](const TextSample& s,
                                                  Rng& rng) -> std::optional<std::string> {
            const auto idx = space.index_of(s.author);
            if (!idx) return std::nullopt;
            return mutant_x(s.text, params, pipeline, *idx, oc, rng).text;
        };
    } else if (kind == "backtranslate") {
        const std::string which = rc.str("attack.translator");
        if (which == "stub") {
            translator = std::make_unique<StubTranslator>();
        } else if (which == "command") {
            const std::string command = rc.str("attack.command");
            if (command.empty()) {
                throw UsageError("attack.translator=command requires attack.command");
            }
            translator = std::make_unique<CommandTranslator>(command);
        } else if (which == "http") {
            translator = std::make_unique<HttpTranslator>(
                rc.str("attack.host"), static_cast<int>(rc.uint("attack.port")),
                rc.str("attack.http_path"));
        } else {
            throw UsageError("attack.translator must be stub, command, or http, got '" + which +
                             "'");
        }
        attack_name = "backtranslate:" + translator->name();
        const std::string source = rc.str("attack.source_lang");
        const std::string pivot = rc.str("attack.pivot");
        TranslatorAdapter* adapter = translator.get();
        attack = [adapter, source, pivot](const TextSample& s,
                                          Rng&) -> std::optional<std::string> {
            try {
                return back_translate(s.text, *adapter, source, pivot);
            } catch (const DataError&) {
                return std::nullopt;  // transport failure: skip, do not fail the run
            }
        };
    } else {
        throw UsageError("attack.kind must be identity, mutant_x, or backtranslate, got '" +
                         kind + "'");
    }

    const RobustnessReport report =
        robustness_eval(cp.params, ds, cp.pipeline, attack_name, attack, oc, cap);

    const fs::path dir = ensure_dir(rc.str("out"));
    write_json_artifact(dir / "robustness.json", robustness_report_json(report),
                        rc.provenance());
    write_robustness_csv(dir / "robustness.csv", report);
    write_manifest(dir, rc.provenance(), {"robustness.json", "robustness.csv"});
    std::cout << "wrote " << (dir / "robustness.json").string() << "\n";
}

int run(int argc, const char* const* argv) {
    CLI::App app{"mgtkit: joint machine-text detection and attribution toolkit"};
    app.set_version_flag("--version", std::string("mgtkit ") + kToolkitVersion +
                                          " (checkpoint format " +
                                          std::to_string(kCheckpointFormatVersion) + ")");
    app.require_subcommand(1);

    std::deque<SubSpec> specs;
    auto make_sub = [&specs](CLI::App* parent, const std::string& name, const std::string& desc,
                             std::vector<std::string> keys,
                             std::function<void(RunConfig&)> handler) {
        specs.emplace_back();
        SubSpec& s = specs.back();
        s.app = parent->add_subcommand(name, desc);
        s.keys = std::move(keys);
        s.handler = std::move(handler);
        for (const auto& key : s.keys) {
            const KeySpec& ks = registry().at(key);
            s.app->add_option("--" + key, s.flag_storage[key], ks.help);
        }
        s.app->add_option("--config", s.config_path, "flat JSON configuration file");
    };

    make_sub(&app, "synth", "generate a synthetic benchmark corpus",
             concat_keys({"out", "threads"}, section_keys("synth.")), cmd_synth);
    make_sub(&app, "train", "fit a model and write a checkpoint",
             concat_keys({"data", "out", "embeddings", "threads", "human_class"},
                         concat_keys(section_keys("features."), section_keys("train."))),
             cmd_train);
    make_sub(&app, "eval", "score a checkpoint on a labeled dataset",
             {"data", "out", "model", "embeddings", "threads"}, cmd_eval);
    make_sub(&app, "predict", "score unlabeled JSONL text",
             {"data", "out", "model", "embeddings", "threads"}, cmd_predict);

    CLI::App* features_parent = app.add_subcommand("features", "feature analysis utilities");
    features_parent->require_subcommand(1);
    make_sub(features_parent, "rank", "rank features by chi-squared against the classes",
             concat_keys({"data", "out", "threads", "human_class"}, section_keys("features.")),
             cmd_features_rank);

    make_sub(&app, "pca", "project encoder representations onto principal components",
             {"data", "out", "model", "embeddings", "threads", "pca.components"}, cmd_pca);
    make_sub(&app, "ablate", "sweep the task-weight grid",
             concat_keys({"data", "out", "threads", "human_class", "ablate.grid"},
                         concat_keys(section_keys("features."), section_keys("train."))),
             cmd_ablate);
    make_sub(&app, "crossval", "train per language, evaluate across languages",
             concat_keys({"data", "out", "threads", "human_class"},
                         concat_keys(section_keys("features."), section_keys("train."))),
             cmd_crossval);
    make_sub(&app, "attack", "measure attribution robustness under an obfuscation attack",
             concat_keys({"data", "out", "model", "embeddings", "threads"},
                         section_keys("attack.")),
             cmd_attack);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help() << std::flush;
        return 1;
    }

    for (auto& spec : specs) {
        if (!spec.app->parsed()) continue;
        RunConfig rc = resolve_config(spec);
        spec.handler(rc);
        return 0;
    }
    return 0;  // unreachable: require_subcommand guarantees a match
}

}  // namespace

int dispatch(int argc, const char* const* argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 3;
    }
}

}  // namespace mgtkit::cli
