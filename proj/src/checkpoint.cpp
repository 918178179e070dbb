#include "mgtkit/checkpoint.hpp"

#include "mgtkit/errors.hpp"
#include "mgtkit/features.hpp"

#include <fstream>
#include <utility>

namespace mgtkit {

namespace {

nlohmann::json vec_to_json(const Vec& v) {
    return nlohmann::json(v);
}

Vec vec_from_json(const nlohmann::json& j) {
    return j.get<Vec>();
}

nlohmann::json mat_to_json(const Mat& m) {
    nlohmann::json j;
    j["rows"] = m.rows;
    j["cols"] = m.cols;
    j["data"] = m.a;
    return j;
}

Mat mat_from_json(const nlohmann::json& j) {
    Mat m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
    m.a = j.at("data").get<Vec>();
    if (m.a.size() != m.rows * m.cols) {
        throw DataError("matrix data length does not match rows*cols");
    }
    return m;
}

nlohmann::json params_to_json(const ModelParams& p) {
    nlohmann::json j;
    j["input_dim"] = p.input_dim;
    j["encoder_dim"] = p.encoder_dim;
    j["num_classes"] = p.num_classes;
    j["dropout_rate"] = p.dropout_rate;
    nlohmann::json layers = nlohmann::json::array();
    for (const auto& layer : p.encoder) {
        nlohmann::json lj;
        lj["weight"] = mat_to_json(layer.weight);
        lj["bias"] = vec_to_json(layer.bias);
        lj["activation"] = activation_name(layer.activation);
        layers.push_back(std::move(lj));
    }
    j["encoder"] = std::move(layers);
    j["w_d"] = vec_to_json(p.w_d);
    j["b_d"] = p.b_d;
    j["w_a"] = mat_to_json(p.w_a);
    j["b_a"] = vec_to_json(p.b_a);
    return j;
}

ModelParams params_from_json(const nlohmann::json& j) {
    ModelParams p;
    p.input_dim = j.at("input_dim").get<std::size_t>();
    p.encoder_dim = j.at("encoder_dim").get<std::size_t>();
    p.num_classes = j.at("num_classes").get<std::size_t>();
    p.dropout_rate = j.at("dropout_rate").get<double>();
    for (const auto& lj : j.at("encoder")) {
        EncoderLayer layer{Mat(0, 0), Vec{}, Activation::Linear};
        layer.weight = mat_from_json(lj.at("weight"));
        layer.bias = vec_from_json(lj.at("bias"));
        layer.activation = activation_from_name(lj.at("activation").get<std::string>());
        p.encoder.push_back(std::move(layer));
    }
    p.w_d = vec_from_json(j.at("w_d"));
    p.b_d = j.at("b_d").get<double>();
    p.w_a = mat_from_json(j.at("w_a"));
    p.b_a = vec_from_json(j.at("b_a"));
    return p;
}

nlohmann::json mnb_to_json(const MnbModel& m) {
    nlohmann::json j;
    j["alpha"] = m.alpha;
    j["log_priors"] = vec_to_json(m.log_priors);
    j["log_likelihood"] = mat_to_json(m.log_likelihood);
    return j;
}

MnbModel mnb_from_json(const nlohmann::json& j) {
    MnbModel m;
    m.alpha = j.at("alpha").get<double>();
    m.log_priors = vec_from_json(j.at("log_priors"));
    m.log_likelihood = mat_from_json(j.at("log_likelihood"));
    return m;
}

nlohmann::json pipeline_to_json(const FeaturePipeline& p) {
    nlohmann::json j;
    j["schema_id"] = p.schema_id;
    if (p.mode == FeaturePipeline::Mode::External) {
        j["mode"] = "external";
        j["embedding_dim"] = p.embeddings.dim;
    } else {
        j["mode"] = "tfidf_stylo";
        nlohmann::json vj;
        vj["terms"] = p.vocab.terms;
        vj["doc_freq"] = p.vocab.doc_freq;
        vj["n_docs"] = p.vocab.n_docs;
        j["vocab"] = std::move(vj);
        nlohmann::json sj;
        sj["mean"] = p.scaler.mean;
        sj["stddev"] = p.scaler.stddev;
        j["scaler"] = std::move(sj);
    }
    return j;
}

FeaturePipeline pipeline_from_json(const nlohmann::json& j) {
    FeaturePipeline p;
    p.schema_id = j.at("schema_id").get<std::string>();
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "external") {
        p.mode = FeaturePipeline::Mode::External;
        p.embeddings.dim = j.at("embedding_dim").get<std::size_t>();
        return p;
    }
    if (mode != "tfidf_stylo") {
        throw DataError("unknown feature pipeline mode '" + mode + "'");
    }
    p.mode = FeaturePipeline::Mode::TfidfStylo;
    p.vocab = rebuild_vocabulary(j.at("vocab").at("terms").get<std::vector<std::string>>(),
                                 j.at("vocab").at("doc_freq").get<std::vector<std::size_t>>(),
                                 j.at("vocab").at("n_docs").get<std::size_t>());
    p.scaler.mean = j.at("scaler").at("mean").get<Vec>();
    p.scaler.stddev = j.at("scaler").at("stddev").get<Vec>();
    if (p.scaler.mean.size() != p.scaler.stddev.size()) {
        throw DataError("scaler mean/stddev length mismatch");
    }
    return p;
}

}  // namespace

nlohmann::json checkpoint_to_json(const Checkpoint& cp) {
    nlohmann::json j;
    j["format_version"] = kCheckpointFormatVersion;
    j["toolkit_version"] = kToolkitVersion;
    j["model_kind"] = cp.model_kind;
    j["label_space"] = {{"classes", cp.label_space.classes},
                        {"human_index", cp.label_space.human_index}};
    j["pipeline"] = pipeline_to_json(cp.pipeline);
    if (cp.model_kind == "mnb") {
        j["model"] = mnb_to_json(cp.mnb);
    } else {
        j["model"] = params_to_json(cp.params);
    }
    j["config"] = cp.config.is_null() ? nlohmann::json::object() : cp.config;
    j["inputs"] = cp.input_digests;
    return j;
}

Checkpoint checkpoint_from_json(const nlohmann::json& j, const std::string& source_name) {
    try {
        if (!j.contains("format_version")) {
            throw DataError("missing format_version");
        }
        const int version = j.at("format_version").get<int>();
        if (version != kCheckpointFormatVersion) {
            throw DataError("unsupported checkpoint format_version " + std::to_string(version) +
                            " (expected " + std::to_string(kCheckpointFormatVersion) + ")");
        }
        Checkpoint cp;
        cp.model_kind = j.at("model_kind").get<std::string>();
        if (cp.model_kind != "joint" && cp.model_kind != "softmax_regression" &&
            cp.model_kind != "mnb") {
            throw DataError("unknown model_kind '" + cp.model_kind + "'");
        }
        cp.label_space.classes = j.at("label_space").at("classes").get<std::vector<std::string>>();
        cp.label_space.human_index = j.at("label_space").at("human_index").get<std::size_t>();
        cp.label_space.validate();
        cp.pipeline = pipeline_from_json(j.at("pipeline"));
        if (cp.model_kind == "mnb") {
            cp.mnb = mnb_from_json(j.at("model"));
        } else {
            cp.params = params_from_json(j.at("model"));
        }
        if (j.contains("config")) {
            cp.config = j.at("config");
        }
        if (j.contains("inputs")) {
            cp.input_digests = j.at("inputs").get<std::map<std::string, std::string>>();
        }
        return cp;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(source_name + ": malformed checkpoint: " + e.what());
    }
}

void save_checkpoint(const Checkpoint& cp, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot open '" + path + "' for writing");
    }
    out << checkpoint_to_json(cp).dump(2) << '\n';
    if (!out) {
        throw DataError("failed while writing '" + path + "'");
    }
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open checkpoint '" + path + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path + ": invalid JSON: " + e.what());
    }
    return checkpoint_from_json(j, path);
}

}  // namespace mgtkit
