#pragma once

#include "mgtkit/baselines.hpp"
#include "mgtkit/corpus.hpp"
#include "mgtkit/model.hpp"
#include "mgtkit/pipeline.hpp"

#include <json.hpp>

#include <map>
#include <string>

namespace mgtkit {

inline constexpr int kCheckpointFormatVersion = 1;
inline constexpr const char* kToolkitVersion = "0.1.0";

// Serialized model envelope. `model_kind` selects which of the model fields
// is meaningful: "joint" and "softmax_regression" use `params`, "mnb" uses
// `mnb`. The feature pipeline travels with the model so a checkpoint alone
// can score raw text (external-embedding pipelines store only their shape;
// the embedding file must be supplied again at load time).
struct Checkpoint {
    std::string model_kind = "joint";
    ModelParams params;
    MnbModel mnb;
    FeaturePipeline pipeline;
    LabelSpace label_space;
    nlohmann::json config;                            // resolved run configuration
    std::map<std::string, std::string> input_digests;  // input label -> content digest
};

nlohmann::json checkpoint_to_json(const Checkpoint& cp);
Checkpoint checkpoint_from_json(const nlohmann::json& j, const std::string& source_name);

// Writes the checkpoint as indented JSON (stable key order, one trailing
// newline), so identical checkpoints are byte-identical files.
void save_checkpoint(const Checkpoint& cp, const std::string& path);

// Throws DataError on malformed files or unknown format versions.
Checkpoint load_checkpoint(const std::string& path);

}  // namespace mgtkit
