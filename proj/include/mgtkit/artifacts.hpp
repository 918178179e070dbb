#pragma once

#include "mgtkit/evaluation.hpp"
#include "mgtkit/features.hpp"
#include "mgtkit/obfuscation.hpp"
#include "mgtkit/training.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace mgtkit {

// Shared provenance attached to every artifact: the resolved run
// configuration and content digests of the input files. JSON artifacts embed
// it directly; CSV artifacts inherit it from the manifest.json written next
// to them.
struct Provenance {
    nlohmann::json config = nlohmann::json::object();
    std::map<std::string, std::string> inputs;  // label or path -> content digest
};

nlohmann::json provenance_json(const Provenance& prov);

// Writes `payload` (must be a JSON object) merged with the provenance block
// as indented JSON with a trailing newline. Deterministic: keys are emitted
// in sorted order and doubles in shortest round-trip form.
void write_json_artifact(const std::filesystem::path& path, const nlohmann::json& payload,
                         const Provenance& prov);

std::string iso8601_utc_now();

// Writes <out_dir>/manifest.json listing every produced file with its
// content digest. The manifest is the only artifact carrying a timestamp,
// so repeated runs with the same seed stay byte-identical elsewhere.
void write_manifest(const std::filesystem::path& out_dir, const Provenance& prov,
                    const std::vector<std::string>& files);

nlohmann::json task_metrics_json(const TaskMetrics& tm);
nlohmann::json metrics_report_json(const MetricsReport& report);
nlohmann::json robustness_report_json(const RobustnessReport& report);

void write_history_csv(const std::filesystem::path& path, const std::vector<EpochRecord>& history);
void write_confusion_csv(const std::filesystem::path& path, const ConfusionMatrix& matrix);
// One row per input point: id, label, then pc1..pck coordinates.
void write_pca_csv(const std::filesystem::path& path, const PcaResult& pca,
                   const std::vector<std::string>& ids, const std::vector<std::string>& labels);
void write_ablation_csv(const std::filesystem::path& path, const std::vector<AblationRow>& rows);
void write_cross_lingual_csv(const std::filesystem::path& path,
                             const std::vector<CrossLingualCell>& cells);
void write_robustness_csv(const std::filesystem::path& path, const RobustnessReport& report);
void write_feature_rank_csv(const std::filesystem::path& path,
                            const std::vector<ChiSquaredEntry>& ranked,
                            const std::vector<std::string>& feature_names);

}  // namespace mgtkit
