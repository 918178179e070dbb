#include "mgtkit/artifacts.hpp"

#include "mgtkit/checkpoint.hpp"
#include "mgtkit/csv.hpp"
#include "mgtkit/digest.hpp"
#include "mgtkit/errors.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <utility>

namespace mgtkit {

namespace {

void dump_to_file(const std::filesystem::path& path, const nlohmann::json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot open '" + path.string() + "' for writing");
    }
    out << j.dump(2) << '\n';
    if (!out) {
        throw DataError("failed while writing '" + path.string() + "'");
    }
}

}  // namespace

nlohmann::json provenance_json(const Provenance& prov) {
    nlohmann::json j;
    j["format_version"] = kCheckpointFormatVersion;
    j["toolkit_version"] = kToolkitVersion;
    j["config"] = prov.config.is_null() ? nlohmann::json::object() : prov.config;
    j["inputs"] = prov.inputs;
    return j;
}

void write_json_artifact(const std::filesystem::path& path, const nlohmann::json& payload,
                         const Provenance& prov) {
    if (!payload.is_object()) {
        throw DataError("JSON artifact payload for '" + path.string() + "' must be an object");
    }
    nlohmann::json j = provenance_json(prov);
    for (const auto& [key, value] : payload.items()) {
        j[key] = value;
    }
    dump_to_file(path, j);
}

std::string iso8601_utc_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

void write_manifest(const std::filesystem::path& out_dir, const Provenance& prov,
                    const std::vector<std::string>& files) {
    nlohmann::json j = provenance_json(prov);
    j["generated_at"] = iso8601_utc_now();
    nlohmann::json outputs = nlohmann::json::object();
    for (const auto& name : files) {
        outputs[name] = digest_file((out_dir / name).string());
    }
    j["outputs"] = std::move(outputs);
    dump_to_file(out_dir / "manifest.json", j);
}

nlohmann::json task_metrics_json(const TaskMetrics& tm) {
    nlohmann::json j;
    j["macro_f1"] = tm.macro_f1;
    j["accuracy"] = tm.accuracy;
    j["classes"] = tm.matrix.class_names;
    nlohmann::json confusion = nlohmann::json::array();
    for (std::size_t t = 0; t < tm.matrix.num_classes; ++t) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t p = 0; p < tm.matrix.num_classes; ++p) {
            row.push_back(tm.matrix.at(t, p));
        }
        confusion.push_back(std::move(row));
    }
    j["confusion"] = std::move(confusion);
    nlohmann::json per_class = nlohmann::json::array();
    for (std::size_t c = 0; c < tm.per_class.size(); ++c) {
        nlohmann::json pc;
        pc["class"] = c < tm.matrix.class_names.size() ? tm.matrix.class_names[c]
                                                       : std::to_string(c);
        pc["precision"] = tm.per_class[c].precision;
        pc["recall"] = tm.per_class[c].recall;
        pc["f1"] = tm.per_class[c].f1;
        per_class.push_back(std::move(pc));
    }
    j["per_class"] = std::move(per_class);
    return j;
}

nlohmann::json metrics_report_json(const MetricsReport& report) {
    nlohmann::json j;
    j["num_samples"] = report.num_samples;
    j["dataset_id"] = report.dataset_id;
    j["checkpoint_id"] = report.checkpoint_id;
    j["detection"] = task_metrics_json(report.detection);
    j["attribution"] = task_metrics_json(report.attribution);
    return j;
}

nlohmann::json robustness_report_json(const RobustnessReport& report) {
    nlohmann::json j;
    j["attack"] = report.attack_name;
    j["mean_similarity"] = report.mean_similarity;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.per_class) {
        nlohmann::json rj;
        rj["class"] = row.class_name;
        rj["absent"] = row.absent;
        rj["evaluated"] = row.evaluated;
        rj["skipped"] = row.skipped;
        rj["rejected"] = row.rejected;
        rj["original_accuracy"] = row.original_accuracy;
        rj["attacked_accuracy"] = row.attacked_accuracy;
        rj["delta"] = row.delta;
        rj["mean_similarity"] = row.mean_similarity;
        rows.push_back(std::move(rj));
    }
    j["per_class"] = std::move(rows);
    return j;
}

void write_history_csv(const std::filesystem::path& path,
                       const std::vector<EpochRecord>& history) {
    CsvWriter csv(path.string(), {"epoch", "loss_detection", "loss_attribution", "val_detection_f1",
                                  "val_attribution_f1", "learning_rate"});
    for (const auto& r : history) {
        csv.row({std::to_string(r.epoch), format_double(r.mean_loss_d),
                 format_double(r.mean_loss_a), format_double(r.val_detection_f1),
                 format_double(r.val_attribution_f1), format_double(r.learning_rate)});
    }
    csv.close();
}

void write_confusion_csv(const std::filesystem::path& path, const ConfusionMatrix& matrix) {
    std::vector<std::string> header{"truth"};
    for (std::size_t p = 0; p < matrix.num_classes; ++p) {
        header.push_back(p < matrix.class_names.size() ? matrix.class_names[p]
                                                       : std::to_string(p));
    }
    CsvWriter csv(path.string(), header);
    for (std::size_t t = 0; t < matrix.num_classes; ++t) {
        std::vector<std::string> row{header[t + 1]};
        for (std::size_t p = 0; p < matrix.num_classes; ++p) {
            row.push_back(std::to_string(matrix.at(t, p)));
        }
        csv.row(row);
    }
    csv.close();
}

void write_pca_csv(const std::filesystem::path& path, const PcaResult& pca,
                   const std::vector<std::string>& ids, const std::vector<std::string>& labels) {
    if (ids.size() != pca.coordinates.rows || labels.size() != pca.coordinates.rows) {
        throw DataError("PCA ids/labels do not match the number of projected rows");
    }
    std::vector<std::string> header{"id", "label"};
    for (std::size_t c = 0; c < pca.coordinates.cols; ++c) {
        header.push_back("pc" + std::to_string(c + 1));
    }
    CsvWriter csv(path.string(), header);
    for (std::size_t i = 0; i < pca.coordinates.rows; ++i) {
        std::vector<std::string> row{ids[i], labels[i]};
        for (std::size_t c = 0; c < pca.coordinates.cols; ++c) {
            row.push_back(format_double(pca.coordinates(i, c)));
        }
        csv.row(row);
    }
    csv.close();
}

void write_ablation_csv(const std::filesystem::path& path, const std::vector<AblationRow>& rows) {
    CsvWriter csv(path.string(),
                  {"lambda_d", "lambda_a", "detection_f1", "attribution_f1", "best_epoch"});
    for (const auto& r : rows) {
        csv.row({format_double(r.lambda_d), format_double(r.lambda_a),
                 format_double(r.detection_f1), format_double(r.attribution_f1),
                 std::to_string(r.best_epoch)});
    }
    csv.close();
}

void write_cross_lingual_csv(const std::filesystem::path& path,
                             const std::vector<CrossLingualCell>& cells) {
    CsvWriter csv(path.string(), {"source", "target", "detection_f1", "attribution_f1"});
    for (const auto& c : cells) {
        csv.row({c.source, c.target, format_double(c.detection_f1),
                 format_double(c.attribution_f1)});
    }
    csv.close();
}

void write_robustness_csv(const std::filesystem::path& path, const RobustnessReport& report) {
    CsvWriter csv(path.string(),
                  {"attack", "class", "evaluated", "skipped", "rejected", "original_accuracy",
                   "attacked_accuracy", "delta", "mean_similarity"});
    for (const auto& row : report.per_class) {
        if (row.absent) continue;
        csv.row({report.attack_name, row.class_name, std::to_string(row.evaluated),
                 std::to_string(row.skipped), std::to_string(row.rejected),
                 format_double(row.original_accuracy), format_double(row.attacked_accuracy),
                 format_double(row.delta), format_double(row.mean_similarity)});
    }
    csv.close();
}

void write_feature_rank_csv(const std::filesystem::path& path,
                            const std::vector<ChiSquaredEntry>& ranked,
                            const std::vector<std::string>& feature_names) {
    CsvWriter csv(path.string(), {"rank", "feature_index", "feature", "chi_squared"});
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        const auto& e = ranked[i];
        const std::string name =
            e.feature < feature_names.size() ? feature_names[e.feature] : std::to_string(e.feature);
        csv.row({std::to_string(i + 1), std::to_string(e.feature), name,
                 format_double(e.statistic)});
    }
    csv.close();
}

}  // namespace mgtkit
