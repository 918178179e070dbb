#pragma once

#include "mgtkit/corpus.hpp"
#include "mgtkit/linalg.hpp"
#include "mgtkit/metrics.hpp"
#include "mgtkit/model.hpp"
#include "mgtkit/pipeline.hpp"
#include "mgtkit/training.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace mgtkit {

struct TaskMetrics {
    double macro_f1 = 0.0;
    double accuracy = 0.0;
    ConfusionMatrix matrix;
    std::vector<PerClassMetrics> per_class;
};

struct MetricsReport {
    TaskMetrics detection;    // classes: human, machine
    TaskMetrics attribution;  // label-space classes
    std::size_t num_samples = 0;
    std::string dataset_id;
    std::string checkpoint_id;
};

// Confusion matrix plus derived scores for one prediction/truth pairing.
TaskMetrics task_metrics(const std::vector<std::size_t>& preds,
                         const std::vector<std::size_t>& truth, std::size_t num_classes,
                         std::vector<std::string> class_names);

// Runs one eval-mode forward pass per sample and scores both tasks.
// Detection truth comes from the label space's human class.
MetricsReport evaluate(const ModelParams& params, const Dataset& dataset,
                       const FeaturePipeline& pipeline);

struct PcaResult {
    Mat coordinates;        // N x k
    Mat components;         // k x d, rows are unit eigenvectors
    Vec mean;               // column means of the input
    Vec variance_fraction;  // eigenvalue / total variance, non-increasing
};

// Top-k principal components via power iteration with deflation
// (tolerance 1e-10, at most 10,000 iterations per component; throws
// NumericError with the iteration count on non-convergence). Sign
// convention: each eigenvector's largest-magnitude entry is positive.
PcaResult pca_project(const Mat& h, std::size_t k);

// Encoder outputs of every sample (eval mode), one row per sample.
Mat encode_dataset(const ModelParams& params, const Dataset& dataset,
                   const FeaturePipeline& pipeline);

struct AblationRow {
    double lambda_d = 0.0;
    double lambda_a = 0.0;
    double detection_f1 = 0.0;
    double attribution_f1 = 0.0;
    std::size_t best_epoch = 0;
};

// One full training run per (lambda_d, lambda_a) grid point with the same
// seed, scored on the validation set.
std::vector<AblationRow> lambda_ablation(const Dataset& train_set, const Dataset& val_set,
                                         const FeaturePipeline& pipeline, const TrainConfig& base,
                                         const std::vector<std::pair<double, double>>& grid);

struct CrossLingualCell {
    std::string source;
    std::string target;
    double detection_f1 = 0.0;
    double attribution_f1 = 0.0;
};

// Train-on-one/evaluate-on-all grid: for each source language the corpus is
// split 80/20, a pipeline and model are fitted on the train part, and every
// language's validation part is scored. Requires at least two languages
// sharing one label space.
std::vector<CrossLingualCell> cross_lingual_matrix(
    const std::vector<std::pair<std::string, Dataset>>& by_language,
    const FeatureOptions& features, const TrainConfig& config);

}  // namespace mgtkit
