#pragma once

#include "mgtkit/corpus.hpp"
#include "mgtkit/metrics.hpp"
#include "mgtkit/model.hpp"
#include "mgtkit/pipeline.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace mgtkit {

// How human-written samples enter the attribution loss: as a class of their
// own (the default, matching the baseline protocol) or masked out.
enum class HumanAttribMode { Class, Masked };

// Early-stopping / checkpoint-selection score.
enum class ScoreMetric { MeanF1, DetectionF1, AttributionF1 };

struct TrainConfig {
    // 1e-3 suits the feature MLP; 1e-5 mirrors the reference setting for
    // fine-tuning precomputed-embedding heads.
    double learning_rate = 1e-3;
    double lambda_d = 0.5;
    double lambda_a = 0.5;
    std::size_t batch_size = 32;
    std::size_t max_epochs = 30;
    double weight_decay = 0.01;
    double dropout = 0.5;
    std::size_t patience = 6;
    std::uint64_t seed = 42;
    bool pcgrad = false;
    HumanAttribMode human_attrib_mode = HumanAttribMode::Class;
    ScoreMetric score_metric = ScoreMetric::MeanF1;

    // Encoder shape (ignored in pass-through mode).
    std::vector<std::size_t> hidden_dims{256};
    std::size_t encoder_dim = 64;
    Activation activation = Activation::Tanh;

    // Throws UsageError on invalid settings.
    void validate() const;
};

// AdamW accumulators; constants beta1 0.9, beta2 0.999, eps 1e-8.
struct OptimizerState {
    Gradients m;
    Gradients v;
    std::size_t step = 0;

    static OptimizerState zeros_like(const ModelParams& params);
};

struct EpochRecord {
    std::size_t epoch = 0;  // 1-based
    double mean_loss_d = 0.0;
    double mean_loss_a = 0.0;
    double val_detection_f1 = 0.0;
    double val_attribution_f1 = 0.0;
    double learning_rate = 0.0;

    double score(ScoreMetric metric) const;
};

// Mean binary cross-entropy; probabilities are clamped to
// [1e-12, 1 - 1e-12] before the logs.
double detection_loss(const std::vector<double>& p, const std::vector<int>& y);

// Mean categorical cross-entropy over unmasked rows. `masked` may be empty
// (nothing masked); throws DataError when every row is masked.
double attribution_loss(const std::vector<Vec>& rows, const std::vector<std::size_t>& y,
                        const std::vector<char>& masked = {});

// Feature matrix plus both task labels, materialized once before training.
struct TrainingData {
    std::vector<Vec> x;
    std::vector<int> y_detect;            // 1 = machine-generated
    std::vector<std::size_t> y_attrib;
    std::vector<char> attrib_masked;      // 1 = excluded from attribution loss
    std::size_t input_dim = 0;
    std::size_t num_classes = 0;

    std::size_t size() const { return x.size(); }
};

TrainingData build_training_data(const Dataset& dataset, const FeaturePipeline& pipeline,
                                 HumanAttribMode mode);

// Per-task gradients over every parameter from one batch, computed with one
// shared forward pass (and dropout mask) per sample.
struct BatchGradients {
    Gradients g_d;
    Gradients g_a;
    double loss_d = 0.0;
    double loss_a = 0.0;
};

BatchGradients backward(const TrainingData& data, const std::vector<std::size_t>& batch,
                        const ModelParams& params, bool train_mode, Rng& rng);

// lambda_d * g_d + lambda_a * g_a. With pcgrad enabled and a negative
// gradient dot product, each gradient is first projected off the other's
// original direction; a zero-norm counterpart skips that projection.
Gradients combine_gradients(const Gradients& g_d, const Gradients& g_a, const TrainConfig& config);

// Decoupled-weight-decay Adam step with bias correction. The effective rate
// is learning_rate * (1 - epoch / max_epochs) with `epoch` 0-based, linear
// decay without warmup; decay applies to weights only.
void adamw_step(ModelParams& params, Gradients& g, OptimizerState& state,
                const TrainConfig& config, std::size_t epoch);

// Patience rule on 1-based epochs: stop once the score has not strictly
// increased for `patience` consecutive observations.
struct EarlyStopper {
    explicit EarlyStopper(std::size_t patience) : patience_(patience) {}

    // Returns true when training should stop after this observation.
    bool observe(double score);
    std::size_t best_index() const { return best_index_; }  // 1-based
    double best_score() const { return best_score_; }

  private:
    std::size_t patience_;
    double best_score_ = -1.0;
    std::size_t best_index_ = 0;
    std::size_t since_improvement_ = 0;
    std::size_t observed_ = 0;
};

struct TrainResult {
    ModelParams best;
    std::vector<EpochRecord> history;
    std::size_t best_epoch = 0;  // 1-based
    double best_score = 0.0;
};

// Core loop over pre-vectorized data. `pass_through` skips the MLP encoder
// (h = x). Batches where every sample is attribution-masked contribute a
// zero attribution gradient rather than an error.
TrainResult train_on_data(const TrainingData& train, const TrainingData& val,
                          const TrainConfig& config, bool pass_through);

// Fits features through `pipeline`, then trains. External-embedding
// pipelines get the pass-through encoder.
TrainResult train(const Dataset& train_set, const Dataset& val_set,
                  const FeaturePipeline& pipeline, const TrainConfig& config);

}  // namespace mgtkit
