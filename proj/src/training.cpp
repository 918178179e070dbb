#include "mgtkit/training.hpp"

#include "mgtkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mgtkit {

namespace {

constexpr double kProbEps = 1e-12;
constexpr double kBeta1 = 0.9;
constexpr double kBeta2 = 0.999;
constexpr double kAdamEps = 1e-8;

double activation_derivative(Activation a, double z) {
    switch (a) {
        case Activation::Linear: return 1.0;
        case Activation::Tanh: {
            const double t = std::tanh(z);
            return 1.0 - t * t;
        }
        case Activation::Relu: return z > 0.0 ? 1.0 : 0.0;
    }
    return 1.0;
}

// Backpropagates dL/dh through the encoder, accumulating into `g`.
void backprop_encoder(const ModelParams& params, const ForwardCache& cache, Vec delta,
                      Gradients& g) {
    for (std::size_t li = params.encoder.size(); li-- > 0;) {
        const EncoderLayer& layer = params.encoder[li];
        if (!cache.drop_masks.empty()) {
            for (std::size_t j = 0; j < delta.size(); ++j) delta[j] *= cache.drop_masks[li][j];
        }
        for (std::size_t j = 0; j < delta.size(); ++j) {
            delta[j] *= activation_derivative(layer.activation, cache.pre_acts[li][j]);
        }
        add_outer(g.enc_w[li], delta, cache.inputs[li]);
        axpy(1.0, delta, g.enc_b[li]);
        if (li > 0) delta = matvec_transposed(layer.weight, delta);
    }
}

}  // namespace

void TrainConfig::validate() const {
    if (learning_rate <= 0.0) throw UsageError("learning_rate must be positive");
    if (lambda_d < 0.0 || lambda_a < 0.0) throw UsageError("loss weights must be nonnegative");
    if (lambda_d + lambda_a <= 0.0) throw UsageError("lambda_d + lambda_a must be positive");
    if (batch_size == 0) throw UsageError("batch_size must be positive");
    if (max_epochs == 0) throw UsageError("max_epochs must be positive");
    if (weight_decay < 0.0) throw UsageError("weight_decay must be nonnegative");
    if (dropout < 0.0 || dropout >= 1.0) throw UsageError("dropout must lie in [0, 1)");
    if (patience == 0) throw UsageError("patience must be at least 1");
}

OptimizerState OptimizerState::zeros_like(const ModelParams& params) {
    OptimizerState s;
    s.m = Gradients::zeros_like(params);
    s.v = Gradients::zeros_like(params);
    return s;
}

double EpochRecord::score(ScoreMetric metric) const {
    switch (metric) {
        case ScoreMetric::MeanF1: return 0.5 * (val_detection_f1 + val_attribution_f1);
        case ScoreMetric::DetectionF1: return val_detection_f1;
        case ScoreMetric::AttributionF1: return val_attribution_f1;
    }
    return 0.0;
}

double detection_loss(const std::vector<double>& p, const std::vector<int>& y) {
    if (p.empty()) throw DataError("detection loss of an empty batch");
    if (p.size() != y.size()) throw DataError("probability and label counts differ");
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double pi = std::clamp(p[i], kProbEps, 1.0 - kProbEps);
        sum += y[i] == 1 ? -std::log(pi) : -std::log(1.0 - pi);
    }
    return sum / static_cast<double>(p.size());
}

double attribution_loss(const std::vector<Vec>& rows, const std::vector<std::size_t>& y,
                        const std::vector<char>& masked) {
    if (rows.empty()) throw DataError("attribution loss of an empty batch");
    if (rows.size() != y.size()) throw DataError("probability rows and label counts differ");
    if (!masked.empty() && masked.size() != rows.size()) {
        throw DataError("mask length does not match batch size");
    }
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!masked.empty() && masked[i]) continue;
        if (y[i] >= rows[i].size()) throw DataError("class index out of range");
        sum += -std::log(std::clamp(rows[i][y[i]], kProbEps, 1.0 - kProbEps));
        ++n;
    }
    if (n == 0) throw DataError("every sample in the batch is attribution-masked");
    return sum / static_cast<double>(n);
}

TrainingData build_training_data(const Dataset& dataset, const FeaturePipeline& pipeline,
                                 HumanAttribMode mode) {
    TrainingData data;
    data.input_dim = pipeline.dim();
    data.num_classes = dataset.label_space.num_classes();
    data.x.reserve(dataset.size());
    for (const auto& s : dataset.samples) {
        data.x.push_back(pipeline.transform(s).values);
        const std::size_t c = dataset.class_index(s);
        data.y_attrib.push_back(c);
        data.y_detect.push_back(detection_label(s, dataset.label_space));
        data.attrib_masked.push_back(
            mode == HumanAttribMode::Masked && c == dataset.label_space.human_index ? 1 : 0);
    }
    return data;
}

BatchGradients backward(const TrainingData& data, const std::vector<std::size_t>& batch,
                        const ModelParams& params, bool train_mode, Rng& rng) {
    if (batch.empty()) throw DataError("cannot backpropagate an empty batch");

    BatchGradients out;
    out.g_d = Gradients::zeros_like(params);
    out.g_a = Gradients::zeros_like(params);

    const double n_det = static_cast<double>(batch.size());
    std::size_t n_att = 0;
    for (std::size_t idx : batch) {
        if (!data.attrib_masked[idx]) ++n_att;
    }

    for (std::size_t idx : batch) {
        const ForwardCache cache = forward_sample(data.x[idx], params, train_mode, rng);

        // Detection task: mean BCE over the batch.
        const double y_d = static_cast<double>(data.y_detect[idx]);
        out.loss_d += (data.y_detect[idx] == 1 ? -std::log(cache.p_d) : -std::log(1.0 - cache.p_d)) / n_det;
        const double dz_d = (cache.p_d - y_d) / n_det;
        axpy(dz_d, cache.h, out.g_d.w_d);
        out.g_d.b_d += dz_d;
        Vec delta_d(params.encoder_dim);
        for (std::size_t j = 0; j < delta_d.size(); ++j) delta_d[j] = dz_d * params.w_d[j];
        backprop_encoder(params, cache, std::move(delta_d), out.g_d);

        // Attribution task: mean CCE over unmasked samples.
        if (!data.attrib_masked[idx] && n_att > 0) {
            const std::size_t y_a = data.y_attrib[idx];
            out.loss_a += -std::log(std::clamp(cache.p_a[y_a], kProbEps, 1.0)) / static_cast<double>(n_att);
            Vec dz_a = cache.p_a;
            dz_a[y_a] -= 1.0;
            for (double& v : dz_a) v /= static_cast<double>(n_att);
            add_outer(out.g_a.w_a, dz_a, cache.h);
            axpy(1.0, dz_a, out.g_a.b_a);
            Vec delta_a = matvec_transposed(params.w_a, dz_a);
            backprop_encoder(params, cache, std::move(delta_a), out.g_a);
        }
    }
    return out;
}

Gradients combine_gradients(const Gradients& g_d, const Gradients& g_a, const TrainConfig& config) {
    Gradients gd = g_d;
    Gradients ga = g_a;
    if (config.pcgrad) {
        const double dp = g_d.dot(g_a);
        if (dp < 0.0) {
            // Project each gradient off the other's original direction.
            const double norm_a = g_a.norm_sq();
            const double norm_d = g_d.norm_sq();
            if (norm_a > 0.0) gd.add_scaled(g_a, -dp / norm_a);
            if (norm_d > 0.0) ga.add_scaled(g_d, -dp / norm_d);
        }
    }
    gd.scale(config.lambda_d);
    gd.add_scaled(ga, config.lambda_a);
    return gd;
}

void adamw_step(ModelParams& params, Gradients& g, OptimizerState& state,
                const TrainConfig& config, std::size_t epoch) {
    state.step += 1;
    const double progress = static_cast<double>(epoch) / static_cast<double>(config.max_epochs);
    const double lr = config.learning_rate * (1.0 - progress);
    const double bc1 = 1.0 - std::pow(kBeta1, static_cast<double>(state.step));
    const double bc2 = 1.0 - std::pow(kBeta2, static_cast<double>(state.step));

    auto pb = params.blocks();
    auto gb = g.blocks();
    auto mb = state.m.blocks();
    auto vb = state.v.blocks();
    for (std::size_t b = 0; b < pb.size(); ++b) {
        for (std::size_t k = 0; k < pb[b].size; ++k) {
            const double grad = gb[b].data[k];
            double& m = mb[b].data[k];
            double& v = vb[b].data[k];
            m = kBeta1 * m + (1.0 - kBeta1) * grad;
            v = kBeta2 * v + (1.0 - kBeta2) * grad * grad;
            const double m_hat = m / bc1;
            const double v_hat = v / bc2;
            double& p = pb[b].data[k];
            const double decay = pb[b].is_bias ? 0.0 : config.weight_decay * p;
            p -= lr * (m_hat / (std::sqrt(v_hat) + kAdamEps) + decay);
        }
    }
}

bool EarlyStopper::observe(double score) {
    ++observed_;
    if (score > best_score_) {
        best_score_ = score;
        best_index_ = observed_;
        since_improvement_ = 0;
        return false;
    }
    ++since_improvement_;
    return since_improvement_ >= patience_;
}

namespace {

// Eval-mode validation pass producing both task macro-F1 scores. Masked
// samples are excluded from the attribution tally.
std::pair<double, double> validation_f1(const TrainingData& val, const ModelParams& params) {
    std::vector<std::size_t> det_pred;
    std::vector<std::size_t> det_truth;
    std::vector<std::size_t> att_pred;
    std::vector<std::size_t> att_truth;
    Rng unused(0);
    for (std::size_t i = 0; i < val.size(); ++i) {
        const ForwardCache cache = forward_sample(val.x[i], params, /*train_mode=*/false, unused);
        det_pred.push_back(cache.p_d >= 0.5 ? 1 : 0);
        det_truth.push_back(static_cast<std::size_t>(val.y_detect[i]));
        if (!val.attrib_masked[i]) {
            std::size_t arg = 0;
            for (std::size_t c = 1; c < cache.p_a.size(); ++c) {
                if (cache.p_a[c] > cache.p_a[arg]) arg = c;
            }
            att_pred.push_back(arg);
            att_truth.push_back(val.y_attrib[i]);
        }
    }
    const double f1_d = macro_f1(confusion(det_pred, det_truth, 2));
    const double f1_a = att_pred.empty()
                            ? 0.0
                            : macro_f1(confusion(att_pred, att_truth, val.num_classes));
    return {f1_d, f1_a};
}

}  // namespace

TrainResult train_on_data(const TrainingData& train, const TrainingData& val,
                          const TrainConfig& config, bool pass_through) {
    config.validate();
    if (train.size() == 0 || val.size() == 0) {
        throw DataError("training and validation sets must be non-empty");
    }
    if (train.input_dim != val.input_dim) {
        throw DataError("training and validation feature dimensions differ");
    }

    ModelParams params =
        pass_through
            ? init_params(train.input_dim, {}, 0, train.num_classes, config.activation, 0.0,
                          config.seed)
            : init_params(train.input_dim, config.hidden_dims, config.encoder_dim,
                          train.num_classes, config.activation, config.dropout, config.seed);
    OptimizerState state = OptimizerState::zeros_like(params);
    Rng rng(config.seed);

    TrainResult result;
    result.best = params;
    EarlyStopper stopper(config.patience);

    std::vector<std::size_t> order(train.size());
    std::iota(order.begin(), order.end(), 0);

    for (std::size_t epoch = 0; epoch < config.max_epochs; ++epoch) {
        rng.shuffle(order);

        double epoch_loss_d = 0.0;
        double epoch_loss_a = 0.0;
        std::size_t att_weight = 0;
        for (std::size_t begin = 0; begin < order.size(); begin += config.batch_size) {
            const std::size_t end = std::min(begin + config.batch_size, order.size());
            const std::vector<std::size_t> batch(order.begin() + begin, order.begin() + end);

            BatchGradients bg = backward(train, batch, params, /*train_mode=*/true, rng);
            if (!std::isfinite(bg.loss_d) || !std::isfinite(bg.loss_a) ||
                !bg.g_d.all_finite() || !bg.g_a.all_finite()) {
                throw NumericError("non-finite loss or gradient at epoch " +
                                   std::to_string(epoch + 1) + ", batch starting at sample " +
                                   std::to_string(begin));
            }
            Gradients g = combine_gradients(bg.g_d, bg.g_a, config);
            adamw_step(params, g, state, config, epoch);

            epoch_loss_d += bg.loss_d * static_cast<double>(batch.size());
            std::size_t batch_att = 0;
            for (std::size_t idx : batch) {
                if (!train.attrib_masked[idx]) ++batch_att;
            }
            epoch_loss_a += bg.loss_a * static_cast<double>(batch_att);
            att_weight += batch_att;
        }

        EpochRecord record;
        record.epoch = epoch + 1;
        record.mean_loss_d = epoch_loss_d / static_cast<double>(train.size());
        record.mean_loss_a = att_weight > 0 ? epoch_loss_a / static_cast<double>(att_weight) : 0.0;
        record.learning_rate =
            config.learning_rate *
            (1.0 - static_cast<double>(epoch) / static_cast<double>(config.max_epochs));
        const auto [f1_d, f1_a] = validation_f1(val, params);
        record.val_detection_f1 = f1_d;
        record.val_attribution_f1 = f1_a;
        result.history.push_back(record);

        const bool stop = stopper.observe(record.score(config.score_metric));
        if (stopper.best_index() == record.epoch) {
            result.best = params;
            result.best_epoch = record.epoch;
            result.best_score = stopper.best_score();
        }
        if (stop) break;
    }
    return result;
}

TrainResult train(const Dataset& train_set, const Dataset& val_set,
                  const FeaturePipeline& pipeline, const TrainConfig& config) {
    if (!(train_set.label_space == val_set.label_space)) {
        throw DataError("training and validation sets use different label spaces");
    }
    const TrainingData tr = build_training_data(train_set, pipeline, config.human_attrib_mode);
    const TrainingData va = build_training_data(val_set, pipeline, config.human_attrib_mode);
    return train_on_data(tr, va, config, pipeline.mode == FeaturePipeline::Mode::External);
}

}  // namespace mgtkit
