#include "mgtkit/evaluation.hpp"

#include "mgtkit/errors.hpp"

#include <algorithm>
#include <cmath>

namespace mgtkit {

TaskMetrics task_metrics(const std::vector<std::size_t>& preds,
                         const std::vector<std::size_t>& truth, std::size_t num_classes,
                         std::vector<std::string> class_names) {
    TaskMetrics tm;
    tm.matrix = confusion(preds, truth, num_classes);
    tm.matrix.class_names = std::move(class_names);
    tm.macro_f1 = macro_f1(tm.matrix);
    tm.accuracy = accuracy(tm.matrix);
    tm.per_class = per_class_metrics(tm.matrix);
    return tm;
}

MetricsReport evaluate(const ModelParams& params, const Dataset& dataset,
                       const FeaturePipeline& pipeline) {
    if (dataset.samples.empty()) throw DataError("cannot evaluate an empty dataset");
    if (pipeline.dim() != params.input_dim) {
        throw DataError("feature dimension " + std::to_string(pipeline.dim()) +
                        " does not match model input dimension " +
                        std::to_string(params.input_dim));
    }
    if (dataset.label_space.num_classes() != params.num_classes) {
        throw DataError("label space size does not match the model's class count");
    }

    std::vector<std::size_t> det_pred, det_truth, att_pred, att_truth;
    for (const auto& s : dataset.samples) {
        const Prediction pred = predict(pipeline.transform(s), params);
        det_pred.push_back(static_cast<std::size_t>(pred.detect_label));
        det_truth.push_back(static_cast<std::size_t>(detection_label(s, dataset.label_space)));
        att_pred.push_back(pred.attrib_label);
        att_truth.push_back(dataset.class_index(s));
    }

    MetricsReport report;
    report.num_samples = dataset.size();
    report.detection = task_metrics(det_pred, det_truth, 2, {"human", "machine"});
    report.attribution =
        task_metrics(att_pred, att_truth, params.num_classes, dataset.label_space.classes);
    return report;
}

Mat encode_dataset(const ModelParams& params, const Dataset& dataset,
                   const FeaturePipeline& pipeline) {
    Mat h(dataset.size(), params.encoder_dim);
    Rng unused(0);
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        const Vec hi =
            encode(pipeline.transform(dataset.samples[i]).values, params, /*train_mode=*/false,
                   unused);
        std::copy(hi.begin(), hi.end(), h.row(i).begin());
    }
    return h;
}

PcaResult pca_project(const Mat& h, std::size_t k) {
    if (k < 1) throw DataError("at least one principal component is required");
    if (h.rows <= k) throw DataError("need more rows than requested components");
    const std::size_t n = h.rows;
    const std::size_t d = h.cols;

    PcaResult result;
    result.mean.assign(d, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < d; ++c) result.mean[c] += h(r, c);
    }
    for (double& m : result.mean) m /= static_cast<double>(n);

    Mat centered(n, d);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < d; ++c) centered(r, c) = h(r, c) - result.mean[c];
    }

    // Covariance (d x d), 1/n normalization.
    Mat cov(d, d);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t i = 0; i < d; ++i) {
            const double vi = centered(r, i);
            if (vi == 0.0) continue;
            for (std::size_t j = 0; j < d; ++j) cov(i, j) += vi * centered(r, j);
        }
    }
    for (double& v : cov.a) v /= static_cast<double>(n);

    double total_variance = 0.0;
    for (std::size_t i = 0; i < d; ++i) total_variance += cov(i, i);

    constexpr double kTol = 1e-10;
    constexpr std::size_t kMaxIters = 10000;

    result.components = Mat(k, d);
    result.variance_fraction.assign(k, 0.0);
    for (std::size_t comp = 0; comp < k; ++comp) {
        // Deterministic start: a fixed seeded direction.
        Rng rng(0x9e3779b97f4a7c15ULL + comp);
        Vec v(d);
        for (double& x : v) x = rng.uniform(-1.0, 1.0);
        double norm = std::sqrt(norm_sq(v));
        if (norm == 0.0) {
            v[0] = 1.0;
            norm = 1.0;
        }
        for (double& x : v) x /= norm;

        double eigenvalue = 0.0;
        bool converged = false;
        std::size_t iters = 0;
        for (; iters < kMaxIters; ++iters) {
            Vec next = matvec(cov, v);
            eigenvalue = dot(v, next);
            const double next_norm = std::sqrt(norm_sq(next));
            if (next_norm == 0.0) {
                // Remaining variance is zero; any unit vector is fine.
                converged = true;
                break;
            }
            for (double& x : next) x /= next_norm;
            double diff = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                const double delta = next[i] - v[i];
                diff += delta * delta;
            }
            v = std::move(next);
            if (std::sqrt(diff) < kTol) {
                converged = true;
                Vec cv = matvec(cov, v);
                eigenvalue = dot(v, cv);
                break;
            }
        }
        if (!converged) {
            throw NumericError("power iteration did not converge within " +
                               std::to_string(kMaxIters) + " iterations for component " +
                               std::to_string(comp + 1));
        }

        // Sign convention: largest-magnitude entry positive.
        std::size_t arg = 0;
        for (std::size_t i = 1; i < d; ++i) {
            if (std::abs(v[i]) > std::abs(v[arg])) arg = i;
        }
        if (v[arg] < 0.0) {
            for (double& x : v) x = -x;
        }

        std::copy(v.begin(), v.end(), result.components.row(comp).begin());
        result.variance_fraction[comp] =
            total_variance > 0.0 ? std::max(eigenvalue, 0.0) / total_variance : 0.0;

        // Deflate: cov -= eigenvalue * v v^T.
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) cov(i, j) -= eigenvalue * v[i] * v[j];
        }
    }

    result.coordinates = Mat(n, k);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t comp = 0; comp < k; ++comp) {
            result.coordinates(r, comp) = dot(centered.row(r), result.components.row(comp));
        }
    }
    return result;
}

std::vector<AblationRow> lambda_ablation(const Dataset& train_set, const Dataset& val_set,
                                         const FeaturePipeline& pipeline, const TrainConfig& base,
                                         const std::vector<std::pair<double, double>>& grid) {
    if (grid.empty()) throw UsageError("ablation grid must be non-empty");

    std::vector<AblationRow> rows;
    for (const auto& [ld, la] : grid) {
        TrainConfig config = base;
        config.lambda_d = ld;
        config.lambda_a = la;
        config.validate();

        const TrainResult result = train(train_set, val_set, pipeline, config);
        const MetricsReport report = evaluate(result.best, val_set, pipeline);

        AblationRow row;
        row.lambda_d = ld;
        row.lambda_a = la;
        row.detection_f1 = report.detection.macro_f1;
        row.attribution_f1 = report.attribution.macro_f1;
        row.best_epoch = result.best_epoch;
        rows.push_back(row);
    }
    return rows;
}

std::vector<CrossLingualCell> cross_lingual_matrix(
    const std::vector<std::pair<std::string, Dataset>>& by_language,
    const FeatureOptions& features, const TrainConfig& config) {
    if (by_language.size() < 2) {
        throw DataError("cross-lingual evaluation needs at least two languages");
    }
    for (std::size_t i = 1; i < by_language.size(); ++i) {
        if (!(by_language[i].second.label_space == by_language[0].second.label_space)) {
            throw DataError("language corpora must share one label space");
        }
    }

    // Fixed 80/20 split per language, reused for every source model.
    std::vector<std::pair<Dataset, Dataset>> splits;
    splits.reserve(by_language.size());
    for (const auto& [name, ds] : by_language) {
        splits.push_back(split(ds, 0.8, config.seed));
    }

    std::vector<CrossLingualCell> cells;
    for (std::size_t src = 0; src < by_language.size(); ++src) {
        const FeaturePipeline pipeline = fit_pipeline(splits[src].first, features);
        const TrainResult result = train(splits[src].first, splits[src].second, pipeline, config);
        for (std::size_t tgt = 0; tgt < by_language.size(); ++tgt) {
            const MetricsReport report = evaluate(result.best, splits[tgt].second, pipeline);
            CrossLingualCell cell;
            cell.source = by_language[src].first;
            cell.target = by_language[tgt].first;
            cell.detection_f1 = report.detection.macro_f1;
            cell.attribution_f1 = report.attribution.macro_f1;
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

}  // namespace mgtkit
