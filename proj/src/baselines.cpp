#include "mgtkit/baselines.hpp"

#include "mgtkit/errors.hpp"

#include <cmath>

namespace mgtkit {

MnbModel fit_mnb(const Mat& X, const std::vector<std::size_t>& y, std::size_t num_classes,
                 double alpha) {
    if (alpha <= 0.0) throw UsageError("smoothing alpha must be positive");
    if (X.rows != y.size()) throw DataError("count matrix rows must match label count");
    if (X.rows == 0) throw DataError("cannot fit naive Bayes on an empty corpus");
    if (num_classes < 2) throw DataError("naive Bayes needs at least 2 classes");

    std::vector<std::size_t> class_counts(num_classes, 0);
    for (std::size_t c : y) {
        if (c >= num_classes) throw DataError("label index out of range");
        ++class_counts[c];
    }
    for (std::size_t c = 0; c < num_classes; ++c) {
        if (class_counts[c] == 0) {
            throw DataError("class " + std::to_string(c) + " has no training samples");
        }
    }

    MnbModel model;
    model.alpha = alpha;
    model.log_priors.resize(num_classes);
    for (std::size_t c = 0; c < num_classes; ++c) {
        model.log_priors[c] = std::log(static_cast<double>(class_counts[c]) /
                                       static_cast<double>(X.rows));
    }

    Mat term_counts(num_classes, X.cols);
    Vec class_totals(num_classes, 0.0);
    for (std::size_t r = 0; r < X.rows; ++r) {
        for (std::size_t t = 0; t < X.cols; ++t) {
            const double count = X(r, t);
            if (count < 0.0) throw DataError("negative term count at row " + std::to_string(r));
            term_counts(y[r], t) += count;
            class_totals[y[r]] += count;
        }
    }

    model.log_likelihood = Mat(num_classes, X.cols);
    const double v = static_cast<double>(X.cols);
    for (std::size_t c = 0; c < num_classes; ++c) {
        const double denom = class_totals[c] + alpha * v;
        for (std::size_t t = 0; t < X.cols; ++t) {
            model.log_likelihood(c, t) = std::log((term_counts(c, t) + alpha) / denom);
        }
    }
    return model;
}

MnbPrediction predict_mnb(const Vec& counts, const MnbModel& model) {
    if (counts.size() != model.vocab_size()) {
        throw DataError("count vector dimension does not match the fitted vocabulary");
    }
    MnbPrediction pred;
    pred.log_posterior = model.log_priors;
    for (std::size_t c = 0; c < model.num_classes(); ++c) {
        pred.log_posterior[c] += dot(counts, model.log_likelihood.row(c));
    }
    pred.label = 0;
    for (std::size_t c = 1; c < pred.log_posterior.size(); ++c) {
        if (pred.log_posterior[c] > pred.log_posterior[pred.label]) pred.label = c;
    }
    return pred;
}

TrainResult fit_softmax_regression(const Mat& X, const std::vector<std::size_t>& y,
                                   const Mat& val_X, const std::vector<std::size_t>& val_y,
                                   std::size_t num_classes, TrainConfig config) {
    if (X.rows != y.size() || val_X.rows != val_y.size()) {
        throw DataError("feature matrix rows must match label count");
    }
    auto to_data = [num_classes](const Mat& m, const std::vector<std::size_t>& labels) {
        TrainingData data;
        data.input_dim = m.cols;
        data.num_classes = num_classes;
        for (std::size_t r = 0; r < m.rows; ++r) {
            data.x.emplace_back(m.row(r).begin(), m.row(r).end());
            data.y_attrib.push_back(labels[r]);
            data.y_detect.push_back(0);  // unused: detection weight is zeroed below
            data.attrib_masked.push_back(0);
        }
        return data;
    };

    config.lambda_d = 0.0;
    config.lambda_a = 1.0;
    config.score_metric = ScoreMetric::AttributionF1;
    return train_on_data(to_data(X, y), to_data(val_X, val_y), config, /*pass_through=*/true);
}

std::size_t predict_softmax_class(const Vec& x, const ModelParams& params) {
    const Vec p = attribute_probs(x, params);
    std::size_t arg = 0;
    for (std::size_t c = 1; c < p.size(); ++c) {
        if (p[c] > p[arg]) arg = c;
    }
    return arg;
}

}  // namespace mgtkit
