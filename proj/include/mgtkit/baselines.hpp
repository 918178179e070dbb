#pragma once

#include "mgtkit/linalg.hpp"
#include "mgtkit/training.hpp"

#include <cstddef>
#include <vector>

namespace mgtkit {

// Multinomial naive Bayes over term counts with additive smoothing.
struct MnbModel {
    Vec log_priors;      // length C
    Mat log_likelihood;  // C x V
    double alpha = 1.0;

    std::size_t num_classes() const { return log_priors.size(); }
    std::size_t vocab_size() const { return log_likelihood.cols; }
};

// priors = class frequencies; likelihood[c][t] = (count_ct + alpha) /
// (total_c + alpha * V). Every class in [0, num_classes) must occur in `y`.
MnbModel fit_mnb(const Mat& X, const std::vector<std::size_t>& y, std::size_t num_classes,
                 double alpha = 1.0);

struct MnbPrediction {
    std::size_t label = 0;
    Vec log_posterior;  // unnormalized: log prior + sum of count-weighted log likelihoods
};

// argmax of the log posterior, ties to the lowest class index.
MnbPrediction predict_mnb(const Vec& counts, const MnbModel& model);

// Single linear layer + softmax fitted with the attribution-only training
// loop (lambda_d = 0); the returned parameters have the pass-through
// encoder, so attribute_probs(x, params) gives class posteriors.
TrainResult fit_softmax_regression(const Mat& X, const std::vector<std::size_t>& y,
                                   const Mat& val_X, const std::vector<std::size_t>& val_y,
                                   std::size_t num_classes, TrainConfig config);

std::size_t predict_softmax_class(const Vec& x, const ModelParams& params);

}  // namespace mgtkit
