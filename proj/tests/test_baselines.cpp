#include "mgtkit/baselines.hpp"

#include "mgtkit/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <vector>

using namespace mgtkit;

namespace {

// Six documents over a three-term vocabulary, two classes.
// Class 0 totals per term: [6, 1, 1] (8 tokens); class 1: [1, 3, 7] (11 tokens).
Mat six_doc_counts() {
    Mat x(6, 3);
    const double rows[6][3] = {
        {2, 1, 0}, {1, 0, 1}, {3, 0, 0},  // class 0
        {0, 2, 2}, {1, 1, 1}, {0, 0, 4},  // class 1
    };
    for (std::size_t r = 0; r < 6; ++r) {
        for (std::size_t t = 0; t < 3; ++t) x(r, t) = rows[r][t];
    }
    return x;
}

const std::vector<std::size_t> kSixDocLabels{0, 0, 0, 1, 1, 1};

}  // namespace

TEST_SUITE("baselines") {

TEST_CASE("naive Bayes likelihoods match the smoothed closed form") {
    const MnbModel model = fit_mnb(six_doc_counts(), kSixDocLabels, 2, 1.0);
    REQUIRE(model.num_classes() == 2);
    REQUIRE(model.vocab_size() == 3);

    CHECK(model.log_priors[0] == doctest::Approx(std::log(0.5)).epsilon(1e-12));
    CHECK(model.log_priors[1] == doctest::Approx(std::log(0.5)).epsilon(1e-12));

    // (count + alpha) / (total + alpha * V) with alpha 1, V 3.
    CHECK(model.log_likelihood(0, 0) == doctest::Approx(std::log(7.0 / 11.0)).epsilon(1e-12));
    CHECK(model.log_likelihood(0, 1) == doctest::Approx(std::log(2.0 / 11.0)).epsilon(1e-12));
    CHECK(model.log_likelihood(0, 2) == doctest::Approx(std::log(2.0 / 11.0)).epsilon(1e-12));
    CHECK(model.log_likelihood(1, 0) == doctest::Approx(std::log(2.0 / 14.0)).epsilon(1e-12));
    CHECK(model.log_likelihood(1, 1) == doctest::Approx(std::log(4.0 / 14.0)).epsilon(1e-12));
    CHECK(model.log_likelihood(1, 2) == doctest::Approx(std::log(8.0 / 14.0)).epsilon(1e-12));

    // Each class's likelihoods form a distribution over the vocabulary.
    for (std::size_t c = 0; c < 2; ++c) {
        double sum = 0.0;
        for (std::size_t t = 0; t < 3; ++t) sum += std::exp(model.log_likelihood(c, t));
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("naive Bayes posteriors and argmax match hand computation") {
    const MnbModel model = fit_mnb(six_doc_counts(), kSixDocLabels, 2, 1.0);
    const Vec counts{2.0, 0.0, 1.0};
    const MnbPrediction pred = predict_mnb(counts, model);

    const double lp0 = std::log(0.5) + 2.0 * std::log(7.0 / 11.0) + std::log(2.0 / 11.0);
    const double lp1 = std::log(0.5) + 2.0 * std::log(2.0 / 14.0) + std::log(8.0 / 14.0);
    CHECK(pred.log_posterior[0] == doctest::Approx(lp0).epsilon(1e-12));
    CHECK(pred.log_posterior[1] == doctest::Approx(lp1).epsilon(1e-12));
    CHECK(pred.label == 0);  // lp0 > lp1 for this term mix

    const MnbPrediction other = predict_mnb({0.0, 1.0, 3.0}, model);
    CHECK(other.label == 1);
}

TEST_CASE("smoothing keeps unseen terms strictly positive") {
    Mat x(2, 2);
    x(0, 0) = 4.0;  // class 0 never emits term 1
    x(1, 1) = 3.0;  // class 1 never emits term 0
    const MnbModel model = fit_mnb(x, {0, 1}, 2, 1.0);
    CHECK(model.log_likelihood(0, 1) == doctest::Approx(std::log(1.0 / 6.0)).epsilon(1e-12));
    CHECK(model.log_likelihood(1, 0) == doctest::Approx(std::log(1.0 / 5.0)).epsilon(1e-12));
    CHECK(std::isfinite(model.log_likelihood(0, 1)));
}

TEST_CASE("duplicating every document rescales cleanly") {
    const Mat x = six_doc_counts();
    Mat xx(12, 3);
    std::vector<std::size_t> yy;
    for (std::size_t r = 0; r < 12; ++r) {
        for (std::size_t t = 0; t < 3; ++t) xx(r, t) = x(r % 6, t);
        yy.push_back(kSixDocLabels[r % 6]);
    }
    // Class proportions are unchanged, so priors are exactly invariant.
    const MnbModel a = fit_mnb(x, kSixDocLabels, 2, 1.0);
    const MnbModel dup = fit_mnb(xx, yy, 2, 1.0);
    CHECK(a.log_priors == dup.log_priors);

    // Doubling the counts and the smoothing together cancels exactly:
    // (2c + 2a) / (2T + 2aV) == (c + a) / (T + aV).
    const MnbModel dup2 = fit_mnb(xx, yy, 2, 2.0);
    for (std::size_t c = 0; c < 2; ++c) {
        for (std::size_t t = 0; t < 3; ++t) {
            CHECK(a.log_likelihood(c, t) ==
                  doctest::Approx(dup2.log_likelihood(c, t)).epsilon(1e-12));
        }
    }

    // Duplication preserves the per-class likelihood ordering even with
    // fixed smoothing.
    for (std::size_t c = 0; c < 2; ++c) {
        for (std::size_t t1 = 0; t1 < 3; ++t1) {
            for (std::size_t t2 = 0; t2 < 3; ++t2) {
                if (a.log_likelihood(c, t1) < a.log_likelihood(c, t2)) {
                    CHECK(dup.log_likelihood(c, t1) < dup.log_likelihood(c, t2));
                }
            }
        }
    }
}

TEST_CASE("an all-zero count vector falls back to the prior argmax") {
    Mat x(3, 2);
    x(0, 0) = 1.0;
    x(1, 0) = 1.0;
    x(2, 1) = 1.0;
    // Two class-0 docs, one class-1 doc: prior favors class 0.
    const MnbModel model = fit_mnb(x, {0, 0, 1}, 2, 1.0);
    const MnbPrediction pred = predict_mnb({0.0, 0.0}, model);
    CHECK(pred.label == 0);
    CHECK(pred.log_posterior[0] == doctest::Approx(std::log(2.0 / 3.0)).epsilon(1e-12));
    CHECK(pred.log_posterior[1] == doctest::Approx(std::log(1.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("equal posteriors resolve to the lowest class index") {
    Mat x(2, 2);
    x(0, 0) = 1.0;
    x(0, 1) = 1.0;
    x(1, 0) = 1.0;
    x(1, 1) = 1.0;  // identical rows, one per class
    const MnbModel model = fit_mnb(x, {0, 1}, 2, 1.0);
    const MnbPrediction pred = predict_mnb({3.0, 3.0}, model);
    CHECK(pred.log_posterior[0] == doctest::Approx(pred.log_posterior[1]).epsilon(1e-12));
    CHECK(pred.label == 0);
}

TEST_CASE("naive Bayes input validation") {
    const Mat x = six_doc_counts();
    CHECK_THROWS_AS(fit_mnb(x, kSixDocLabels, 2, 0.0), UsageError);
    CHECK_THROWS_AS(fit_mnb(x, kSixDocLabels, 2, -1.0), UsageError);
    CHECK_THROWS_AS(fit_mnb(x, {0, 0, 0, 1, 1}, 2, 1.0), DataError);      // row mismatch
    CHECK_THROWS_AS(fit_mnb(x, {0, 0, 0, 0, 0, 0}, 2, 1.0), DataError);   // class 1 absent
    CHECK_THROWS_AS(fit_mnb(x, {0, 0, 0, 1, 1, 5}, 2, 1.0), DataError);   // label out of range
    CHECK_THROWS_AS(fit_mnb(Mat(0, 3), {}, 2, 1.0), DataError);

    Mat neg = six_doc_counts();
    neg(1, 1) = -2.0;
    CHECK_THROWS_AS(fit_mnb(neg, kSixDocLabels, 2, 1.0), DataError);

    const MnbModel model = fit_mnb(x, kSixDocLabels, 2, 1.0);
    CHECK_THROWS_AS(predict_mnb({1.0, 2.0}, model), DataError);  // wrong dimension
}

TEST_CASE("softmax regression separates one-hot classes perfectly") {
    const std::size_t classes = 3;
    Mat x(30, 3), val(9, 3);
    std::vector<std::size_t> y, val_y;
    for (std::size_t r = 0; r < 30; ++r) {
        const std::size_t c = r % classes;
        x(r, c) = 1.0;
        y.push_back(c);
    }
    for (std::size_t r = 0; r < 9; ++r) {
        const std::size_t c = r % classes;
        val(r, c) = 1.0;
        val_y.push_back(c);
    }

    TrainConfig config;
    config.learning_rate = 0.1;
    config.max_epochs = 40;
    config.patience = 40;
    config.batch_size = 10;
    config.dropout = 0.0;
    config.seed = 3;

    const TrainResult result = fit_softmax_regression(x, y, val, val_y, classes, config);
    CHECK(result.best.encoder.empty());  // single linear layer: pass-through encoder
    CHECK(result.best_score == doctest::Approx(1.0).epsilon(1e-12));

    std::size_t correct = 0;
    for (std::size_t r = 0; r < val.rows; ++r) {
        const Vec row(val.row(r).begin(), val.row(r).end());
        if (predict_softmax_class(row, result.best) == val_y[r]) ++correct;
    }
    CHECK(correct == val.rows);

    // Posteriors stay a probability distribution.
    const Vec probs = attribute_probs({1.0, 0.0, 0.0}, result.best);
    double sum = 0.0;
    for (double p : probs) sum += p;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("softmax regression validates row counts") {
    Mat x(4, 2), val(2, 2);
    TrainConfig config;
    CHECK_THROWS_AS(fit_softmax_regression(x, {0, 1, 0}, val, {0, 1}, 2, config), DataError);
}

}  // TEST_SUITE
