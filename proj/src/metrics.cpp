#include "mgtkit/metrics.hpp"

#include "mgtkit/errors.hpp"

#include <numeric>

namespace mgtkit {

std::size_t ConfusionMatrix::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

std::size_t ConfusionMatrix::row_sum(std::size_t truth) const {
    std::size_t sum = 0;
    for (std::size_t p = 0; p < num_classes; ++p) sum += at(truth, p);
    return sum;
}

std::size_t ConfusionMatrix::col_sum(std::size_t pred) const {
    std::size_t sum = 0;
    for (std::size_t t = 0; t < num_classes; ++t) sum += at(t, pred);
    return sum;
}

ConfusionMatrix confusion(const std::vector<std::size_t>& preds,
                          const std::vector<std::size_t>& truth, std::size_t num_classes) {
    if (preds.size() != truth.size()) {
        throw DataError("prediction and truth vectors differ in length");
    }
    ConfusionMatrix m(num_classes);
    for (std::size_t i = 0; i < preds.size(); ++i) {
        if (preds[i] >= num_classes || truth[i] >= num_classes) {
            throw DataError("class index out of range at position " + std::to_string(i));
        }
        ++m.at(truth[i], preds[i]);
    }
    return m;
}

std::vector<PerClassMetrics> per_class_metrics(const ConfusionMatrix& m) {
    std::vector<PerClassMetrics> out(m.num_classes);
    for (std::size_t c = 0; c < m.num_classes; ++c) {
        const double tp = static_cast<double>(m.at(c, c));
        const double predicted = static_cast<double>(m.col_sum(c));
        const double actual = static_cast<double>(m.row_sum(c));
        out[c].precision = predicted > 0.0 ? tp / predicted : 0.0;
        out[c].recall = actual > 0.0 ? tp / actual : 0.0;
        const double pr = out[c].precision + out[c].recall;
        out[c].f1 = pr > 0.0 ? 2.0 * out[c].precision * out[c].recall / pr : 0.0;
    }
    return out;
}

double macro_f1(const ConfusionMatrix& m) {
    if (m.num_classes == 0) throw DataError("macro-F1 of an empty confusion matrix");
    double sum = 0.0;
    for (const auto& pc : per_class_metrics(m)) sum += pc.f1;
    return sum / static_cast<double>(m.num_classes);
}

double accuracy(const ConfusionMatrix& m) {
    const std::size_t n = m.total();
    if (n == 0) return 0.0;
    std::size_t correct = 0;
    for (std::size_t c = 0; c < m.num_classes; ++c) correct += m.at(c, c);
    return static_cast<double>(correct) / static_cast<double>(n);
}

}  // namespace mgtkit
