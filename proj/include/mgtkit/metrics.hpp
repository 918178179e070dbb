#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace mgtkit {

// Square contingency table of truth (rows) against prediction (columns).
struct ConfusionMatrix {
    std::size_t num_classes = 0;
    std::vector<std::size_t> counts;  // row-major, num_classes^2
    std::vector<std::string> class_names;

    ConfusionMatrix() = default;
    explicit ConfusionMatrix(std::size_t c) : num_classes(c), counts(c * c, 0) {}

    std::size_t& at(std::size_t truth, std::size_t pred) { return counts[truth * num_classes + pred]; }
    std::size_t at(std::size_t truth, std::size_t pred) const { return counts[truth * num_classes + pred]; }
    std::size_t total() const;
    std::size_t row_sum(std::size_t truth) const;
    std::size_t col_sum(std::size_t pred) const;
};

ConfusionMatrix confusion(const std::vector<std::size_t>& preds,
                          const std::vector<std::size_t>& truth, std::size_t num_classes);

struct PerClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// Per-class precision/recall/F1 with the 0-at-degenerate convention:
// precision 0 when the class is never predicted, recall 0 when never true,
// F1 0 when precision + recall is 0.
std::vector<PerClassMetrics> per_class_metrics(const ConfusionMatrix& m);

// Unweighted mean of per-class F1 scores.
double macro_f1(const ConfusionMatrix& m);

double accuracy(const ConfusionMatrix& m);

}  // namespace mgtkit
