#pragma once

#include "mgtkit/linalg.hpp"
#include "mgtkit/pipeline.hpp"
#include "mgtkit/rng.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace mgtkit {

enum class Activation { Linear, Tanh, Relu };

std::string activation_name(Activation a);
Activation activation_from_name(const std::string& name);

struct EncoderLayer {
    Mat weight;  // out_dim x in_dim
    Vec bias;    // out_dim
    Activation activation = Activation::Tanh;
};

// Shared encoder plus the two linear task heads. An empty encoder is the
// pass-through case (h = x), used with precomputed embeddings and for the
// plain softmax-regression baseline.
struct ModelParams {
    std::vector<EncoderLayer> encoder;
    Vec w_d;          // detection head weights, length d
    double b_d = 0.0;
    Mat w_a;          // attribution head weights, C x d
    Vec b_a;          // length C
    std::size_t input_dim = 0;
    std::size_t encoder_dim = 0;
    std::size_t num_classes = 0;
    double dropout_rate = 0.0;

    // Mutable views over every parameter block, weights first within each
    // layer. `is_bias` lets optimizers exempt biases from weight decay.
    struct Block {
        double* data;
        std::size_t size;
        bool is_bias;
    };
    std::vector<Block> blocks();
    std::size_t num_parameters() const;
};

// Glorot-uniform weights (bound sqrt(6/(fan_in+fan_out))), zero biases.
// `hidden_dims` lists layer widths before the final encoder_dim layer; empty
// hidden_dims with encoder_dim 0 yields the pass-through encoder.
ModelParams init_params(std::size_t input_dim, const std::vector<std::size_t>& hidden_dims,
                        std::size_t encoder_dim, std::size_t num_classes, Activation activation,
                        double dropout_rate, std::uint64_t seed);

// Intermediate state of one forward pass, kept for backpropagation.
struct ForwardCache {
    std::vector<Vec> inputs;       // inputs[i] = input to layer i (inputs[0] = x)
    std::vector<Vec> pre_acts;     // z_i before the activation
    std::vector<Vec> drop_masks;   // inverted-dropout masks (empty in eval mode / rate 0)
    Vec h;                         // encoder output
    double z_d = 0.0;              // detection logit
    Vec z_a;                       // attribution logits
    double p_d = 0.5;
    Vec p_a;
};

// Encoder forward. Train mode applies inverted dropout after each layer
// activation using `rng`; rate 0 draws nothing, so train == eval bitwise.
Vec encode(const Vec& x, const ModelParams& params, bool train_mode, Rng& rng);

// Numerically stable sigmoid of the detection logit, clamped to
// [1e-12, 1 - 1e-12].
double detect_prob(const Vec& h, const ModelParams& params);

// Max-subtracted softmax over the attribution logits.
Vec attribute_probs(const Vec& h, const ModelParams& params);

struct Prediction {
    double p_detect = 0.0;
    Vec p_attrib;
    int detect_label = 0;      // 1 = machine-generated
    std::size_t attrib_label = 0;
    Vec h;
};

// Eval-mode forward through both heads. detect_label is 1 when
// p_detect >= 0.5; attrib_label is the argmax with lowest-index tie-break.
Prediction predict(const FeatureVector& x, const ModelParams& params);

// Full forward pass keeping everything backpropagation needs.
ForwardCache forward_sample(const Vec& x, const ModelParams& params, bool train_mode, Rng& rng);

// Gradient (or any per-parameter accumulator) shaped like a ModelParams.
struct Gradients {
    std::vector<Mat> enc_w;
    std::vector<Vec> enc_b;
    Vec w_d;
    double b_d = 0.0;
    Mat w_a;
    Vec b_a;

    static Gradients zeros_like(const ModelParams& params);
    std::vector<ModelParams::Block> blocks();

    void scale(double s);
    // this += s * other
    void add_scaled(const Gradients& other, double s);
    double dot(const Gradients& other) const;
    double norm_sq() const { return dot(*this); }
    bool all_finite() const;
};

}  // namespace mgtkit
