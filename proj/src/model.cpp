#include "mgtkit/model.hpp"

#include "mgtkit/errors.hpp"

#include <algorithm>
#include <cmath>

namespace mgtkit {

namespace {

constexpr double kProbEps = 1e-12;

double apply_activation(Activation a, double z) {
    switch (a) {
        case Activation::Linear: return z;
        case Activation::Tanh: return std::tanh(z);
        case Activation::Relu: return z > 0.0 ? z : 0.0;
    }
    return z;
}

}  // namespace

std::string activation_name(Activation a) {
    switch (a) {
        case Activation::Linear: return "linear";
        case Activation::Tanh: return "tanh";
        case Activation::Relu: return "relu";
    }
    return "linear";
}

Activation activation_from_name(const std::string& name) {
    if (name == "linear") return Activation::Linear;
    if (name == "tanh") return Activation::Tanh;
    if (name == "relu") return Activation::Relu;
    throw DataError("unknown activation '" + name + "' (use linear, tanh, or relu)");
}

std::vector<ModelParams::Block> ModelParams::blocks() {
    std::vector<Block> out;
    for (auto& layer : encoder) {
        out.push_back({layer.weight.a.data(), layer.weight.a.size(), false});
        out.push_back({layer.bias.data(), layer.bias.size(), true});
    }
    out.push_back({w_d.data(), w_d.size(), false});
    out.push_back({&b_d, 1, true});
    out.push_back({w_a.a.data(), w_a.a.size(), false});
    out.push_back({b_a.data(), b_a.size(), true});
    return out;
}

std::size_t ModelParams::num_parameters() const {
    std::size_t n = w_d.size() + 1 + w_a.a.size() + b_a.size();
    for (const auto& layer : encoder) n += layer.weight.a.size() + layer.bias.size();
    return n;
}

ModelParams init_params(std::size_t input_dim, const std::vector<std::size_t>& hidden_dims,
                        std::size_t encoder_dim, std::size_t num_classes, Activation activation,
                        double dropout_rate, std::uint64_t seed) {
    if (input_dim == 0) throw DataError("input dimension must be positive");
    if (num_classes < 2) throw DataError("attribution head needs at least 2 classes");
    if (dropout_rate < 0.0 || dropout_rate >= 1.0) {
        throw DataError("dropout rate must lie in [0, 1)");
    }
    const bool pass_through = hidden_dims.empty() && encoder_dim == 0;
    if (!pass_through && encoder_dim == 0) {
        throw DataError("encoder dimension must be positive when hidden layers are present");
    }

    Rng rng(seed);
    auto glorot = [&rng](Mat& w) {
        const double bound = std::sqrt(6.0 / static_cast<double>(w.rows + w.cols));
        for (double& v : w.a) v = rng.uniform(-bound, bound);
    };

    ModelParams p;
    p.input_dim = input_dim;
    p.num_classes = num_classes;
    p.dropout_rate = dropout_rate;
    p.encoder_dim = pass_through ? input_dim : encoder_dim;

    std::size_t prev = input_dim;
    if (!pass_through) {
        std::vector<std::size_t> widths = hidden_dims;
        widths.push_back(encoder_dim);
        for (std::size_t width : widths) {
            if (width == 0) throw DataError("encoder layer width must be positive");
            EncoderLayer layer;
            layer.weight = Mat(width, prev);
            layer.bias.assign(width, 0.0);
            layer.activation = activation;
            glorot(layer.weight);
            p.encoder.push_back(std::move(layer));
            prev = width;
        }
    }

    p.w_d.assign(p.encoder_dim, 0.0);
    {
        Mat tmp(1, p.encoder_dim);
        glorot(tmp);
        p.w_d = tmp.a;
    }
    p.b_d = 0.0;
    p.w_a = Mat(num_classes, p.encoder_dim);
    glorot(p.w_a);
    p.b_a.assign(num_classes, 0.0);
    return p;
}

ForwardCache forward_sample(const Vec& x, const ModelParams& params, bool train_mode, Rng& rng) {
    if (x.size() != params.input_dim) {
        throw DataError("feature vector dimension " + std::to_string(x.size()) +
                        " does not match model input dimension " +
                        std::to_string(params.input_dim));
    }

    ForwardCache cache;
    const bool dropping = train_mode && params.dropout_rate > 0.0;
    const double keep = 1.0 - params.dropout_rate;

    Vec a = x;
    for (const auto& layer : params.encoder) {
        cache.inputs.push_back(a);
        Vec z = layer.bias;
        // z += W * a
        for (std::size_t r = 0; r < layer.weight.rows; ++r) {
            z[r] += dot(layer.weight.row(r), a);
        }
        cache.pre_acts.push_back(z);
        Vec out(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) out[i] = apply_activation(layer.activation, z[i]);
        if (dropping) {
            Vec mask(out.size());
            for (std::size_t i = 0; i < out.size(); ++i) {
                mask[i] = rng.uniform() < params.dropout_rate ? 0.0 : 1.0 / keep;
                out[i] *= mask[i];
            }
            cache.drop_masks.push_back(std::move(mask));
        }
        a = std::move(out);
    }
    cache.h = std::move(a);

    cache.z_d = params.b_d + dot(params.w_d, cache.h);
    cache.p_d = [&] {
        const double z = cache.z_d;
        const double p = z >= 0.0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
        return std::clamp(p, kProbEps, 1.0 - kProbEps);
    }();

    cache.z_a.assign(params.num_classes, 0.0);
    for (std::size_t c = 0; c < params.num_classes; ++c) {
        cache.z_a[c] = params.b_a[c] + dot(params.w_a.row(c), cache.h);
    }
    const double zmax = *std::max_element(cache.z_a.begin(), cache.z_a.end());
    cache.p_a.assign(params.num_classes, 0.0);
    double denom = 0.0;
    for (std::size_t c = 0; c < params.num_classes; ++c) {
        cache.p_a[c] = std::exp(cache.z_a[c] - zmax);
        denom += cache.p_a[c];
    }
    for (double& v : cache.p_a) v /= denom;
    return cache;
}

Vec encode(const Vec& x, const ModelParams& params, bool train_mode, Rng& rng) {
    return forward_sample(x, params, train_mode, rng).h;
}

double detect_prob(const Vec& h, const ModelParams& params) {
    const double z = params.b_d + dot(params.w_d, h);
    const double p = z >= 0.0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
    return std::clamp(p, kProbEps, 1.0 - kProbEps);
}

Vec attribute_probs(const Vec& h, const ModelParams& params) {
    Vec z(params.num_classes, 0.0);
    for (std::size_t c = 0; c < params.num_classes; ++c) {
        z[c] = params.b_a[c] + dot(params.w_a.row(c), h);
    }
    const double zmax = *std::max_element(z.begin(), z.end());
    Vec p(params.num_classes, 0.0);
    double denom = 0.0;
    for (std::size_t c = 0; c < params.num_classes; ++c) {
        p[c] = std::exp(z[c] - zmax);
        denom += p[c];
    }
    for (double& v : p) v /= denom;
    return p;
}

Prediction predict(const FeatureVector& x, const ModelParams& params) {
    Rng unused(0);
    ForwardCache cache = forward_sample(x.values, params, /*train_mode=*/false, unused);

    Prediction pred;
    pred.h = std::move(cache.h);
    pred.p_detect = cache.p_d;
    pred.p_attrib = std::move(cache.p_a);
    pred.detect_label = pred.p_detect >= 0.5 ? 1 : 0;
    pred.attrib_label = 0;
    for (std::size_t c = 1; c < pred.p_attrib.size(); ++c) {
        if (pred.p_attrib[c] > pred.p_attrib[pred.attrib_label]) pred.attrib_label = c;
    }
    return pred;
}

Gradients Gradients::zeros_like(const ModelParams& params) {
    Gradients g;
    for (const auto& layer : params.encoder) {
        g.enc_w.emplace_back(layer.weight.rows, layer.weight.cols);
        g.enc_b.emplace_back(layer.bias.size(), 0.0);
    }
    g.w_d.assign(params.w_d.size(), 0.0);
    g.b_d = 0.0;
    g.w_a = Mat(params.w_a.rows, params.w_a.cols);
    g.b_a.assign(params.b_a.size(), 0.0);
    return g;
}

std::vector<ModelParams::Block> Gradients::blocks() {
    std::vector<ModelParams::Block> out;
    for (std::size_t i = 0; i < enc_w.size(); ++i) {
        out.push_back({enc_w[i].a.data(), enc_w[i].a.size(), false});
        out.push_back({enc_b[i].data(), enc_b[i].size(), true});
    }
    out.push_back({w_d.data(), w_d.size(), false});
    out.push_back({&b_d, 1, true});
    out.push_back({w_a.a.data(), w_a.a.size(), false});
    out.push_back({b_a.data(), b_a.size(), true});
    return out;
}

namespace {

// Applies fn(mine, theirs) over every matching parameter entry.
template <typename F>
void zip_entries(Gradients& a, const Gradients& b, F&& fn) {
    for (std::size_t i = 0; i < a.enc_w.size(); ++i) {
        for (std::size_t k = 0; k < a.enc_w[i].a.size(); ++k) fn(a.enc_w[i].a[k], b.enc_w[i].a[k]);
        for (std::size_t k = 0; k < a.enc_b[i].size(); ++k) fn(a.enc_b[i][k], b.enc_b[i][k]);
    }
    for (std::size_t k = 0; k < a.w_d.size(); ++k) fn(a.w_d[k], b.w_d[k]);
    fn(a.b_d, b.b_d);
    for (std::size_t k = 0; k < a.w_a.a.size(); ++k) fn(a.w_a.a[k], b.w_a.a[k]);
    for (std::size_t k = 0; k < a.b_a.size(); ++k) fn(a.b_a[k], b.b_a[k]);
}

}  // namespace

void Gradients::scale(double s) {
    zip_entries(*this, *this, [s](double& mine, const double&) { mine *= s; });
}

void Gradients::add_scaled(const Gradients& other, double s) {
    zip_entries(*this, other, [s](double& mine, const double& theirs) { mine += s * theirs; });
}

double Gradients::dot(const Gradients& other) const {
    double sum = 0.0;
    zip_entries(const_cast<Gradients&>(*this), other,
                [&sum](double& mine, const double& theirs) { sum += mine * theirs; });
    return sum;
}

bool Gradients::all_finite() const {
    bool ok = true;
    zip_entries(const_cast<Gradients&>(*this), *this,
                [&ok](double& mine, const double&) { ok = ok && std::isfinite(mine); });
    return ok;
}

}  // namespace mgtkit
