#include "mgtkit/obfuscation.hpp"

#include "mgtkit/errors.hpp"
#include "mgtkit/features.hpp"
#include "mgtkit/text.hpp"

#include <algorithm>
#include <cmath>

namespace mgtkit {

void ObfuscationConfig::validate() const {
    if (population_size < 2) throw UsageError("population_size must be at least 2");
    if (mutation_rate < 0.0 || mutation_rate > 1.0) throw UsageError("mutation_rate must lie in [0, 1]");
    if (crossover_rate < 0.0 || crossover_rate > 1.0) throw UsageError("crossover_rate must lie in [0, 1]");
    if (w_probability < 0.0 || w_similarity < 0.0 || std::abs(w_probability + w_similarity - 1.0) > 1e-9) {
        throw UsageError("fitness weights must be nonnegative and sum to 1");
    }
    if (similarity_floor <= 0.0 || similarity_floor > 1.0) {
        throw UsageError("similarity_floor must lie in (0, 1]");
    }
}

std::vector<std::string> SynonymTable::alternatives(const std::string& lower) const {
    auto it = index.find(lower);
    if (it == index.end()) return {};
    std::vector<std::string> out;
    for (const auto& w : groups[it->second]) {
        if (w != lower) out.push_back(w);
    }
    return out;
}

namespace {

bool is_upper_ascii(char c) { return c >= 'A' && c <= 'Z'; }

// Mirrors the source token's casing onto a lowercase replacement.
std::string match_case(const std::string& replacement, const std::string& original) {
    std::string out = replacement;
    const bool caps = original.size() >= 2 &&
                      std::all_of(original.begin(), original.end(),
                                  [](char c) { return is_upper_ascii(c); });
    if (caps) {
        for (char& c : out) {
            if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
        }
        return out;
    }
    if (!original.empty() && is_upper_ascii(original[0]) && !out.empty() && out[0] >= 'a' &&
        out[0] <= 'z') {
        out[0] = static_cast<char>(out[0] - 'a' + 'A');
    }
    return out;
}

// Swaps one randomly chosen pair of adjacent comma-delimited clauses inside
// a randomly chosen sentence that contains a comma. No-op without commas.
std::string swap_clauses(const std::string& text, Rng& rng) {
    const TokenizedText tt = tokenize(text);
    std::vector<std::size_t> with_comma;
    for (std::size_t i = 0; i < tt.sentences.size(); ++i) {
        const auto& s = tt.sentences[i];
        if (text.find(',', s.byte_begin) < s.byte_end) with_comma.push_back(i);
    }
    if (with_comma.empty()) return text;

    const Sentence& s = tt.sentences[with_comma[rng.below(with_comma.size())]];
    const std::string body = text.substr(s.byte_begin, s.byte_end - s.byte_begin);

    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = body.find(',', start);
        if (comma == std::string::npos) {
            parts.push_back(body.substr(start));
            break;
        }
        parts.push_back(body.substr(start, comma - start));
        start = comma + 1;
    }
    const std::size_t k = rng.below(parts.size() - 1);

    // Preserve the sentence terminator's position by trimming it off the
    // final clause before the swap.
    std::string tail;
    std::string& last = parts.back();
    while (!last.empty() && (last.back() == '.' || last.back() == '!' || last.back() == '?')) {
        tail.insert(tail.begin(), last.back());
        last.pop_back();
    }
    std::swap(parts[k], parts[k + 1]);

    std::string rebuilt;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) rebuilt += ',';
        rebuilt += parts[i];
    }
    rebuilt += tail;
    return text.substr(0, s.byte_begin) + rebuilt + text.substr(s.byte_end);
}

}  // namespace

std::string mutate(const std::string& text, const SynonymTable& table, double rate, Rng& rng) {
    const TokenizedText tt = tokenize(text);

    std::string out;
    out.reserve(text.size());
    std::size_t cursor = 0;
    for (const Token& tok : tt.tokens) {
        out.append(text, cursor, tok.begin - cursor);
        cursor = tok.end;

        const std::vector<std::string> alts = table.alternatives(tok.lower);
        if (!alts.empty() && rng.bernoulli(rate)) {
            out += match_case(alts[rng.below(alts.size())], tok.original);
        } else {
            out += tok.original;
        }
    }
    out.append(text, cursor, text.size() - cursor);

    if (rng.bernoulli(rate)) out = swap_clauses(out, rng);
    return out;
}

double tfidf_similarity(const std::string& a, const std::string& b,
                        const FeaturePipeline& pipeline) {
    if (pipeline.mode != FeaturePipeline::Mode::TfidfStylo) {
        throw DataError("similarity needs a text-vectorizing feature pipeline");
    }
    return cosine(vectorize_tfidf(a, pipeline.vocab), vectorize_tfidf(b, pipeline.vocab));
}

double fitness(const std::string& candidate, const std::string& original,
               const ModelParams& params, const FeaturePipeline& pipeline,
               std::size_t true_class, const ObfuscationConfig& config) {
    if (true_class >= params.num_classes) throw DataError("true class index out of range");
    const Prediction pred = predict(pipeline.transform_text(candidate), params);
    const double sim = tfidf_similarity(candidate, original, pipeline);
    return config.w_probability * (1.0 - pred.p_attrib[true_class]) + config.w_similarity * sim;
}

namespace {

struct Candidate {
    std::string text;
    double fit = 0.0;
    double sim = 0.0;
};

// Single-point sentence-level crossover; parents with fewer than two
// sentences pass the first parent through.
std::string crossover(const std::string& a, const std::string& b, Rng& rng) {
    const TokenizedText ta = tokenize(a);
    const TokenizedText tb = tokenize(b);
    const std::size_t na = ta.sentences.size();
    const std::size_t nb = tb.sentences.size();
    if (na < 2 || nb < 2) return a;

    const std::size_t cut = 1 + rng.below(std::min(na, nb) - 1);
    std::string out;
    for (std::size_t i = 0; i < cut; ++i) {
        const auto& s = ta.sentences[i];
        if (!out.empty()) out += ' ';
        out += a.substr(s.byte_begin, s.byte_end - s.byte_begin);
    }
    for (std::size_t i = cut; i < nb; ++i) {
        const auto& s = tb.sentences[i];
        if (!out.empty()) out += ' ';
        out += b.substr(s.byte_begin, s.byte_end - s.byte_begin);
    }
    return out;
}

}  // namespace

ObfuscationResult mutant_x(const std::string& text, const ModelParams& params,
                           const FeaturePipeline& pipeline, std::size_t true_class,
                           const ObfuscationConfig& config, Rng rng) {
    config.validate();
    const SynonymTable& table = default_synonym_table();

    auto p_true = [&](const std::string& t) {
        return predict(pipeline.transform_text(t), params).p_attrib[true_class];
    };
    auto evaluate = [&](std::string t) {
        Candidate c;
        c.sim = tfidf_similarity(t, text, pipeline);
        c.fit = config.w_probability * (1.0 - p_true(t)) + config.w_similarity * c.sim;
        c.text = std::move(t);
        return c;
    };

    // The original is feasible by definition (similarity 1 with itself).
    Candidate best;
    best.text = text;
    best.sim = 1.0;
    best.fit = config.w_probability * (1.0 - p_true(text)) + config.w_similarity;

    std::vector<Candidate> population;
    population.reserve(config.population_size);
    for (std::size_t i = 0; i < config.population_size; ++i) {
        population.push_back(evaluate(mutate(text, table, config.mutation_rate, rng)));
    }

    auto consider = [&](const Candidate& c) {
        if (c.sim >= config.similarity_floor && c.fit > best.fit) best = c;
    };
    for (const auto& c : population) consider(c);

    ObfuscationResult result;
    for (std::size_t gen = 0; gen < config.generations; ++gen) {
        std::vector<const Candidate*> feasible;
        for (const auto& c : population) {
            if (c.sim >= config.similarity_floor) feasible.push_back(&c);
        }
        // Tournament of size 3 over feasible candidates; the best-so-far
        // (at worst the original) stands in when no candidate is feasible.
        auto tournament = [&]() -> const Candidate& {
            if (feasible.empty()) return best;
            const Candidate* winner = feasible[rng.below(feasible.size())];
            for (int i = 0; i < 2; ++i) {
                const Candidate* c = feasible[rng.below(feasible.size())];
                if (c->fit > winner->fit) winner = c;
            }
            return *winner;
        };

        std::vector<Candidate> next;
        next.reserve(config.population_size);
        while (next.size() < config.population_size) {
            const Candidate& parent_a = tournament();
            std::string child = parent_a.text;
            if (rng.bernoulli(config.crossover_rate)) {
                const Candidate& parent_b = tournament();
                child = crossover(parent_a.text, parent_b.text, rng);
            }
            Candidate c = evaluate(mutate(child, table, config.mutation_rate, rng));
            consider(c);
            next.push_back(std::move(c));
        }
        population = std::move(next);
        result.trace.push_back(best.fit);
    }

    result.text = best.text;
    result.fitness = best.fit;
    result.similarity = best.sim;
    return result;
}

ObfuscationResult mutant_x(const std::string& text, const ModelParams& params,
                           const FeaturePipeline& pipeline, std::size_t true_class,
                           const ObfuscationConfig& config) {
    return mutant_x(text, params, pipeline, true_class, config, Rng(config.seed));
}

std::string back_translate(const std::string& text, TranslatorAdapter& adapter,
                           const std::string& source_lang, const std::string& pivot_lang) {
    const std::string pivoted = adapter.translate(text, source_lang, pivot_lang);
    return adapter.translate(pivoted, pivot_lang, source_lang);
}

RobustnessReport robustness_eval(const ModelParams& params, const Dataset& dataset,
                                 const FeaturePipeline& pipeline, const std::string& attack_name,
                                 const AttackFn& attack, const ObfuscationConfig& config,
                                 std::size_t per_class_cap) {
    config.validate();
    if (pipeline.mode != FeaturePipeline::Mode::TfidfStylo) {
        throw DataError("robustness evaluation needs a text-vectorizing feature pipeline");
    }
    if (per_class_cap == 0) throw UsageError("per-class sample cap must be positive");

    RobustnessReport report;
    report.attack_name = attack_name;

    double sim_sum = 0.0;
    std::size_t sim_count = 0;

    const LabelSpace& space = dataset.label_space;
    for (std::size_t c = 0; c < space.num_classes(); ++c) {
        RobustnessReport::ClassRow row;
        row.class_name = space.classes[c];

        std::vector<std::size_t> indices;
        for (std::size_t i = 0; i < dataset.size(); ++i) {
            if (dataset.class_index(dataset.samples[i]) == c) indices.push_back(i);
        }
        if (indices.empty()) {
            row.absent = true;
            report.per_class.push_back(std::move(row));
            continue;
        }

        Rng selector = Rng::fork(config.seed, "select:" + row.class_name);
        selector.shuffle(indices);
        if (indices.size() > per_class_cap) indices.resize(per_class_cap);
        std::sort(indices.begin(), indices.end());

        std::size_t correct_before = 0;
        std::size_t correct_after = 0;
        double row_sim_sum = 0.0;
        std::size_t row_sim_count = 0;
        for (std::size_t idx : indices) {
            const TextSample& sample = dataset.samples[idx];
            ++row.evaluated;
            if (predict(pipeline.transform(sample), params).attrib_label == c) ++correct_before;

            Rng stream = Rng::fork(config.seed, sample.id);
            const std::optional<std::string> attacked = attack(sample, stream);
            if (!attacked.has_value()) {
                ++row.skipped;
                continue;
            }

            const std::string* eval_text = &*attacked;
            const double sim = tfidf_similarity(*attacked, sample.text, pipeline);
            if (sim < config.similarity_floor) {
                // Below the floor the attack output is unusable; fall back
                // to the unmodified text.
                ++row.rejected;
                eval_text = &sample.text;
            } else {
                row_sim_sum += sim;
                ++row_sim_count;
            }
            if (predict(pipeline.transform_text(*eval_text), params).attrib_label == c) {
                ++correct_after;
            }
        }

        row.original_accuracy =
            static_cast<double>(correct_before) / static_cast<double>(row.evaluated);
        const std::size_t attacked_n = row.evaluated - row.skipped;
        if (attacked_n > 0) {
            row.attacked_accuracy =
                static_cast<double>(correct_after) / static_cast<double>(attacked_n);
            row.delta = row.attacked_accuracy - row.original_accuracy;
        } else {
            // Attack fully unavailable for this class: report no change.
            row.attacked_accuracy = row.original_accuracy;
            row.delta = 0.0;
        }
        row.mean_similarity =
            row_sim_count > 0 ? row_sim_sum / static_cast<double>(row_sim_count) : 1.0;
        sim_sum += row_sim_sum;
        sim_count += row_sim_count;
        report.per_class.push_back(std::move(row));
    }

    report.mean_similarity = sim_count > 0 ? sim_sum / static_cast<double>(sim_count) : 1.0;
    return report;
}

}  // namespace mgtkit
