#pragma once

#include "mgtkit/corpus.hpp"
#include "mgtkit/model.hpp"
#include "mgtkit/pipeline.hpp"
#include "mgtkit/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace mgtkit {

struct ObfuscationConfig {
    std::size_t population_size = 20;
    std::size_t generations = 25;
    double mutation_rate = 0.05;   // per-token synonym replacement probability
    double crossover_rate = 0.3;
    double w_probability = 0.5;    // weight on 1 - p(true class)
    double w_similarity = 0.5;     // weight on TF-IDF cosine to the original
    double similarity_floor = 0.7;
    std::uint64_t seed = 42;

    void validate() const;  // throws UsageError
};

// Embedded synonym groups; lookups are by lowercased word.
struct SynonymTable {
    std::vector<std::vector<std::string>> groups;
    std::unordered_map<std::string, std::size_t> index;

    // Alternatives for `lower`, excluding the word itself; empty when the
    // word is not in the table.
    std::vector<std::string> alternatives(const std::string& lower) const;
    std::size_t size() const { return index.size(); }
};

const SynonymTable& default_synonym_table();

// One mutation pass: each eligible token is independently replaced by a
// uniformly drawn synonym with probability `rate` (casing preserved), and
// with probability `rate` one pair of adjacent comma-delimited clauses in a
// random sentence is swapped.
std::string mutate(const std::string& text, const SynonymTable& table, double rate, Rng& rng);

// TF-IDF cosine between two texts under the pipeline vocabulary.
double tfidf_similarity(const std::string& a, const std::string& b,
                        const FeaturePipeline& pipeline);

// w_probability * (1 - p_attrib[true_class]) + w_similarity * similarity;
// higher means a better obfuscation candidate.
double fitness(const std::string& candidate, const std::string& original,
               const ModelParams& params, const FeaturePipeline& pipeline,
               std::size_t true_class, const ObfuscationConfig& config);

struct ObfuscationResult {
    std::string text;
    double fitness = 0.0;
    double similarity = 1.0;
    // Best feasible fitness seen after each generation; non-decreasing.
    std::vector<double> trace;
};

// Genetic obfuscation: seeded population of mutants, tournament selection of
// size 3 over feasible candidates (similarity >= floor), sentence-level
// single-point crossover, then mutation. Returns the fittest feasible
// candidate ever seen; the original text is the fallback.
ObfuscationResult mutant_x(const std::string& text, const ModelParams& params,
                           const FeaturePipeline& pipeline, std::size_t true_class,
                           const ObfuscationConfig& config, Rng rng);
ObfuscationResult mutant_x(const std::string& text, const ModelParams& params,
                           const FeaturePipeline& pipeline, std::size_t true_class,
                           const ObfuscationConfig& config);

// Round-trip translation contract. Implementations throw DataError on
// transport failure and must be total on UTF-8 input otherwise.
class TranslatorAdapter {
  public:
    virtual ~TranslatorAdapter() = default;
    virtual std::string name() const = 0;
    virtual std::string translate(const std::string& text, const std::string& source,
                                  const std::string& target) = 0;
    // Whether concurrent translate calls are allowed.
    virtual bool thread_safe() const { return false; }
};

// source -> pivot -> source through the adapter.
std::string back_translate(const std::string& text, TranslatorAdapter& adapter,
                           const std::string& source_lang, const std::string& pivot_lang = "fr");

// Runs a user-supplied command per call: the input text on stdin, the
// translation on stdout. Source and target land in the TRANSLATE_SOURCE and
// TRANSLATE_TARGET environment variables. Nonzero exit is a transport error.
class CommandTranslator : public TranslatorAdapter {
  public:
    explicit CommandTranslator(std::string command) : command_(std::move(command)) {}
    std::string name() const override { return "command"; }
    std::string translate(const std::string& text, const std::string& source,
                          const std::string& target) override;

  private:
    std::string command_;
};

// POST {"text", "source", "target"} as JSON; expects {"text"} back.
class HttpTranslator : public TranslatorAdapter {
  public:
    HttpTranslator(std::string host, int port, std::string path = "/translate")
        : host_(std::move(host)), port_(port), path_(std::move(path)) {}
    std::string name() const override { return "http"; }
    std::string translate(const std::string& text, const std::string& source,
                          const std::string& target) override;
    bool thread_safe() const override { return true; }

  private:
    std::string host_;
    int port_;
    std::string path_;
};

// Deterministic dictionary-swap stand-in for machine translation: maps known
// words into a small pivot lexicon and back, lossy by design (near-synonyms
// collapse on the return trip). Unknown words pass through.
class StubTranslator : public TranslatorAdapter {
  public:
    StubTranslator();
    std::string name() const override { return "stub"; }
    std::string translate(const std::string& text, const std::string& source,
                          const std::string& target) override;
    bool thread_safe() const override { return true; }

  private:
    std::unordered_map<std::string, std::string> to_pivot_;
    std::unordered_map<std::string, std::string> from_pivot_;
};

// Attack callback: obfuscated text, or nullopt when the attack had to be
// skipped (e.g. translator transport failure).
using AttackFn = std::function<std::optional<std::string>(const TextSample&, Rng&)>;

struct RobustnessReport {
    struct ClassRow {
        std::string class_name;
        bool absent = false;          // class missing from the dataset
        std::size_t evaluated = 0;
        std::size_t skipped = 0;      // attack unavailable (transport failure)
        std::size_t rejected = 0;     // attack output below the similarity floor
        double original_accuracy = 0.0;
        double attacked_accuracy = 0.0;
        double delta = 0.0;           // attacked - original
        double mean_similarity = 1.0;  // over accepted outputs
    };

    std::string attack_name;
    std::vector<ClassRow> per_class;
    double mean_similarity = 1.0;  // over all accepted outputs
};

// Per-class attribution accuracy before/after an attack on up to
// `per_class_cap` samples per class (seeded selection; each sample's attack
// draws from an independent stream derived from the config seed and the
// sample id). Outputs below the similarity floor are rejected and replaced
// by the original text.
RobustnessReport robustness_eval(const ModelParams& params, const Dataset& dataset,
                                 const FeaturePipeline& pipeline, const std::string& attack_name,
                                 const AttackFn& attack, const ObfuscationConfig& config,
                                 std::size_t per_class_cap = 500);

}  // namespace mgtkit
