#include "mgtkit/obfuscation.hpp"

#include "mgtkit/corpus.hpp"
#include "mgtkit/errors.hpp"
#include "mgtkit/model.hpp"
#include "mgtkit/pipeline.hpp"
#include "mgtkit/rng.hpp"
#include "mgtkit/text.hpp"

#include <doctest.h>
#include <httplib.h>
#include <json.hpp>

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

using namespace mgtkit;

namespace {

// Corpus whose vocabulary covers several synonym groups, so substituting a
// synonym moves the TF-IDF vector in a predictable way. Every term appears
// in exactly two documents, which makes all IDF values equal and turns
// cosine similarities into simple overlap ratios.
Dataset word_corpus() {
    Dataset ds;
    ds.label_space = {{"human", "model-a"}, 0};
    ds.samples = {
        {"big large huge sizable house home alpha beta", "human", "en", "w1"},
        {"big large huge sizable dwelling residence alpha beta", "human", "en", "w2"},
        {"small little gamma delta house home omega", "model-a", "en", "w3"},
        {"small little gamma delta dwelling residence omega", "model-a", "en", "w4"},
    };
    return ds;
}

struct AttackFixture {
    Dataset corpus;
    FeaturePipeline pipeline;
    ModelParams params;

    std::size_t term(const std::string& t) const {
        const std::size_t i = pipeline.vocab.index_of(t);
        REQUIRE(i != Vocabulary::npos);
        return i;
    }

    double p_true(const std::string& text, std::size_t cls) const {
        return predict(pipeline.transform_text(text), params).p_attrib[cls];
    }
};

// Pass-through encoder with hand-set attribution weights: documents
// containing "big" score as class 0, documents containing any replacement
// of "big" score as class 1. No training involved, so every probability is
// a deterministic function of the TF-IDF vector.
AttackFixture make_fixture() {
    AttackFixture f;
    f.corpus = word_corpus();
    FeatureOptions opts;
    opts.min_df = 2;
    opts.max_terms = 2000;
    f.pipeline = fit_pipeline(f.corpus, opts);

    f.params = init_params(f.pipeline.dim(), {}, 0, 2, Activation::Linear, 0.0, 1);
    std::fill(f.params.w_d.begin(), f.params.w_d.end(), 0.0);
    f.params.b_d = 0.0;
    f.params.w_a = Mat(2, f.pipeline.dim(), 0.0);
    f.params.b_a.assign(2, 0.0);
    f.params.w_a(0, f.term("big")) = 8.0;
    f.params.w_a(1, f.term("large")) = 8.0;
    f.params.w_a(1, f.term("huge")) = 8.0;
    f.params.w_a(1, f.term("sizable")) = 8.0;
    return f;
}

// Dataset the hand-set model classifies perfectly: "Big" marks class 0 and
// "Large" marks class 1.
Dataset separable_eval_dataset() {
    Dataset ds;
    ds.label_space = {{"human", "model-a"}, 0};
    ds.samples = {
        {"Big alpha beta.", "human", "en", "h1"},
        {"Big gamma delta.", "human", "en", "h2"},
        {"Big alpha delta.", "human", "en", "h3"},
        {"Large alpha beta.", "model-a", "en", "m1"},
        {"Large gamma delta.", "model-a", "en", "m2"},
    };
    return ds;
}

bool all_ascii_upper(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= 'A' && c <= 'Z'; });
}

}  // namespace

TEST_SUITE("obfuscation") {

// --- configuration -------------------------------------------------------

TEST_CASE("obfuscation config accepts the defaults and rejects bad fields") {
    ObfuscationConfig config;
    CHECK_NOTHROW(config.validate());

    SUBCASE("population must hold at least two candidates") {
        config.population_size = 1;
        CHECK_THROWS_WITH_AS(config.validate(), doctest::Contains("population_size"), UsageError);
        config.population_size = 0;
        CHECK_THROWS_AS(config.validate(), UsageError);
    }
    SUBCASE("rates live in the unit interval") {
        config.mutation_rate = -0.1;
        CHECK_THROWS_WITH_AS(config.validate(), doctest::Contains("mutation_rate"), UsageError);
        config.mutation_rate = 1.1;
        CHECK_THROWS_AS(config.validate(), UsageError);
        config.mutation_rate = 0.05;
        config.crossover_rate = -0.2;
        CHECK_THROWS_WITH_AS(config.validate(), doctest::Contains("crossover_rate"), UsageError);
        config.crossover_rate = 1.5;
        CHECK_THROWS_AS(config.validate(), UsageError);
    }
    SUBCASE("fitness weights must be a convex combination") {
        config.w_probability = 0.6;
        config.w_similarity = 0.6;
        CHECK_THROWS_WITH_AS(config.validate(), doctest::Contains("fitness weights"), UsageError);
        config.w_probability = -0.2;
        config.w_similarity = 1.2;
        CHECK_THROWS_AS(config.validate(), UsageError);
        config.w_probability = 1.0;
        config.w_similarity = 0.0;
        CHECK_NOTHROW(config.validate());  // one-sided weighting is legal
    }
    SUBCASE("similarity floor lives in (0, 1]") {
        config.similarity_floor = 0.0;
        CHECK_THROWS_WITH_AS(config.validate(), doctest::Contains("similarity_floor"), UsageError);
        config.similarity_floor = 1.01;
        CHECK_THROWS_AS(config.validate(), UsageError);
        config.similarity_floor = 1.0;
        CHECK_NOTHROW(config.validate());
    }
}

// --- synonym table -------------------------------------------------------

TEST_CASE("synonym table lists a word's group mates excluding the word itself") {
    const SynonymTable& table = default_synonym_table();
    CHECK(table.size() > 500);  // embedded table is substantial

    const std::vector<std::string> big = table.alternatives("big");
    CHECK(big == std::vector<std::string>{"large", "huge", "sizable"});
    const std::vector<std::string> large = table.alternatives("large");
    CHECK(large == std::vector<std::string>{"big", "huge", "sizable"});
}

TEST_CASE("synonym lookups are lowercase-keyed and unknown words have no alternatives") {
    const SynonymTable& table = default_synonym_table();
    CHECK(table.alternatives("Big").empty());  // caller lowercases
    CHECK(table.alternatives("zzzunknown").empty());
    CHECK(table.alternatives("").empty());
}

TEST_CASE("words in several groups resolve to their first group") {
    const SynonymTable& table = default_synonym_table();
    // "poor" sits in both the bad-group and the impoverished-group; the
    // first group to claim a word keeps it.
    const std::vector<std::string> poor = table.alternatives("poor");
    CHECK(poor == std::vector<std::string>{"bad", "lousy"});
}

TEST_CASE("every indexed word maps into a group that contains it exactly once") {
    const SynonymTable& table = default_synonym_table();
    for (const auto& [word, gi] : table.index) {
        REQUIRE(gi < table.groups.size());
        const auto& group = table.groups[gi];
        CHECK(std::count(group.begin(), group.end(), word) == 1);
        const std::vector<std::string> alts = table.alternatives(word);
        CHECK(alts.size() == group.size() - 1);
        CHECK(std::find(alts.begin(), alts.end(), word) == alts.end());
    }
}

// --- mutation operator ---------------------------------------------------

TEST_CASE("mutation at rate zero is the identity") {
    const SynonymTable& table = default_synonym_table();
    const std::vector<std::string> texts = {
        "The big man and the small woman walk to the old house.",
        "alpha beta, gamma delta.",
        "Unicode stays intact: caf\xc3\xa9 na\xc3\xafve !",
        "",
    };
    for (const std::string& text : texts) {
        Rng rng(99);
        CHECK(mutate(text, table, 0.0, rng) == text);
    }
}

TEST_CASE("mutation at rate one replaces every word that has synonyms") {
    const SynonymTable& table = default_synonym_table();
    Rng rng(5);
    const std::string out = mutate("Big house.", table, 1.0, rng);

    const TokenizedText tt = tokenize(out);
    REQUIRE(tt.tokens.size() == 2);
    const std::set<std::string> big_alts = {"large", "huge", "sizable"};
    const std::set<std::string> house_alts = {"home", "dwelling", "residence"};
    CHECK(big_alts.count(tt.tokens[0].lower) == 1);
    CHECK(house_alts.count(tt.tokens[1].lower) == 1);
    // Casing mirrors the source token: "Big" was capitalized.
    CHECK(tt.tokens[0].original[0] >= 'A');
    CHECK(tt.tokens[0].original[0] <= 'Z');
    CHECK(out.back() == '.');
}

TEST_CASE("mutation preserves all-caps tokens and inter-token gaps") {
    const SynonymTable& table = default_synonym_table();
    Rng rng(7);
    const std::string caps = mutate("BIG house.", table, 1.0, rng);
    const TokenizedText tt = tokenize(caps);
    REQUIRE(tt.tokens.size() == 2);
    CHECK(all_ascii_upper(tt.tokens[0].original));

    Rng rng2(8);
    const std::string gaps = mutate("big   house", table, 1.0, rng2);
    CHECK(gaps.find("   ") != std::string::npos);  // triple space survives
    const TokenizedText tg = tokenize(gaps);
    REQUIRE(tg.tokens.size() == 2);
    CHECK(tg.tokens[0].original[0] >= 'a');  // lowercase source stays lowercase
}

TEST_CASE("mutation swaps adjacent clauses around a comma") {
    const SynonymTable& table = default_synonym_table();
    // None of these words has synonyms, so at rate 1 the only edit left is
    // the clause swap, which is forced and has a single possible outcome.
    for (std::uint64_t seed : {1ULL, 2ULL, 77ULL}) {
        Rng rng(seed);
        CHECK(mutate("alpha beta, gamma delta.", table, 1.0, rng) ==
              " gamma delta,alpha beta.");
    }
}

TEST_CASE("mutation is reproducible for a fixed stream") {
    const SynonymTable& table = default_synonym_table();
    const std::string text =
        "The big man and the small woman walk to the old house, and they "
        "see a new friend in the city.";
    Rng r1(123);
    Rng r2(123);
    const std::string a = mutate(text, table, 0.6, r1);
    const std::string b = mutate(text, table, 0.6, r2);
    CHECK(a == b);
}

// --- similarity and fitness ----------------------------------------------

TEST_CASE("tf-idf similarity is one on identical text and zero on disjoint terms") {
    const AttackFixture f = make_fixture();
    CHECK(tfidf_similarity("Big alpha beta.", "Big alpha beta.", f.pipeline) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tfidf_similarity("alpha beta", "gamma delta", f.pipeline) == 0.0);
    // Out-of-vocabulary text vectorizes to zero; cosine treats that as 0.
    CHECK(tfidf_similarity("qq rr ss", "alpha", f.pipeline) == 0.0);
}

TEST_CASE("similarity and robustness require a text-vectorizing pipeline") {
    EmbeddingStore store;
    store.dim = 2;
    const FeaturePipeline external = external_pipeline(std::move(store));
    CHECK_THROWS_WITH_AS(tfidf_similarity("a", "b", external),
                         doctest::Contains("text-vectorizing"), DataError);
}

TEST_CASE("fitness blends escape probability and similarity by the configured weights") {
    const AttackFixture f = make_fixture();
    const std::string original = "Big alpha beta.";
    const std::string candidate = "Huge alpha beta.";
    const double p_cand = f.p_true(candidate, 0);
    const double sim = tfidf_similarity(candidate, original, f.pipeline);

    ObfuscationConfig prob_only;
    prob_only.w_probability = 1.0;
    prob_only.w_similarity = 0.0;
    CHECK(fitness(candidate, original, f.params, f.pipeline, 0, prob_only) ==
          doctest::Approx(1.0 - p_cand).epsilon(1e-12));

    ObfuscationConfig sim_only;
    sim_only.w_probability = 0.0;
    sim_only.w_similarity = 1.0;
    CHECK(fitness(candidate, original, f.params, f.pipeline, 0, sim_only) ==
          doctest::Approx(sim).epsilon(1e-12));

    ObfuscationConfig half;  // defaults: 0.5 / 0.5
    CHECK(fitness(candidate, original, f.params, f.pipeline, 0, half) ==
          doctest::Approx(0.5 * (1.0 - p_cand) + 0.5 * sim).epsilon(1e-12));
}

TEST_CASE("swapping out the incriminating term raises probability-only fitness") {
    const AttackFixture f = make_fixture();
    const std::string original = "Big alpha beta.";
    ObfuscationConfig prob_only;
    prob_only.w_probability = 1.0;
    prob_only.w_similarity = 0.0;
    const double kept = fitness(original, original, f.params, f.pipeline, 0, prob_only);
    const double swapped = fitness("Huge alpha beta.", original, f.params, f.pipeline, 0, prob_only);
    CHECK(swapped > kept);
}

TEST_CASE("fitness rejects an out-of-range true class") {
    const AttackFixture f = make_fixture();
    ObfuscationConfig config;
    CHECK_THROWS_WITH_AS(fitness("Big alpha beta.", "Big alpha beta.", f.params, f.pipeline, 2, config),
                         doctest::Contains("true class"), DataError);
}

// --- genetic search ------------------------------------------------------

TEST_CASE("genetic search returns a feasible candidate no worse than the original") {
    const AttackFixture f = make_fixture();
    const std::string text = "Big alpha beta gamma, delta omega.";

    ObfuscationConfig config;
    config.population_size = 8;
    config.generations = 6;
    config.mutation_rate = 0.35;
    config.crossover_rate = 0.3;
    config.similarity_floor = 0.7;
    config.seed = 7;

    const ObfuscationResult result = mutant_x(text, f.params, f.pipeline, 0, config);

    REQUIRE(result.trace.size() == config.generations);
    CHECK(std::is_sorted(result.trace.begin(), result.trace.end()));
    CHECK(result.trace.back() == result.fitness);
    CHECK(result.similarity >= config.similarity_floor - 1e-12);

    const double original_fit = fitness(text, text, f.params, f.pipeline, 0, config);
    CHECK(result.fitness >= original_fit - 1e-9);
    // The reported fitness is reproducible from the returned text.
    const double recomputed = fitness(result.text, text, f.params, f.pipeline, 0, config);
    CHECK(result.fitness == doctest::Approx(recomputed).epsilon(1e-9));
}

TEST_CASE("genetic search is deterministic for a fixed seed") {
    const AttackFixture f = make_fixture();
    const std::string text = "Big alpha beta gamma, delta omega.";
    ObfuscationConfig config;
    config.population_size = 6;
    config.generations = 4;
    config.mutation_rate = 0.4;
    config.seed = 21;

    const ObfuscationResult a = mutant_x(text, f.params, f.pipeline, 0, config);
    const ObfuscationResult b = mutant_x(text, f.params, f.pipeline, 0, config);
    CHECK(a.text == b.text);
    CHECK(a.fitness == b.fitness);
    CHECK(a.similarity == b.similarity);
    CHECK(a.trace == b.trace);

    const ObfuscationResult c = mutant_x(text, f.params, f.pipeline, 0, config, Rng(config.seed));
    CHECK(c.text == a.text);
    CHECK(c.trace == a.trace);
}

TEST_CASE("genetic search drives down the true-class probability when it can") {
    const AttackFixture f = make_fixture();
    const std::string text = "Big alpha beta gamma, delta omega.";
    ObfuscationConfig config;
    config.population_size = 10;
    config.generations = 8;
    config.mutation_rate = 0.4;
    config.w_probability = 1.0;  // pure escape objective
    config.w_similarity = 0.0;
    config.similarity_floor = 0.6;
    config.seed = 11;

    const double p_before = f.p_true(text, 0);
    CHECK(p_before > 0.9);  // the planted term dominates

    const ObfuscationResult result = mutant_x(text, f.params, f.pipeline, 0, config);
    const double p_after = f.p_true(result.text, 0);
    CHECK(p_after <= p_before + 1e-12);  // weight-1 fitness is exactly 1 - p
    CHECK(p_after < 0.5);                // the planted term was replaced
    CHECK(result.text != text);
    CHECK(result.similarity >= 0.6);
}

TEST_CASE("genetic search falls back to the original when no edit is possible") {
    const AttackFixture f = make_fixture();
    ObfuscationConfig config;
    config.population_size = 4;
    config.generations = 3;
    config.seed = 5;

    // Out-of-vocabulary words with no synonyms: every mutant equals the
    // original but vectorizes to zero, so only the original is feasible.
    const ObfuscationResult oov = mutant_x("qq rr ss.", f.params, f.pipeline, 0, config);
    CHECK(oov.text == "qq rr ss.");
    CHECK(oov.similarity == 1.0);
    // Zero logits make both classes equally likely, so the fitness is
    // exactly 0.5 * (1 - 0.5) + 0.5 * 1.
    CHECK(oov.fitness == doctest::Approx(0.75).epsilon(1e-12));
    for (double fit : oov.trace) CHECK(fit == doctest::Approx(0.75).epsilon(1e-12));

    // In-vocabulary but synonym-free and comma-free: mutants are verbatim
    // copies and the result is the original text.
    const ObfuscationResult flat = mutant_x("alpha beta gamma.", f.params, f.pipeline, 0, config);
    CHECK(flat.text == "alpha beta gamma.");
}

TEST_CASE("genetic search with zero generations still screens the seed population") {
    const AttackFixture f = make_fixture();
    ObfuscationConfig config;
    config.population_size = 6;
    config.generations = 0;
    config.mutation_rate = 0.5;
    config.seed = 3;

    const std::string text = "Big alpha beta gamma, delta omega.";
    const ObfuscationResult result = mutant_x(text, f.params, f.pipeline, 0, config);
    CHECK(result.trace.empty());
    CHECK(result.similarity >= config.similarity_floor - 1e-12);
    const double original_fit = fitness(text, text, f.params, f.pipeline, 0, config);
    CHECK(result.fitness >= original_fit - 1e-9);
}

TEST_CASE("genetic search validates its configuration") {
    const AttackFixture f = make_fixture();
    ObfuscationConfig bad;
    bad.population_size = 1;
    CHECK_THROWS_AS(mutant_x("Big alpha beta.", f.params, f.pipeline, 0, bad), UsageError);
}

// --- translator adapters ---------------------------------------------------

TEST_CASE("stub translator maps into the pivot lexicon and back") {
    StubTranslator stub;
    CHECK(stub.name() == "stub");
    CHECK(stub.thread_safe());

    // Same language: identity.
    CHECK(stub.translate("Anything goes.", "en", "en") == "Anything goes.");

    // Forward pass, with first-letter casing carried over.
    CHECK(stub.translate("The good man was in the big house.", "en", "fr") ==
          "Le bon homme etait dans le grand maison.");
    // Reverse pass restores the canonical word for each pivot entry.
    CHECK(stub.translate("Le bon homme etait dans le grand maison.", "fr", "en") ==
          "The good man was in the big house.");

    // Unknown language pair: pass-through.
    CHECK(stub.translate("the big day", "en", "de") == "the big day");

    // All-caps source tokens keep only their leading capital.
    CHECK(stub.translate("THE DAY", "en", "fr") == "Le Jour");
}

TEST_CASE("back-translation is lossy where near-synonyms share a pivot word") {
    StubTranslator stub;
    // great and terrible collapse onto the canonical good / bad.
    CHECK(back_translate("A great day, not a terrible night.", stub, "en") ==
          "A good day, not a bad night.");
    // were collapses onto was; little is the canonical petit.
    CHECK(back_translate("They were little.", stub, "en") == "They was little.");
    // Words the stub knows round-trip exactly.
    CHECK(back_translate("The good man was in the big house.", stub, "en") ==
          "The good man was in the big house.");
    // A pivot the stub does not know leaves text untouched.
    CHECK(back_translate("the big day", stub, "en", "de") == "the big day");
    // Degenerate pivot equal to the source is the identity.
    CHECK(back_translate("the big day", stub, "en", "en") == "the big day");
}

TEST_CASE("command translator pipes text through a shell command") {
    CommandTranslator upper("tr a-z A-Z");
    CHECK(upper.name() == "command");
    CHECK(upper.translate("hello, world", "en", "fx") == "HELLO, WORLD");

    // Byte-exact round trip, newlines and UTF-8 included.
    CommandTranslator cat("cat");
    const std::string text = "line one\nline two \xc3\xa9\xc3\xa0\n";
    CHECK(cat.translate(text, "en", "fx") == text);
}

TEST_CASE("command translator exports the language pair to the command") {
    CommandTranslator env("printenv TRANSLATE_SOURCE TRANSLATE_TARGET");
    CHECK(env.translate("ignored", "en", "fx") == "en\nfx\n");
}

TEST_CASE("command translator reports command failure and rejects unsafe language codes") {
    CommandTranslator failing("false");
    CHECK_THROWS_WITH_AS(failing.translate("text", "en", "fr"),
                         doctest::Contains("exited with status"), DataError);

    CommandTranslator cat("cat");
    CHECK_THROWS_WITH_AS(cat.translate("text", "en;rm -rf /", "fr"),
                         doctest::Contains("language codes"), DataError);
    CHECK_THROWS_AS(cat.translate("text", "", "fr"), DataError);
    CHECK_THROWS_AS(cat.translate("text", "en", std::string(17, 'a')), DataError);
    CHECK_NOTHROW(cat.translate("text", "zh-Hant", "pt_BR"));  // dashes and underscores are fine
}

TEST_CASE("http translator posts JSON and reads the text field back") {
    httplib::Server server;
    std::string seen_source;
    std::string seen_target;
    server.Post("/translate", [&](const httplib::Request& req, httplib::Response& res) {
        const nlohmann::json body = nlohmann::json::parse(req.body);
        seen_source = body.at("source").get<std::string>();
        seen_target = body.at("target").get<std::string>();
        std::string text = body.at("text").get<std::string>();
        std::reverse(text.begin(), text.end());
        res.set_content(nlohmann::json{{"text", text}}.dump(), "application/json");
    });
    server.Post("/garbled", [](const httplib::Request&, httplib::Response& res) {
        res.set_content("not json at all", "text/plain");
    });

    const int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread serve([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    HttpTranslator http("127.0.0.1", port);
    CHECK(http.name() == "http");
    CHECK(http.thread_safe());
    CHECK(http.translate("abcdef", "en", "fx") == "fedcba");
    CHECK(seen_source == "en");
    CHECK(seen_target == "fx");

    HttpTranslator missing("127.0.0.1", port, "/nowhere");
    CHECK_THROWS_WITH_AS(missing.translate("x", "en", "fx"),
                         doctest::Contains("HTTP status 404"), DataError);

    HttpTranslator garbled("127.0.0.1", port, "/garbled");
    CHECK_THROWS_WITH_AS(garbled.translate("x", "en", "fx"),
                         doctest::Contains("JSON object"), DataError);

    server.stop();
    serve.join();
}

TEST_CASE("http translator reports unreachable endpoints") {
    HttpTranslator dead("127.0.0.1", 9);  // discard port; nothing listens here
    CHECK_THROWS_WITH_AS(dead.translate("x", "en", "fr"),
                         doctest::Contains("unreachable"), DataError);
}

// --- robustness harness ----------------------------------------------------

TEST_CASE("robustness under the identity attack reports zero deltas") {
    const AttackFixture f = make_fixture();
    const Dataset ds = separable_eval_dataset();
    ObfuscationConfig config;

    const AttackFn identity = [](const TextSample& s, Rng&) -> std::optional<std::string> {
        return s.text;
    };
    const RobustnessReport report =
        robustness_eval(f.params, ds, f.pipeline, "identity", identity, config);

    CHECK(report.attack_name == "identity");
    REQUIRE(report.per_class.size() == 2);
    const auto& human = report.per_class[0];
    const auto& machine = report.per_class[1];
    CHECK(human.class_name == "human");
    CHECK(machine.class_name == "model-a");
    CHECK(human.evaluated == 3);
    CHECK(machine.evaluated == 2);
    for (const auto& row : report.per_class) {
        CHECK_FALSE(row.absent);
        CHECK(row.skipped == 0);
        CHECK(row.rejected == 0);
        CHECK(row.original_accuracy == 1.0);  // dataset is separable by design
        CHECK(row.attacked_accuracy == 1.0);
        CHECK(row.delta == 0.0);
        CHECK(row.mean_similarity == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(report.mean_similarity == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("robustness measures the accuracy drop of a successful attack") {
    const AttackFixture f = make_fixture();
    const Dataset ds = separable_eval_dataset();
    ObfuscationConfig config;
    config.similarity_floor = 0.5;  // the swap keeps 2 of 3 terms: cosine 2/3

    const AttackFn swap_marker = [](const TextSample& s, Rng&) -> std::optional<std::string> {
        std::string text = s.text;
        const std::size_t at = text.find("Big");
        if (at != std::string::npos) text.replace(at, 3, "Large");
        return text;
    };
    const RobustnessReport report =
        robustness_eval(f.params, ds, f.pipeline, "marker-swap", swap_marker, config);

    const auto& human = report.per_class[0];
    CHECK(human.original_accuracy == 1.0);
    CHECK(human.attacked_accuracy == 0.0);  // every attacked doc now reads as model-a
    CHECK(human.delta == -1.0);
    CHECK(human.rejected == 0);
    CHECK(human.skipped == 0);
    CHECK(human.mean_similarity == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    const auto& machine = report.per_class[1];
    CHECK(machine.attacked_accuracy == 1.0);  // untouched documents keep their label
    CHECK(machine.delta == 0.0);
    CHECK(machine.mean_similarity == doctest::Approx(1.0).epsilon(1e-12));

    // 3 accepted outputs at 2/3 plus 2 at 1.0.
    CHECK(report.mean_similarity == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("attacks that return nothing are counted as skipped and change nothing") {
    const AttackFixture f = make_fixture();
    const Dataset ds = separable_eval_dataset();
    ObfuscationConfig config;

    const AttackFn skip_humans = [](const TextSample& s, Rng&) -> std::optional<std::string> {
        if (s.author == "human") return std::nullopt;
        return s.text;
    };
    const RobustnessReport report =
        robustness_eval(f.params, ds, f.pipeline, "partial", skip_humans, config);

    const auto& human = report.per_class[0];
    CHECK(human.evaluated == 3);
    CHECK(human.skipped == 3);
    CHECK(human.rejected == 0);
    CHECK(human.attacked_accuracy == human.original_accuracy);  // attack never ran
    CHECK(human.delta == 0.0);
    CHECK(human.mean_similarity == 1.0);  // no accepted outputs to average

    const auto& machine = report.per_class[1];
    CHECK(machine.skipped == 0);
    CHECK(machine.delta == 0.0);
}

TEST_CASE("outputs below the similarity floor are rejected and fall back to the original") {
    const AttackFixture f = make_fixture();
    const Dataset ds = separable_eval_dataset();
    ObfuscationConfig config;

    const AttackFn vandalize = [](const TextSample&, Rng&) -> std::optional<std::string> {
        return std::string("qq rr ss");  // out of vocabulary: similarity 0
    };
    const RobustnessReport report =
        robustness_eval(f.params, ds, f.pipeline, "vandal", vandalize, config);

    for (const auto& row : report.per_class) {
        CHECK(row.rejected == row.evaluated);
        CHECK(row.skipped == 0);
        CHECK(row.attacked_accuracy == row.original_accuracy);  // originals were evaluated
        CHECK(row.delta == 0.0);
        CHECK(row.mean_similarity == 1.0);
    }
    CHECK(report.mean_similarity == 1.0);
}

TEST_CASE("robustness caps the per-class sample count and flags absent classes") {
    const AttackFixture f = make_fixture();
    Dataset ds = separable_eval_dataset();
    ds.label_space.classes.push_back("model-b");  // no samples carry this label
    ObfuscationConfig config;

    const AttackFn identity = [](const TextSample& s, Rng&) -> std::optional<std::string> {
        return s.text;
    };
    const RobustnessReport report =
        robustness_eval(f.params, ds, f.pipeline, "identity", identity, config, 2);

    REQUIRE(report.per_class.size() == 3);
    CHECK(report.per_class[0].evaluated == 2);  // capped from 3
    CHECK(report.per_class[1].evaluated == 2);
    CHECK(report.per_class[2].class_name == "model-b");
    CHECK(report.per_class[2].absent);
    CHECK(report.per_class[2].evaluated == 0);
}

TEST_CASE("robustness reports are deterministic for a fixed seed") {
    const AttackFixture f = make_fixture();
    const Dataset ds = separable_eval_dataset();
    ObfuscationConfig config;
    config.similarity_floor = 0.5;
    config.seed = 77;

    // A randomized attack: replace the marker only when the per-sample
    // stream says so. Reruns must see identical streams.
    const AttackFn coin_swap = [](const TextSample& s, Rng& rng) -> std::optional<std::string> {
        if (!rng.bernoulli(0.5)) return s.text;
        std::string text = s.text;
        const std::size_t at = text.find("Big");
        if (at != std::string::npos) text.replace(at, 3, "Large");
        return text;
    };

    const RobustnessReport a =
        robustness_eval(f.params, ds, f.pipeline, "coin", coin_swap, config, 2);
    const RobustnessReport b =
        robustness_eval(f.params, ds, f.pipeline, "coin", coin_swap, config, 2);
    REQUIRE(a.per_class.size() == b.per_class.size());
    for (std::size_t i = 0; i < a.per_class.size(); ++i) {
        CHECK(a.per_class[i].evaluated == b.per_class[i].evaluated);
        CHECK(a.per_class[i].skipped == b.per_class[i].skipped);
        CHECK(a.per_class[i].rejected == b.per_class[i].rejected);
        CHECK(a.per_class[i].original_accuracy == b.per_class[i].original_accuracy);
        CHECK(a.per_class[i].attacked_accuracy == b.per_class[i].attacked_accuracy);
        CHECK(a.per_class[i].mean_similarity == b.per_class[i].mean_similarity);
    }
    CHECK(a.mean_similarity == b.mean_similarity);
}

TEST_CASE("robustness evaluation validates its inputs") {
    const AttackFixture f = make_fixture();
    const Dataset ds = separable_eval_dataset();
    const AttackFn identity = [](const TextSample& s, Rng&) -> std::optional<std::string> {
        return s.text;
    };

    ObfuscationConfig config;
    CHECK_THROWS_WITH_AS(robustness_eval(f.params, ds, f.pipeline, "x", identity, config, 0),
                         doctest::Contains("cap"), UsageError);

    ObfuscationConfig bad;
    bad.population_size = 0;
    CHECK_THROWS_AS(robustness_eval(f.params, ds, f.pipeline, "x", identity, bad), UsageError);

    EmbeddingStore store;
    store.dim = 2;
    const FeaturePipeline external = external_pipeline(std::move(store));
    CHECK_THROWS_WITH_AS(robustness_eval(f.params, ds, external, "x", identity, config),
                         doctest::Contains("text-vectorizing"), DataError);
}

}  // TEST_SUITE
