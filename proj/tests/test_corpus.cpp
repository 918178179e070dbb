#include "mgtkit/corpus.hpp"

#include "mgtkit/errors.hpp"
#include "mgtkit/text.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

using namespace mgtkit;

namespace {

// RAII scratch file that removes itself.
struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const std::string& name, const std::string& contents)
        : path(std::filesystem::temp_directory_path() / name) {
        std::ofstream out(path, std::ios::binary);
        out << contents;
    }
    ~TempFile() { std::filesystem::remove(path); }
};

LabelSpace two_class_space() {
    return LabelSpace{{"human", "model-a"}, 0};
}

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("label space validation catches duplicates, empties, and bad indices") {
    CHECK_NOTHROW(two_class_space().validate());
    CHECK_THROWS_AS((LabelSpace{{"a", "a"}, 0}).validate(), DataError);
    CHECK_THROWS_AS((LabelSpace{{"a", ""}, 0}).validate(), DataError);
    CHECK_THROWS_AS((LabelSpace{{"a", "b"}, 2}).validate(), DataError);
    CHECK_THROWS_AS((LabelSpace{}).validate(), DataError);
}

TEST_CASE("label space index lookup") {
    const LabelSpace space = two_class_space();
    CHECK(space.index_of("human") == 0);
    CHECK(space.index_of("model-a") == 1);
    CHECK_FALSE(space.index_of("model-b").has_value());
}

TEST_CASE("detection label is zero only for the human class") {
    const LabelSpace space = two_class_space();
    CHECK(detection_label({"t", "human"}, space) == 0);
    CHECK(detection_label({"t", "model-a"}, space) == 1);
}

TEST_CASE("jsonl loading fills defaults and preserves order") {
    const TempFile f("mgtkit_corpus_ok.jsonl",
                     R"({"text": "First doc.", "author": "human", "language": "en", "id": "x1"})"
                     "\n"
                     R"({"text": "Second doc.", "author": "model-a"})"
                     "\n");
    const Dataset ds = load_jsonl(f.path.string(), two_class_space());
    REQUIRE(ds.size() == 2);
    CHECK(ds.samples[0].id == "x1");
    CHECK(ds.samples[0].language == "en");
    CHECK(ds.samples[1].id == "line-2");
    CHECK(ds.samples[1].language == "und");
    CHECK(ds.class_index(ds.samples[1]) == 1);
}

TEST_CASE("jsonl loading names the offending line") {
    const TempFile bad_json("mgtkit_corpus_badjson.jsonl",
                            R"({"text": "ok", "author": "human"})"
                            "\n"
                            "{not json\n");
    CHECK_THROWS_WITH_AS(load_jsonl(bad_json.path.string(), two_class_space()),
                         doctest::Contains("line 2"), DataError);

    const TempFile no_text("mgtkit_corpus_notext.jsonl", R"({"author": "human"})"
                                                         "\n");
    CHECK_THROWS_AS(load_jsonl(no_text.path.string(), two_class_space()), DataError);

    const TempFile bad_author("mgtkit_corpus_author.jsonl",
                              R"({"text": "hi", "author": "mystery"})"
                              "\n");
    CHECK_THROWS_AS(load_jsonl(bad_author.path.string(), two_class_space()), DataError);

    CHECK_THROWS_AS(load_jsonl("/nonexistent/nowhere.jsonl", two_class_space()), DataError);
}

TEST_CASE("save then load round-trips samples") {
    Dataset ds;
    ds.label_space = two_class_space();
    ds.samples = {{"A \"quoted\" line.\nSecond line.", "human", "en", "a"},
                  {"Unicode caf\xc3\xa9.", "model-a", "fx", "b"}};
    const auto path = std::filesystem::temp_directory_path() / "mgtkit_corpus_rt.jsonl";
    save_jsonl(ds, path.string());
    const Dataset back = load_jsonl(path.string(), ds.label_space);
    std::filesystem::remove(path);
    REQUIRE(back.size() == 2);
    CHECK(back.samples[0].text == ds.samples[0].text);
    CHECK(back.samples[0].id == "a");
    CHECK(back.samples[1].text == ds.samples[1].text);
    CHECK(back.samples[1].language == "fx");
}

TEST_CASE("label space inference sorts authors and pins the human class") {
    const TempFile f("mgtkit_corpus_infer.jsonl",
                     R"({"text": "1", "author": "zeta"})"
                     "\n"
                     R"({"text": "2", "author": "alpha"})"
                     "\n"
                     R"({"text": "3", "author": "human"})"
                     "\n"
                     R"({"text": "4", "author": "alpha"})"
                     "\n");
    const LabelSpace space = infer_label_space(f.path.string(), "human");
    CHECK(space.classes == std::vector<std::string>{"alpha", "human", "zeta"});
    CHECK(space.human_index == 1);
    CHECK_THROWS_AS(infer_label_space(f.path.string(), "not-there"), DataError);
}

TEST_CASE("unlabeled loading needs only text and tolerates empty files") {
    const TempFile f("mgtkit_corpus_unlabeled.jsonl", R"({"text": "hello"})"
                                                      "\n");
    const auto rows = load_jsonl_texts(f.path.string());
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].text == "hello");
    CHECK(rows[0].id == "line-1");

    const TempFile empty("mgtkit_corpus_empty.jsonl", "");
    CHECK(load_jsonl_texts(empty.path.string()).empty());
}

TEST_CASE("stratified split keeps per-class proportions") {
    Dataset ds;
    ds.label_space = two_class_space();
    for (int i = 0; i < 10; ++i) {
        ds.samples.push_back({"h" + std::to_string(i), "human", "en", "h" + std::to_string(i)});
        ds.samples.push_back({"m" + std::to_string(i), "model-a", "en", "m" + std::to_string(i)});
    }
    const auto [train, val] = split(ds, 0.8, 7);
    CHECK(train.size() == 16);
    CHECK(val.size() == 4);
    auto count_class = [](const Dataset& d, const std::string& author) {
        return std::count_if(d.samples.begin(), d.samples.end(),
                             [&](const TextSample& s) { return s.author == author; });
    };
    CHECK(count_class(train, "human") == 8);
    CHECK(count_class(train, "model-a") == 8);
    CHECK(count_class(val, "human") == 2);
    CHECK(count_class(val, "model-a") == 2);

    // No sample is lost or duplicated.
    std::set<std::string> ids;
    for (const auto& s : train.samples) ids.insert(s.id);
    for (const auto& s : val.samples) ids.insert(s.id);
    CHECK(ids.size() == 20);

    // Same seed, same partition; different seed may differ.
    const auto [train2, val2] = split(ds, 0.8, 7);
    REQUIRE(val2.size() == val.size());
    for (std::size_t i = 0; i < val.size(); ++i) CHECK(val2.samples[i].id == val.samples[i].id);
}

TEST_CASE("split rejects degenerate ratios and starving classes") {
    Dataset ds;
    ds.label_space = two_class_space();
    ds.samples = {{"only one human", "human", "en", "a"}, {"m", "model-a", "en", "b"},
                  {"m2", "model-a", "en", "c"}};
    CHECK_THROWS_AS(split(ds, 0.5, 1), DataError);  // human class has only one sample
    CHECK_THROWS_AS(split(ds, 1.5, 1), UsageError);
    CHECK_THROWS_AS(split(ds, 0.0, 1), UsageError);
}

TEST_CASE("synthetic generation is bit-reproducible and correctly labeled") {
    const SyntheticSpec spec = default_synthetic_spec(3, 12, 0.5, "en");
    const Dataset a = generate_synthetic(spec, 42);
    const Dataset b = generate_synthetic(spec, 42);
    const Dataset c = generate_synthetic(spec, 43);

    REQUIRE(a.size() == 4 * 12);
    CHECK(a.label_space.num_classes() == 4);
    CHECK(a.label_space.classes[a.label_space.human_index] == "human");

    REQUIRE(b.size() == a.size());
    bool identical = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.samples[i].text != b.samples[i].text || a.samples[i].id != b.samples[i].id ||
            a.samples[i].author != b.samples[i].author) {
            identical = false;
        }
    }
    CHECK(identical);

    bool seed_changes_something = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.samples[i].text != c.samples[i].text) seed_changes_something = true;
    }
    CHECK(seed_changes_something);

    // Every class contributes exactly samples_per_class documents with unique ids.
    std::set<std::string> ids;
    std::vector<std::size_t> per_class(4, 0);
    for (const auto& s : a.samples) {
        ids.insert(s.id);
        ++per_class[a.class_index(s)];
        CHECK(s.language == "en");
        CHECK_FALSE(s.text.empty());
    }
    CHECK(ids.size() == a.size());
    for (const auto n : per_class) CHECK(n == 12);
}

TEST_CASE("the two synthetic language variants share no tokens") {
    const Dataset en = generate_synthetic(default_synthetic_spec(2, 6, 0.5, "en"), 1);
    const Dataset fx = generate_synthetic(default_synthetic_spec(2, 6, 0.5, "fx"), 1);
    std::set<std::string> en_tokens;
    for (const auto& s : en.samples) {
        for (const auto& t : word_tokens(s.text)) en_tokens.insert(t);
    }
    bool overlap = false;
    for (const auto& s : fx.samples) {
        for (const auto& t : word_tokens(s.text)) {
            if (en_tokens.count(t) != 0) overlap = true;
        }
    }
    CHECK_FALSE(overlap);
    CHECK(fx.samples[0].language == "fx");
}

TEST_CASE("synthetic spec validation") {
    SyntheticSpec spec = default_synthetic_spec(2, 5, 0.5);
    CHECK_NOTHROW(spec.validate());
    spec.separation = 1.5;
    CHECK_THROWS_AS(spec.validate(), DataError);
    spec.separation = 0.5;
    spec.samples_per_class = 0;
    CHECK_THROWS_AS(spec.validate(), DataError);
}

}  // TEST_SUITE
