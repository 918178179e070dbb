#include "mgtkit/corpus.hpp"

#include "mgtkit/errors.hpp"
#include "mgtkit/lexicons.hpp"
#include "mgtkit/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

namespace mgtkit {

using nlohmann::json;

std::optional<std::size_t> LabelSpace::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (classes[i] == name) return i;
    }
    return std::nullopt;
}

void LabelSpace::validate() const {
    if (classes.empty()) throw DataError("label space has no classes");
    if (human_index >= classes.size()) throw DataError("human_index out of range");
    std::unordered_set<std::string> seen;
    for (const auto& c : classes) {
        if (c.empty()) throw DataError("label space contains an empty class name");
        if (!seen.insert(c).second) throw DataError("duplicate class name '" + c + "'");
    }
}

std::size_t Dataset::class_index(const TextSample& s) const {
    auto idx = label_space.index_of(s.author);
    if (!idx) throw DataError("unknown author '" + s.author + "' for sample '" + s.id + "'");
    return *idx;
}

namespace {

bool is_blank(std::string_view s) {
    return s.find_first_not_of(" \t\r\n\f\v") == std::string_view::npos;
}

}  // namespace

void Dataset::validate() const {
    label_space.validate();
    if (samples.empty()) throw DataError("dataset is empty");
    for (const auto& s : samples) {
        if (is_blank(s.text)) throw DataError("sample '" + s.id + "' has empty text");
        class_index(s);
    }
}

int detection_label(const TextSample& s, const LabelSpace& space) {
    auto idx = space.index_of(s.author);
    if (!idx) throw DataError("unknown author '" + s.author + "'");
    return *idx == space.human_index ? 0 : 1;
}

LabelSpace infer_label_space(const std::string& path, const std::string& human_class) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open dataset file: " + path);

    std::set<std::string> authors;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (is_blank(line)) continue;

        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            throw DataError(path + " line " + std::to_string(line_no) + ": malformed JSON: " + e.what());
        }
        if (!obj.is_object() || !obj.contains("author") || !obj["author"].is_string()) {
            throw DataError(path + " line " + std::to_string(line_no) + ": missing string field 'author'");
        }
        authors.insert(obj["author"].get<std::string>());
    }
    if (authors.empty()) throw DataError(path + ": no samples");

    LabelSpace space;
    space.classes.assign(authors.begin(), authors.end());
    auto it = std::find(space.classes.begin(), space.classes.end(), human_class);
    if (it == space.classes.end()) {
        throw DataError(path + ": human class '" + human_class + "' not present among authors");
    }
    space.human_index = static_cast<std::size_t>(it - space.classes.begin());
    space.validate();
    return space;
}

Dataset load_jsonl(const std::string& path, const LabelSpace& space) {
    space.validate();
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open dataset file: " + path);

    Dataset ds;
    ds.label_space = space;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (is_blank(line)) continue;

        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            throw DataError(path + " line " + std::to_string(line_no) + ": malformed JSON: " + e.what());
        }
        if (!obj.is_object()) {
            throw DataError(path + " line " + std::to_string(line_no) + ": expected a JSON object");
        }
        if (!obj.contains("text") || !obj["text"].is_string()) {
            throw DataError(path + " line " + std::to_string(line_no) + ": missing string field 'text'");
        }
        if (!obj.contains("author") || !obj["author"].is_string()) {
            throw DataError(path + " line " + std::to_string(line_no) + ": missing string field 'author'");
        }

        TextSample s;
        s.text = obj["text"].get<std::string>();
        s.author = obj["author"].get<std::string>();
        s.language = obj.contains("language") ? obj["language"].get<std::string>() : "und";
        s.id = obj.contains("id") ? obj["id"].get<std::string>() : "line-" + std::to_string(line_no);

        if (is_blank(s.text)) {
            throw DataError(path + " line " + std::to_string(line_no) + ": empty text");
        }
        if (!space.index_of(s.author)) {
            throw DataError(path + " line " + std::to_string(line_no) + ": unknown author '" + s.author + "'");
        }
        ds.samples.push_back(std::move(s));
    }
    if (ds.samples.empty()) throw DataError(path + ": no samples");
    return ds;
}

void save_jsonl(const Dataset& ds, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open file for writing: " + path);
    for (const auto& s : ds.samples) {
        json obj;
        obj["text"] = s.text;
        obj["author"] = s.author;
        obj["language"] = s.language;
        obj["id"] = s.id;
        out << obj.dump() << '\n';
    }
}

std::vector<UnlabeledSample> load_jsonl_texts(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open input file: " + path);

    std::vector<UnlabeledSample> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (is_blank(line)) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            throw DataError(path + " line " + std::to_string(line_no) + ": malformed JSON: " + e.what());
        }
        if (!obj.is_object() || !obj.contains("text") || !obj["text"].is_string()) {
            throw DataError(path + " line " + std::to_string(line_no) + ": missing string field 'text'");
        }
        UnlabeledSample s;
        s.text = obj["text"].get<std::string>();
        s.language = obj.contains("language") ? obj["language"].get<std::string>() : "und";
        s.id = obj.contains("id") ? obj["id"].get<std::string>() : "line-" + std::to_string(line_no);
        out.push_back(std::move(s));
    }
    return out;
}

std::pair<Dataset, Dataset> split(const Dataset& ds, double ratio, std::uint64_t seed) {
    if (!(ratio > 0.0 && ratio < 1.0)) throw UsageError("split ratio must be in (0, 1)");
    ds.validate();

    const std::size_t num_classes = ds.label_space.num_classes();
    std::vector<std::vector<std::size_t>> by_class(num_classes);
    for (std::size_t i = 0; i < ds.samples.size(); ++i) {
        by_class[ds.class_index(ds.samples[i])].push_back(i);
    }

    Rng rng(seed);
    std::vector<char> in_train(ds.samples.size(), 0);
    for (std::size_t c = 0; c < num_classes; ++c) {
        auto& idx = by_class[c];
        if (idx.size() < 2) {
            throw DataError("stratified split needs >= 2 samples per class; class '" +
                            ds.label_space.classes[c] + "' has " + std::to_string(idx.size()));
        }
        rng.shuffle(idx);
        // floor the validation share; the fractional remainder stays in train
        const std::size_t n = idx.size();
        const auto val_n = static_cast<std::size_t>(std::floor((1.0 - ratio) * static_cast<double>(n) + 1e-9));
        const std::size_t train_n = n - val_n;
        for (std::size_t k = 0; k < train_n; ++k) in_train[idx[k]] = 1;
    }

    Dataset train, val;
    train.label_space = ds.label_space;
    val.label_space = ds.label_space;
    for (std::size_t i = 0; i < ds.samples.size(); ++i) {
        (in_train[i] ? train : val).samples.push_back(ds.samples[i]);
    }
    return {std::move(train), std::move(val)};
}

void SyntheticSpec::validate() const {
    if (class_styles.empty()) throw DataError("synthetic spec has no classes");
    if (human_index >= class_styles.size()) throw DataError("synthetic human_index out of range");
    if (samples_per_class < 1) throw DataError("samples_per_class must be >= 1");
    if (!(separation >= 0.0 && separation <= 1.0)) throw DataError("separation must be in [0, 1]");
    for (const auto& style : class_styles) {
        if (style.name.empty()) throw DataError("synthetic class with empty name");
        if (style.mean_length < 10.0) throw DataError("mean_length must be >= 10");
        if (style.sentiment_rate < 0.0 || style.sentiment_rate > 0.5) {
            throw DataError("sentiment_rate out of range for class '" + style.name + "'");
        }
    }
}

namespace {

// Cumulative table for weighted word sampling.
struct CumTable {
    std::vector<const std::string*> words;
    std::vector<double> cum;
    double total = 0.0;

    void add(const WeightedVocab& vocab, double scale) {
        if (scale <= 0.0) return;
        double pool = 0.0;
        for (const auto& [w, wt] : vocab) pool += wt;
        if (pool <= 0.0) return;
        for (const auto& [w, wt] : vocab) {
            if (wt <= 0.0) continue;
            total += scale * wt / pool;
            words.push_back(&w);
            cum.push_back(total);
        }
    }

    const std::string& sample(Rng& rng) const {
        const double u = rng.uniform() * total;
        auto it = std::lower_bound(cum.begin(), cum.end(), u);
        std::size_t i = static_cast<std::size_t>(it - cum.begin());
        if (i >= words.size()) i = words.size() - 1;
        return *words[i];
    }
};

void append_capitalized(std::string& out, const std::string& word) {
    std::size_t start = out.size();
    out += word;
    if (out[start] >= 'a' && out[start] <= 'z') out[start] = static_cast<char>(out[start] - 'a' + 'A');
}

std::string make_document(const ClassStyle& style, const CumTable& table, Rng& rng) {
    const auto target = static_cast<long>(std::llround(rng.normal(style.mean_length, style.mean_length * 0.12)));
    const long total_tokens = std::max<long>(30, target);

    const auto& positive = lex::positive_list();
    const auto& negative = lex::negative_list();

    std::string out;
    long produced = 0;
    while (produced < total_tokens) {
        long sentence_len = std::llround(rng.normal(13.0, 4.0));
        sentence_len = std::clamp<long>(sentence_len, 4, 26);
        sentence_len = std::min(sentence_len, total_tokens - produced + 3);

        if (!out.empty()) out += ' ';
        for (long k = 0; k < sentence_len; ++k) {
            const std::string* word;
            if (rng.uniform() < style.sentiment_rate) {
                const bool pos = rng.uniform() < style.positive_share;
                const auto& lexicon = pos ? positive : negative;
                word = &lexicon[rng.below(lexicon.size())];
            } else {
                word = &table.sample(rng);
            }
            if (k == 0) {
                append_capitalized(out, *word);
            } else {
                out += ' ';
                out += *word;
            }
            if (k + 1 < sentence_len && rng.uniform() < 0.07) out += ',';
        }
        const double u = rng.uniform();
        out += (u < 0.05) ? '?' : (u < 0.10) ? '!' : '.';
        produced += sentence_len;
    }
    return out;
}

}  // namespace

Dataset generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed) {
    spec.validate();

    Dataset ds;
    for (const auto& style : spec.class_styles) ds.label_space.classes.push_back(style.name);
    ds.label_space.human_index = spec.human_index;
    ds.label_space.validate();

    Rng rng(seed);
    for (const auto& style : spec.class_styles) {
        CumTable table;
        table.add(spec.common_vocab, 1.0 - spec.separation);
        table.add(style.vocab, spec.separation);
        if (table.words.empty()) throw DataError("synthetic class '" + style.name + "' has an empty vocabulary");

        for (std::size_t i = 0; i < spec.samples_per_class; ++i) {
            TextSample s;
            s.text = make_document(style, table, rng);
            s.author = style.name;
            s.language = spec.language;
            s.id = style.name + "-" + std::to_string(i);
            ds.samples.push_back(std::move(s));
        }
    }
    return ds;
}

}  // namespace mgtkit
