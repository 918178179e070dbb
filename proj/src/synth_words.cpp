#include "mgtkit/corpus.hpp"
#include "mgtkit/digest.hpp"
#include "mgtkit/errors.hpp"
#include "mgtkit/lexicons.hpp"
#include "mgtkit/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string_view>
#include <unordered_set>

namespace mgtkit {

namespace {

// Syllable inventory for synthesized content words. Onsets are partitioned
// into blocks of four; each class draws from its own block, which makes the
// class-specific pools pairwise disjoint by construction.
const char* kOnsets[] = {
    "b", "br", "c",  "cl", "d",  "dr", "f",  "fl", "g",  "gr",  // blocks 0-1
    "h", "j",  "k",  "l",  "m",  "n",  "p",  "pl", "pr", "qu",  // blocks 2-4 (partial)
    "r", "s",  "sl", "sp", "st", "t",  "tr", "v",  "w",  "z",
    "sh", "ch", "th", "bl", "cr", "gl", "sk", "sn", "sw", "tw",
};
const char* kMids[] = {"a", "e", "i", "o", "u", "ar", "en", "il", "on", "ur", "ea", "ou"};
const char* kCodas[] = {"", "n", "r", "s", "t", "l", "m", "nd", "st", "ck", "sh", "ph"};

constexpr std::size_t kOnsetsPerBlock = 4;
constexpr std::size_t kNumBlocks = std::size(kOnsets) / kOnsetsPerBlock;

// Frequent English words, roughly rank-ordered; the shared pool every class
// draws from.
const char* kCommonEnglish[] = {
    "the", "of", "and", "to", "in", "it", "is", "was", "for", "on", "that", "with", "as", "at",
    "this", "but", "from", "they", "his", "her", "she", "he", "we", "you", "not", "are", "be",
    "have", "had", "has", "were", "which", "an", "by", "or", "one", "all", "their", "there",
    "when", "who", "will", "more", "would", "about", "if", "out", "so", "what", "time", "up",
    "can", "said", "other", "than", "then", "into", "its", "no", "two", "these", "may", "first",
    "new", "also", "after", "most", "over", "many", "some", "only", "way", "our", "them",
    "could", "him", "see", "now", "people", "made", "work", "day", "year", "get", "part",
    "came", "place", "through", "back", "much", "before", "right", "too", "any", "same", "own",
    "world", "still", "such", "here", "life", "those", "both", "does", "each", "few", "while",
    "last", "might", "us", "great", "old", "year", "off", "come", "since", "against", "go",
    "came", "during", "without", "again", "around", "however", "home", "small", "found",
    "thought", "went", "say", "once", "left", "number", "under", "water", "long", "little",
    "very", "between", "name", "should", "house", "picture", "try", "again", "animal", "point",
    "mother", "world", "near", "build", "self", "earth", "father", "head", "stand", "page",
    "country", "answer", "school", "grow", "study", "learn", "plant", "cover", "food", "sun",
    "four", "thought", "keep", "eye", "never", "last", "door", "city", "tree", "cross", "hard",
    "start", "open", "example", "begin", "walk", "paper", "group", "often", "run", "important",
    "until", "children", "side", "feet", "car", "mile", "night", "sea", "river", "state",
    "book", "carry", "took", "idea", "fish", "mountain", "stop", "base", "horse", "story",
};

// Function and content words in the second synthetic language. Curated to
// avoid the English pool; anything that still collides with the synthesized
// word grammar or the embedded lexicons is filtered out programmatically.
const char* kCommonFx[] = {
    "le", "les", "des", "une", "dans", "avec", "pour", "sur", "est", "sont", "mais", "par",
    "plus", "comme", "tout", "bien", "sans", "sous", "entre", "apres", "avant", "aussi",
    "alors", "chaque", "depuis", "encore", "toujours", "jamais", "ici", "tres", "peu",
    "beaucoup", "autre", "meme", "notre", "votre", "leur", "cette", "ces", "donc", "ainsi",
    "chose", "temps", "monde", "vie", "jour", "annee", "homme", "femme", "enfant", "ville",
    "pays", "eau", "terre", "ciel", "mer", "montagne", "riviere", "maison", "porte", "fenetre",
    "chaise", "livre", "mot", "phrase", "langue", "voix", "main", "tete", "coeur", "esprit",
    "idee", "raison", "question", "reponse", "histoire", "debut", "chemin", "route", "voyage",
    "retour", "lumiere", "ombre", "couleur", "bruit", "silence", "musique", "danse", "fete",
    "travail", "ecole", "lecon", "etude", "science", "image", "forme", "ligne", "nombre",
    "ordre", "partie", "ensemble", "groupe", "force", "energie", "matin", "soir", "nuit",
    "semaine", "mois", "saison", "hiver", "ete", "printemps", "automne", "premier", "dernier",
    "grande", "petite", "nouveau", "vieux", "jeune", "haut", "bas", "long", "court", "large",
    "etroit", "plein", "vide", "clair", "sombre", "chaud", "froid", "doux", "dur", "leger",
    "lourd", "vite", "lentement", "souvent", "parfois", "rarement", "presque", "environ",
    "selon", "pendant", "contre", "vers", "chez", "donc", "pourtant", "cependant", "ensuite",
    "enfin", "d'abord", "puis", "quand", "comment", "pourquoi", "combien", "quel", "quelle",
};

bool parse_syllables(std::string_view rest, int depth) {
    for (const char* m : kMids) {
        std::string_view mid(m);
        if (!rest.starts_with(mid)) continue;
        const std::string_view after_mid = rest.substr(mid.size());
        for (const char* c : kCodas) {
            std::string_view coda(c);
            if (!after_mid.starts_with(coda)) continue;
            const std::string_view tail = after_mid.substr(coda.size());
            if (tail.empty()) return true;
            if (depth < 2 && parse_syllables(tail, depth + 1)) return true;
        }
    }
    return false;
}

// Whether `word` could have been produced by the synthesized-word grammar.
bool matches_synth_grammar(std::string_view word) {
    for (const char* o : kOnsets) {
        std::string_view onset(o);
        if (word.starts_with(onset) && parse_syllables(word.substr(onset.size()), 1)) return true;
    }
    return false;
}

std::vector<std::string> compose_words(std::size_t block, std::size_t count, Rng& rng,
                                        const std::string& suffix) {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    while (out.size() < count) {
        std::string w = kOnsets[block * kOnsetsPerBlock + rng.below(kOnsetsPerBlock)];
        w += kMids[rng.below(std::size(kMids))];
        w += kCodas[rng.below(std::size(kCodas))];
        if (rng.uniform() < 0.45) {
            w += kMids[rng.below(std::size(kMids))];
            w += kCodas[rng.below(std::size(kCodas))];
        }
        w += suffix;
        if (seen.insert(w).second) out.push_back(std::move(w));
    }
    return out;
}

WeightedVocab zipf_weights(const std::vector<std::string>& words, double total) {
    WeightedVocab out;
    double z = 0.0;
    for (std::size_t k = 0; k < words.size(); ++k) z += 1.0 / static_cast<double>(k + 1);
    for (std::size_t k = 0; k < words.size(); ++k) {
        out.emplace_back(words[k], total / (static_cast<double>(k + 1) * z));
    }
    return out;
}

WeightedVocab filtered_fx_common() {
    const auto& en_pos = lex::positive_words();
    const auto& en_neg = lex::negative_words();
    const auto& en_stop = lex::stopwords();
    std::unordered_set<std::string> en_common(std::begin(kCommonEnglish), std::end(kCommonEnglish));

    std::vector<std::string> kept;
    for (const char* w : kCommonFx) {
        std::string word(w);
        if (en_common.count(word) || en_pos.count(word) || en_neg.count(word) || en_stop.count(word)) continue;
        if (matches_synth_grammar(word)) continue;
        if (word.size() > 2 && word.ends_with("eu") &&
            matches_synth_grammar(std::string_view(word).substr(0, word.size() - 2))) {
            continue;
        }
        kept.push_back(std::move(word));
    }
    return zipf_weights(kept, 1.0);
}

}  // namespace

SyntheticSpec default_synthetic_spec(std::size_t machine_classes, std::size_t samples_per_class,
                                     double separation, const std::string& language) {
    if (machine_classes < 1 || machine_classes > kNumBlocks - 2) {
        throw DataError("machine_classes must be in [1, " + std::to_string(kNumBlocks - 2) + "]");
    }
    if (language != "en" && language != "fx") {
        throw DataError("unknown synthetic language '" + language + "' (use \"en\" or \"fx\")");
    }

    const bool fx = language == "fx";
    const std::string suffix = fx ? "eu" : "";
    Rng pool_rng(fnv1a64("synth-pools:" + language));

    SyntheticSpec spec;
    spec.language = language;
    spec.samples_per_class = samples_per_class;
    spec.separation = separation;
    spec.human_index = 0;
    spec.common_vocab = fx ? filtered_fx_common()
                           : zipf_weights(std::vector<std::string>(std::begin(kCommonEnglish),
                                                                   std::end(kCommonEnglish)),
                                          1.0);

    // Block 0: human pool. Block 1: vocabulary shared among machine classes.
    // Blocks 2+: one per machine class.
    const auto human_words = compose_words(0, 80, pool_rng, suffix);
    const auto shared_words = compose_words(1, 60, pool_rng, suffix);

    ClassStyle human;
    human.name = "human";
    human.vocab = zipf_weights(human_words, 1.0);
    human.mean_length = 110.0;
    human.sentiment_rate = fx ? 0.0 : 0.05;
    human.positive_share = 0.7;
    spec.class_styles.push_back(std::move(human));

    const double mean_lengths[] = {75.0, 95.0, 130.0, 85.0, 105.0, 70.0, 120.0, 90.0};
    const double sentiment_rates[] = {0.015, 0.03, 0.02, 0.04, 0.01, 0.035, 0.025, 0.018};
    const double positive_shares[] = {0.45, 0.55, 0.5, 0.6, 0.4, 0.5, 0.55, 0.5};

    for (std::size_t i = 0; i < machine_classes; ++i) {
        const auto own_words = compose_words(2 + i, 50, pool_rng, suffix);

        ClassStyle style;
        style.name = "bot_" + std::string(1, static_cast<char>('a' + i));
        // Half the specific mass is shared across machine classes, half is
        // unique, so machine classes overlap each other more than any of
        // them overlaps the human pool.
        style.vocab = zipf_weights(shared_words, 0.5);
        for (auto& [word, weight] : zipf_weights(own_words, 0.5)) {
            style.vocab.emplace_back(word, weight);
        }
        style.mean_length = mean_lengths[i];
        style.sentiment_rate = fx ? 0.0 : sentiment_rates[i];
        style.positive_share = positive_shares[i];
        spec.class_styles.push_back(std::move(style));
    }
    return spec;
}

}  // namespace mgtkit
