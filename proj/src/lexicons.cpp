#include "mgtkit/lexicons.hpp"

namespace mgtkit::lex {

namespace {

// ~230 common positive opinion words, hand-curated. No external corpus.
const char* kPositive[] = {
    "able", "abundant", "achievement", "admirable", "admire", "adorable", "adore", "advantage",
    "agreeable", "amazing", "ambitious", "amusing", "appealing", "appreciate", "appreciated",
    "attractive", "awesome", "beautiful", "believable", "beloved", "beneficial", "benefit", "best",
    "better", "blessed", "bliss", "bonus", "boost", "bountiful", "brave", "bright", "brilliant",
    "calm", "capable", "celebrate", "celebrated", "charming", "cheerful", "cherish", "clean",
    "clear", "clever", "comfort", "comfortable", "commend", "compassionate", "confident",
    "congratulate", "convenient", "cool", "courage", "courageous", "creative", "dazzling",
    "delight", "delighted", "delightful", "dependable", "desirable", "devoted", "dignified",
    "diligent", "distinguished", "dynamic", "eager", "easy", "ecstatic", "effective", "efficient",
    "effortless", "elegant", "enchanting", "encourage", "encouraging", "energetic", "engaging",
    "enjoy", "enjoyable", "enthusiasm", "enthusiastic", "excellent", "exceptional", "excited",
    "exciting", "exquisite", "fabulous", "fair", "faithful", "famous", "fantastic", "favorable",
    "favorite", "fearless", "fine", "flawless", "flourish", "fond", "fortunate", "free", "fresh",
    "friendly", "fun", "generous", "gentle", "genuine", "gifted", "glad", "glorious", "glow",
    "good", "gorgeous", "graceful", "gracious", "grand", "grateful", "great", "happy",
    "harmonious", "healthy", "heartwarming", "helpful", "heroic", "honest", "honor", "hope",
    "hopeful", "ideal", "impress", "impressive", "improve", "improved", "incredible",
    "innovative", "inspire", "inspiring", "intelligent", "inviting", "joy", "joyful", "jubilant",
    "keen", "kind", "laudable", "lively", "love", "lovely", "loving", "loyal", "lucky",
    "luminous", "magnificent", "marvelous", "masterful", "meaningful", "memorable", "merry",
    "mighty", "miracle", "neat", "nice", "noble", "optimistic", "outstanding", "passionate",
    "peaceful", "perfect", "pleasant", "pleased", "pleasing", "pleasure", "plentiful", "polished",
    "popular", "positive", "praise", "precious", "prefer", "premier", "pretty", "pride",
    "productive", "progress", "prosperous", "proud", "pure", "radiant", "reliable", "remarkable",
    "resilient", "respect", "rewarding", "rich", "right", "robust", "safe", "satisfied",
    "satisfying", "secure", "sensational", "serene", "sharp", "shine", "significant", "sincere",
    "skilled", "smart", "smooth", "sparkling", "special", "splendid", "stable", "steady",
    "strong", "stunning", "sublime", "succeed", "success", "successful", "superb", "superior",
    "support", "supportive", "sweet", "talented", "terrific", "thankful", "thoughtful",
    "thrilled", "thriving", "tidy", "tranquil", "triumph", "trust", "trustworthy", "truthful",
    "upbeat", "useful", "valuable", "vibrant", "victorious", "warm", "wealthy", "welcome",
    "wholesome", "win", "winner", "wise", "wonderful", "worthy", "zeal", "zest",
};

// ~225 common negative opinion words.
const char* kNegative[] = {
    "abandon", "abandoned", "abysmal", "afraid", "aggressive", "agonizing", "alarming", "angry",
    "annoy", "annoyed", "annoying", "anxious", "appalling", "arrogant", "ashamed", "atrocious",
    "awful", "awkward", "bad", "banal", "barren", "betray", "bitter", "bland", "bleak", "blame",
    "boring", "broken", "brutal", "burden", "careless", "chaos", "chaotic", "cheap", "clumsy",
    "cold", "complain", "complaint", "confused", "confusing", "corrupt", "costly", "cowardly",
    "crash", "crazy", "cruel", "crushing", "cry", "damage", "damaged", "dangerous", "dark",
    "dead", "deadly", "deceit", "deceive", "defect", "defective", "deficient", "degrade",
    "dejected", "delay", "deny", "deplorable", "depressed", "depressing", "despair", "desperate",
    "destroy", "destructive", "devastating", "dirty", "disappoint", "disappointed",
    "disappointing", "disaster", "disastrous", "disgrace", "disgust", "disgusting", "dishonest",
    "dismal", "dismay", "disorder", "disrupt", "distress", "disturbing", "doubt", "doubtful",
    "dread", "dreadful", "dreary", "dull", "evil", "fail", "failed", "failure", "fake", "fatal",
    "fault", "faulty", "fear", "fearful", "feeble", "fierce", "filthy", "flawed", "foolish",
    "fraud", "frightening", "frustrate", "frustrated", "frustrating", "futile", "gloomy", "grim",
    "gross", "grudge", "guilt", "guilty", "harm", "harmful", "harsh", "hate", "hateful",
    "hazardous", "heartbreaking", "helpless", "hideous", "hopeless", "horrible", "horrid",
    "hostile", "hurt", "idiotic", "ignorant", "ill", "illegal", "impossible", "inadequate",
    "incompetent", "inconvenient", "inferior", "infuriating", "insecure", "insult", "insulting",
    "intolerable", "jealous", "lack", "lame", "lazy", "lie", "lonely", "lose", "loss", "lost",
    "lousy", "mad", "malicious", "mediocre", "mess", "messy", "miserable", "misery", "mistake",
    "mourn", "nasty", "negative", "neglect", "nervous", "noisy", "obnoxious", "offensive",
    "outrage", "outrageous", "pain", "painful", "panic", "pathetic", "petty", "poor", "poorly",
    "problem", "regret", "reject", "rotten", "rude", "ruin", "ruined", "sad", "scare", "scared",
    "scary", "selfish", "severe", "shabby", "shame", "shameful", "shoddy", "sick", "sinister",
    "slow", "sloppy", "sorrow", "sorry", "stale", "strange", "stress", "stressful", "struggle",
    "stupid", "suffer", "suffering", "suspicious", "terrible", "threat", "threatening", "tired",
    "tough", "toxic", "tragic", "trouble", "ugly", "unacceptable", "unbearable", "uncertain",
    "uncomfortable", "unfair", "unfortunate", "unhappy", "unpleasant", "unreliable", "unstable",
    "upset", "useless", "vague", "vicious", "vile", "violent", "vulnerable", "weak", "weary",
    "worse", "worst", "worthless", "wrong",
};

const char* kStopwords[] = {
    "a", "about", "above", "after", "again", "against", "all", "am", "an", "and", "any", "are",
    "as", "at", "be", "because", "been", "before", "being", "below", "between", "both", "but",
    "by", "could", "did", "do", "does", "doing", "down", "during", "each", "few", "for", "from",
    "further", "had", "has", "have", "having", "he", "her", "here", "hers", "herself", "him",
    "himself", "his", "how", "i", "if", "in", "into", "is", "it", "its", "itself", "just", "me",
    "more", "most", "my", "myself", "no", "nor", "not", "now", "of", "off", "on", "once", "only",
    "or", "other", "our", "ours", "ourselves", "out", "over", "own", "same", "she", "should",
    "so", "some", "such", "than", "that", "the", "their", "theirs", "them", "themselves", "then",
    "there", "these", "they", "this", "those", "through", "to", "too", "under", "until", "up",
    "very", "was", "we", "were", "what", "when", "where", "which", "while", "who", "whom", "why",
    "will", "with", "would", "you", "your", "yours", "yourself", "yourselves",
};

const char* kIrregularPast[] = {
    "arose", "ate", "beat", "became", "began", "bent", "bet", "bit", "bled", "blew", "bore",
    "bought", "bound", "bred", "broke", "brought", "built", "burst", "came", "cast", "caught",
    "chose", "clung", "cost", "crept", "cut", "dealt", "did", "drank", "drew", "dreamt", "drove",
    "dug", "fed", "fell", "felt", "fled", "flew", "flung", "forbade", "forgave", "forgot",
    "fought", "found", "froze", "gave", "got", "grew", "ground", "had", "heard", "held", "hid",
    "hit", "hung", "kept", "knew", "laid", "lay", "led", "left", "lent", "let", "lit", "lost",
    "made", "meant", "met", "paid", "put", "quit", "ran", "rang", "read", "rode", "rose", "said",
    "sang", "sank", "sat", "saw", "sent", "set", "shook", "shot", "shut", "slept", "slid",
    "sold", "sought", "spent", "spoke", "sprang", "spun", "stood", "stole", "struck", "stuck",
    "stung", "swam", "swept", "swore", "swung", "taught", "told", "took", "tore", "threw",
    "thought", "understood", "was", "went", "wept", "were", "woke", "won", "wore", "wound",
    "wrote",
};

// -ed words that are nouns or adjectives, not past-tense verbs.
const char* kEdExceptions[] = {
    "bed", "beloved", "biped", "bleed", "breed", "coed", "creed", "crooked", "deed", "dogged",
    "embed", "feed", "greed", "hatred", "heed", "hundred", "indeed", "infrared", "jagged",
    "kindred", "naked", "need", "newlywed", "proceed", "purebred", "quadruped", "ragged", "red",
    "reed", "rugged", "sacred", "seed", "shed", "shred", "sled", "sped", "speed", "steed",
    "succeed", "thoroughbred", "watershed", "weed", "wicked", "wretched",
};

const char* kMonths[] = {
    "january", "february", "march", "april", "may", "june", "july", "august", "september",
    "october", "november", "december", "jan", "feb", "mar", "apr", "jun", "jul", "aug", "sept",
    "sep", "oct", "nov", "dec",
};

template <std::size_t N>
std::vector<std::string> to_vector(const char* (&arr)[N]) {
    return std::vector<std::string>(arr, arr + N);
}

template <std::size_t N>
std::unordered_set<std::string> to_set(const char* (&arr)[N]) {
    return std::unordered_set<std::string>(arr, arr + N);
}

}  // namespace

const std::vector<std::string>& positive_list() {
    static const std::vector<std::string> v = to_vector(kPositive);
    return v;
}

const std::vector<std::string>& negative_list() {
    static const std::vector<std::string> v = to_vector(kNegative);
    return v;
}

const std::unordered_set<std::string>& positive_words() {
    static const std::unordered_set<std::string> s = to_set(kPositive);
    return s;
}

const std::unordered_set<std::string>& negative_words() {
    static const std::unordered_set<std::string> s = to_set(kNegative);
    return s;
}

const std::unordered_set<std::string>& stopwords() {
    static const std::unordered_set<std::string> s = to_set(kStopwords);
    return s;
}

const std::unordered_set<std::string>& irregular_past() {
    static const std::unordered_set<std::string> s = to_set(kIrregularPast);
    return s;
}

const std::unordered_set<std::string>& ed_exceptions() {
    static const std::unordered_set<std::string> s = to_set(kEdExceptions);
    return s;
}

const std::vector<std::string>& month_names() {
    static const std::vector<std::string> v = to_vector(kMonths);
    return v;
}

}  // namespace mgtkit::lex
