#include "mgtkit/errors.hpp"
#include "mgtkit/obfuscation.hpp"
#include "mgtkit/text.hpp"

#include <httplib.h>
#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace mgtkit {

namespace {

bool safe_lang_code(const std::string& code) {
    if (code.empty() || code.size() > 16) return false;
    for (char c : code) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '-' || c == '_';
        if (!ok) return false;
    }
    return true;
}

std::string read_file_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read translator output file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Replaces every dictionary word, keeping gaps and first-letter casing.
std::string map_words(const std::string& text,
                      const std::unordered_map<std::string, std::string>& dict) {
    const TokenizedText tt = tokenize(text);
    std::string out;
    out.reserve(text.size());
    std::size_t cursor = 0;
    for (const Token& tok : tt.tokens) {
        out.append(text, cursor, tok.begin - cursor);
        cursor = tok.end;
        auto it = dict.find(tok.lower);
        if (it == dict.end()) {
            out += tok.original;
            continue;
        }
        std::string repl = it->second;
        if (!tok.original.empty() && tok.original[0] >= 'A' && tok.original[0] <= 'Z' &&
            !repl.empty() && repl[0] >= 'a' && repl[0] <= 'z') {
            repl[0] = static_cast<char>(repl[0] - 'a' + 'A');
        }
        out += repl;
    }
    out.append(text, cursor, text.size() - cursor);
    return out;
}

}  // namespace

std::string CommandTranslator::translate(const std::string& text, const std::string& source,
                                         const std::string& target) {
    if (!safe_lang_code(source) || !safe_lang_code(target)) {
        throw DataError("language codes must be short alphanumeric identifiers");
    }

    static std::atomic<unsigned> counter{0};
    const auto dir = std::filesystem::temp_directory_path();
    const std::string stem = "mgtkit-translate-" + std::to_string(::getpid()) + "-" +
                             std::to_string(counter.fetch_add(1));
    const auto in_path = dir / (stem + ".in");
    const auto out_path = dir / (stem + ".out");

    {
        std::ofstream out(in_path, std::ios::binary);
        if (!out) throw DataError("cannot create translator input file " + in_path.string());
        out << text;
    }

    const std::string cmd = "TRANSLATE_SOURCE=" + source + " TRANSLATE_TARGET=" + target + " " +
                            command_ + " < '" + in_path.string() + "' > '" + out_path.string() +
                            "'";
    const int rc = std::system(cmd.c_str());

    std::string result;
    if (rc == 0) result = read_file_or_throw(out_path);
    std::error_code ignored;
    std::filesystem::remove(in_path, ignored);
    std::filesystem::remove(out_path, ignored);
    if (rc != 0) {
        throw DataError("translator command exited with status " + std::to_string(rc));
    }
    return result;
}

std::string HttpTranslator::translate(const std::string& text, const std::string& source,
                                      const std::string& target) {
    nlohmann::json body;
    body["text"] = text;
    body["source"] = source;
    body["target"] = target;

    httplib::Client client(host_, port_);
    client.set_connection_timeout(5, 0);
    client.set_read_timeout(30, 0);
    auto res = client.Post(path_, body.dump(), "application/json");
    if (!res) {
        throw DataError("translator at " + host_ + ":" + std::to_string(port_) + " unreachable");
    }
    if (res->status != 200) {
        throw DataError("translator returned HTTP status " + std::to_string(res->status));
    }
    nlohmann::json reply = nlohmann::json::parse(res->body, nullptr, false);
    if (reply.is_discarded() || !reply.contains("text") || !reply["text"].is_string()) {
        throw DataError("translator reply is not a JSON object with a string 'text' field");
    }
    return reply["text"].get<std::string>();
}

StubTranslator::StubTranslator() {
    // Near-synonyms collapse onto one pivot word, so the round trip is lossy
    // on purpose (great -> bon -> good).
    const std::pair<const char*, const char*> kPairs[] = {
        {"the", "le"},    {"a", "un"},        {"an", "un"},      {"one", "un"},
        {"and", "et"},    {"or", "ou"},       {"of", "de"},      {"from", "de"},
        {"in", "dans"},   {"with", "avec"},   {"for", "pour"},   {"on", "sur"},
        {"is", "est"},    {"are", "sont"},    {"was", "etait"},  {"were", "etait"},
        {"not", "pas"},   {"no", "non"},      {"yes", "oui"},    {"good", "bon"},
        {"great", "bon"}, {"bad", "mauvais"}, {"terrible", "mauvais"},
        {"man", "homme"}, {"woman", "femme"}, {"day", "jour"},   {"night", "nuit"},
        {"year", "annee"},{"time", "temps"},  {"water", "eau"},  {"house", "maison"},
        {"world", "monde"},{"life", "vie"},   {"little", "petit"},{"small", "petit"},
        {"big", "grand"}, {"large", "grand"}, {"new", "nouveau"},{"old", "vieux"},
        {"friend", "ami"},{"city", "ville"},  {"place", "lieu"}, {"way", "chemin"},
        {"road", "chemin"},{"work", "travail"},{"word", "mot"},  {"book", "livre"},
        {"people", "gens"},
    };
    for (const auto& [en, fr] : kPairs) {
        to_pivot_.emplace(en, fr);
        from_pivot_.emplace(fr, en);  // first mapping wins on the way back
    }
}

std::string StubTranslator::translate(const std::string& text, const std::string& source,
                                      const std::string& target) {
    if (source == target) return text;
    if (target == "fr") return map_words(text, to_pivot_);
    if (source == "fr") return map_words(text, from_pivot_);
    return text;  // unknown pair: pass through
}

}  // namespace mgtkit
