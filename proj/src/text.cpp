#include "mgtkit/text.hpp"

namespace mgtkit {

namespace {

// Byte length of an apostrophe starting at `i`, or 0. Recognizes ASCII '\''
// and the UTF-8 right single quotation mark (e2 80 99).
std::size_t apostrophe_len(std::string_view t, std::size_t i) {
    if (t[i] == '\'') return 1;
    if (i + 2 < t.size() && static_cast<unsigned char>(t[i]) == 0xe2 &&
        static_cast<unsigned char>(t[i + 1]) == 0x80 &&
        static_cast<unsigned char>(t[i + 2]) == 0x99) {
        return 3;
    }
    return 0;
}

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

bool is_space_byte(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

}  // namespace

bool is_word_byte(unsigned char c) {
    if (c >= 0x80) return true;
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

TokenizedText tokenize(std::string_view text) {
    TokenizedText out;

    // Pass 1: word tokens with byte spans.
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        if (!is_word_byte(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        Token tok;
        tok.begin = i;
        while (i < n) {
            if (is_word_byte(static_cast<unsigned char>(text[i]))) {
                tok.original.push_back(text[i]);
                tok.lower.push_back(ascii_lower(text[i]));
                ++i;
                continue;
            }
            // Apostrophes stay word-internal when flanked by word bytes.
            const std::size_t ap = apostrophe_len(text, i);
            if (ap > 0 && i + ap < n && is_word_byte(static_cast<unsigned char>(text[i + ap]))) {
                tok.original.append(text.substr(i, ap));
                tok.lower.append(text.substr(i, ap));
                i += ap;
                continue;
            }
            break;
        }
        tok.end = i;
        out.tokens.push_back(std::move(tok));
    }

    // Pass 2: sentence boundaries at [.!?]+ runs followed by whitespace or
    // end-of-text. Each boundary records one past the end of the run.
    std::vector<std::size_t> boundaries;
    i = 0;
    while (i < n) {
        if (!is_terminator(text[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < n && is_terminator(text[j])) ++j;
        if (j == n || is_space_byte(text[j])) boundaries.push_back(j);
        i = j;
    }

    // Group tokens into sentences; sentences without tokens are dropped.
    std::size_t b = 0;
    std::size_t t = 0;
    while (t < out.tokens.size()) {
        while (b < boundaries.size() && boundaries[b] <= out.tokens[t].begin) ++b;

        Sentence s;
        s.token_begin = t;
        s.byte_begin = out.tokens[t].begin;
        while (t < out.tokens.size() &&
               (b == boundaries.size() || out.tokens[t].begin < boundaries[b])) {
            ++t;
        }
        s.token_end = t;
        s.byte_end = (b < boundaries.size()) ? boundaries[b] : out.tokens[t - 1].end;
        out.sentences.push_back(s);
    }
    return out;
}

std::vector<std::string> word_tokens(std::string_view text) {
    std::vector<std::string> out;
    for (auto& tok : tokenize(text).tokens) out.push_back(std::move(tok.lower));
    return out;
}

}  // namespace mgtkit
