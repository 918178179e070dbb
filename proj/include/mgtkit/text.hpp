#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mgtkit {

// One word token. `lower` is the ASCII-lowercased form used for lookups and
// vocabularies; `original` preserves the source casing for text rewriting.
struct Token {
    std::string lower;
    std::string original;
    std::size_t begin = 0;  // byte offset into the source text
    std::size_t end = 0;    // one past the last byte
};

// Half-open token and byte ranges of one sentence.
struct Sentence {
    std::size_t token_begin = 0;
    std::size_t token_end = 0;
    std::size_t byte_begin = 0;
    std::size_t byte_end = 0;
};

struct TokenizedText {
    std::vector<Token> tokens;
    std::vector<Sentence> sentences;
};

// True for bytes that may appear inside a word: ASCII alphanumerics plus any
// byte >= 0x80 (so multi-byte UTF-8 sequences stay intact).
bool is_word_byte(unsigned char c);

// Splits text into word tokens and sentences. Apostrophes (ASCII ' and the
// UTF-8 right single quote) are kept word-internal when flanked by word
// bytes. Sentences end at a run of [.!?] followed by whitespace or
// end-of-text; a text with tokens but no terminator forms one sentence.
TokenizedText tokenize(std::string_view text);

// Lowercased word tokens only, for callers that need bags of words.
std::vector<std::string> word_tokens(std::string_view text);

}  // namespace mgtkit
