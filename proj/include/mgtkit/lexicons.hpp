#pragma once

#include <string>
#include <unordered_set>
#include <vector>

namespace mgtkit::lex {

// Embedded word lists. Hand-curated from common English usage so the toolkit
// has no runtime data dependencies; the lists are frozen because feature
// values must be reproducible.

const std::vector<std::string>& positive_list();
const std::vector<std::string>& negative_list();

const std::unordered_set<std::string>& positive_words();
const std::unordered_set<std::string>& negative_words();
const std::unordered_set<std::string>& stopwords();

/// Irregular past-tense verb forms ("went", "said", ...).
const std::unordered_set<std::string>& irregular_past();

/// Words ending in "-ed" that are not past-tense verbs ("bed", "hundred", ...).
const std::unordered_set<std::string>& ed_exceptions();

/// Full month names followed by their short forms.
const std::vector<std::string>& month_names();

}  // namespace mgtkit::lex
