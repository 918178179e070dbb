#include "mgtkit/stylometry.hpp"

#include "mgtkit/errors.hpp"

#include <doctest.h>

#include <string>

using namespace mgtkit;

TEST_SUITE("stylometry") {

TEST_CASE("syllable counting follows the vowel-group heuristic") {
    CHECK(count_syllables("cat") == 1);
    CHECK(count_syllables("banana") == 3);
    CHECK(count_syllables("see") == 1);       // one vowel group
    CHECK(count_syllables("make") == 1);      // trailing silent e drops
    CHECK(count_syllables("the") == 1);       // only group: never below 1
    CHECK(count_syllables("rhythm") == 1);    // y counts as a vowel
    CHECK(count_syllables("create") == 1);    // "ea" group, then the trailing e drops
    CHECK(count_syllables("bcdfg") == 1);     // floor of 1 even with no vowels
    CHECK(count_syllables("free") == 1);      // trailing e inside a longer group stays
}

TEST_CASE("feature vector has the documented length and order") {
    const auto& names = StyloVector::feature_names();
    REQUIRE(names.size() == StyloVector::kNumFeatures);
    REQUIRE(StyloVector::kNumFeatures == 20);
    CHECK(names[0] == "nnp_count");
    CHECK(names[3] == "flesch_kincaid");
    CHECK(names[7] == "date_count");
    CHECK(names[19] == "avg_word_length");
    CHECK_THROWS_AS(StyloVector{}.at("no_such_feature"), DataError);
}

TEST_CASE("flesch-kincaid grade matches the closed form on a tiny sentence") {
    const StyloVector v = extract_stylometrics("The cat sat.");
    // 3 words, 1 sentence, 3 syllables.
    const double expected = 0.39 * 3.0 + 11.8 * (3.0 / 3.0) - 15.59;
    CHECK(v.at("flesch_kincaid") == doctest::Approx(expected).epsilon(1e-12));
    CHECK(v.at("word_count") == 3.0);
    CHECK(v.at("avg_sentence_length") == 3.0);
}

TEST_CASE("proper-noun proxy skips sentence-initial capitals") {
    const StyloVector v = extract_stylometrics("I met Bob in Paris. Nice city.");
    // "I" and "Nice" are sentence-initial; Bob and Paris count.
    CHECK(v.at("nnp_count") == 2.0);
}

TEST_CASE("past-tense proxy combines the -ed rule with irregulars") {
    const StyloVector v = extract_stylometrics("He walked away. She went home. We ran.");
    // walked (-ed), went, ran.
    CHECK(v.at("vbd_count") == 3.0);
    // "speed" and "need" are lexical exceptions, "red" is too short.
    const StyloVector w = extract_stylometrics("We need speed on the red car.");
    CHECK(w.at("vbd_count") == 0.0);
}

TEST_CASE("date mentions merge overlapping spans") {
    CHECK(extract_stylometrics("It happened on January 5, 2021 at noon.").at("date_count") == 1.0);
    CHECK(extract_stylometrics("Back in 1999 it rained.").at("date_count") == 1.0);
    CHECK(extract_stylometrics("Released 2021-03-14 worldwide.").at("date_count") == 1.0);
    CHECK(extract_stylometrics("March 2020 changed things.").at("date_count") == 1.0);
    CHECK(extract_stylometrics("two dates: May 1998 and 2004-07-01.").at("date_count") == 2.0);
}

TEST_CASE("bare month words are not dates") {
    CHECK(extract_stylometrics("May I help you?").at("date_count") == 0.0);
    CHECK(extract_stylometrics("They march in line.").at("date_count") == 0.0);
    CHECK(extract_stylometrics("On 4 July we celebrate.").at("date_count") == 1.0);
}

TEST_CASE("lexicon rates use word and sentence denominators") {
    // 8 words, 2 sentences; one positive word, one negative word; the
    // positive and negative words land in different sentences.
    const StyloVector v = extract_stylometrics("This is a good day. That was bad.");
    CHECK(v.at("positive_opinion_count") == 1.0);
    CHECK(v.at("negative_opinion_count") == 1.0);
    CHECK(v.at("wpos") == doctest::Approx(1.0 / 8.0));
    CHECK(v.at("wneg") == doctest::Approx(1.0 / 8.0));
    CHECK(v.at("spos") == doctest::Approx(0.5));
    CHECK(v.at("sneg") == doctest::Approx(0.5));
}

TEST_CASE("surface rates count characters sentences and repeats") {
    const StyloVector v = extract_stylometrics("Why? Stop now! \"Fine\" OK said the THE the.");
    CHECK(v.at("question_rate") == doctest::Approx(1.0 / 3.0));
    CHECK(v.at("exclamation_rate") == doctest::Approx(1.0 / 3.0));
    CHECK(v.at("quote_count") == 2.0);
    // Tokens: why stop now fine ok said the the the -> 9 words, 7 distinct.
    CHECK(v.at("word_count") == 9.0);
    CHECK(v.at("type_token_ratio") == doctest::Approx(7.0 / 9.0));
    // OK and THE are the all-caps tokens (two letters or more).
    CHECK(v.at("all_caps_rate") == doctest::Approx(2.0 / 9.0));
}

TEST_CASE("curly quotation marks count as quotes") {
    const StyloVector v = extract_stylometrics("\xe2\x80\x9cquoted\xe2\x80\x9d speech");
    CHECK(v.at("quote_count") == 2.0);
}

TEST_CASE("stopword rate uses the stopword lexicon") {
    // the, is, in, and are stopwords; Rain/Spain/falling are not.
    const StyloVector v = extract_stylometrics("the rain in Spain is falling");
    CHECK(v.at("stopword_rate") == doctest::Approx(3.0 / 6.0));
}

TEST_CASE("empty text is degenerate with zeroed features") {
    const StyloVector v = extract_stylometrics("");
    CHECK(v.degenerate);
    CHECK(v.at("word_count") == 0.0);
    CHECK(v.at("flesch_kincaid") == 0.0);
    CHECK_FALSE(extract_stylometrics("words exist").degenerate);
}

TEST_CASE("batch extraction preserves order") {
    const auto rows = extract_stylometrics_batch({"One two.", "One two three four."});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].at("word_count") == 2.0);
    CHECK(rows[1].at("word_count") == 4.0);
}

}  // TEST_SUITE
