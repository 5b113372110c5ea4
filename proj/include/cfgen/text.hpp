#pragma once

// Small UTF-8 aware string helpers shared by every stage. Case mapping only
// covers ASCII and the Latin-1 supplement, which is all the Romance target
// languages need.

#include <string>
#include <string_view>
#include <vector>

namespace cfgen::text {

std::vector<std::string_view> split(std::string_view s, char sep);
std::vector<std::string_view> split_whitespace(std::string_view s);
std::string_view trim(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

std::string to_lower(std::string_view s);
std::string to_upper(std::string_view s);

// True when the first code point is an upper-case letter.
bool starts_upper(std::string_view s);
// Upper-cases the first code point only.
std::string capitalize_first(std::string_view s);
// Applies the capitalization pattern of `model` (lower, Title, UPPER) to `s`.
std::string match_case(std::string_view model, std::string_view s);

// First code point is a vowel (including accented ones) or 'h'; used by
// elision rules.
bool starts_with_vowel_or_h(std::string_view s);

bool ends_with(std::string_view s, std::string_view suffix);
bool starts_with(std::string_view s, std::string_view prefix);

// Splits on everything that is not a letter; apostrophes separate words.
std::vector<std::string> word_tokens(std::string_view s);

// Whether the code point starting at / ending just before byte `pos` is a
// letter. Out-of-range positions count as non-letters.
bool letter_at(std::string_view s, std::size_t pos);
bool letter_before(std::string_view s, std::size_t pos);

// Unicode NFC normalization.
std::string nfc(std::string_view s);

}  // namespace cfgen::text
