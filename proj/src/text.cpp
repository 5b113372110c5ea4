#include "cfgen/text.hpp"

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include <algorithm>
#include <array>
#include <cctype>

#include "cfgen/error.hpp"

namespace cfgen::text {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Length of the UTF-8 sequence starting with `lead`.
std::size_t seq_len(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}

// Case-maps one code point in place. Handles ASCII, Latin-1 letters and the
// French ligature oe.
void map_code_point(std::string& out, std::string_view cp, bool upper) {
  if (cp.size() == 1) {
    auto c = static_cast<unsigned char>(cp[0]);
    out.push_back(static_cast<char>(upper ? std::toupper(c) : std::tolower(c)));
    return;
  }
  if (cp.size() == 2) {
    auto a = static_cast<unsigned char>(cp[0]);
    auto b = static_cast<unsigned char>(cp[1]);
    if (a == 0xC3) {
      if (upper && b >= 0xA0 && b <= 0xBE && b != 0xB7) b -= 0x20;
      if (!upper && b >= 0x80 && b <= 0x9E && b != 0x97) b += 0x20;
    } else if (a == 0xC5 && (b == 0x92 || b == 0x93)) {
      b = upper ? 0x92 : 0x93;
    }
    out.push_back(static_cast<char>(a));
    out.push_back(static_cast<char>(b));
    return;
  }
  out.append(cp);
}

std::string map_case(std::string_view s, bool upper) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    std::size_t n = std::min(seq_len(static_cast<unsigned char>(s[i])), s.size() - i);
    map_code_point(out, s.substr(i, n), upper);
    i += n;
  }
  return out;
}

std::string_view first_code_point(std::string_view s) {
  if (s.empty()) return s;
  return s.substr(0, std::min(seq_len(static_cast<unsigned char>(s[0])), s.size()));
}

bool is_letter_code_point(std::string_view cp) {
  if (cp.empty()) return false;
  auto lead = static_cast<unsigned char>(cp[0]);
  if (cp.size() == 1) return std::isalpha(lead) != 0;
  if (lead == 0xC2) return false;  // Latin-1 punctuation and symbols
  if (lead == 0xC3) {
    auto b = static_cast<unsigned char>(cp[1]);
    return b != 0x97 && b != 0xB7;
  }
  if (lead == 0xE2) return false;  // general punctuation, quotes, dashes
  return true;
}

}  // namespace

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> split_whitespace(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t start = i;
    while (i < s.size() && !is_space(s[i])) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

std::string to_lower(std::string_view s) { return map_case(s, false); }
std::string to_upper(std::string_view s) { return map_case(s, true); }

bool starts_upper(std::string_view s) {
  auto cp = first_code_point(s);
  if (cp.empty() || !is_letter_code_point(cp)) return false;
  return to_upper(cp) == cp && to_lower(cp) != cp;
}

std::string capitalize_first(std::string_view s) {
  auto cp = first_code_point(s);
  return to_upper(cp) + std::string(s.substr(cp.size()));
}

std::string match_case(std::string_view model, std::string_view s) {
  if (model.empty() || s.empty()) return std::string(s);
  if (!starts_upper(model)) return std::string(s);
  std::size_t letters = 0;
  bool all_upper = true;
  for (std::size_t i = 0; i < model.size();) {
    std::size_t n = std::min(seq_len(static_cast<unsigned char>(model[i])), model.size() - i);
    auto cp = model.substr(i, n);
    if (is_letter_code_point(cp)) {
      ++letters;
      if (to_upper(cp) != cp || to_lower(cp) == cp) all_upper = false;
    }
    i += n;
  }
  if (letters >= 2 && all_upper) return to_upper(s);
  return capitalize_first(s);
}

bool starts_with_vowel_or_h(std::string_view s) {
  static constexpr std::array<std::string_view, 22> kVowels = {
      "a", "e", "i", "o", "u", "y", "h", "à", "â", "ä", "é",
      "è", "ê", "ë", "î", "ï", "ô", "ö", "ù", "û", "ü", "œ"};
  const std::string cp = to_lower(first_code_point(s));
  return std::find(kVowels.begin(), kVowels.end(), cp) != kVowels.end();
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

std::vector<std::string> word_tokens(std::string_view s) {
  std::vector<std::string> out;
  std::string current;
  for (std::size_t i = 0; i < s.size();) {
    std::size_t n = std::min(seq_len(static_cast<unsigned char>(s[i])), s.size() - i);
    auto cp = s.substr(i, n);
    if (is_letter_code_point(cp)) {
      current.append(cp);
    } else if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
    i += n;
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

bool letter_at(std::string_view s, std::size_t pos) {
  if (pos >= s.size()) return false;
  return is_letter_code_point(first_code_point(s.substr(pos)));
}

bool letter_before(std::string_view s, std::size_t pos) {
  if (pos == 0 || pos > s.size()) return false;
  std::size_t start = pos - 1;
  while (start > 0 && (static_cast<unsigned char>(s[start]) & 0xC0) == 0x80) --start;
  return is_letter_code_point(s.substr(start, pos - start));
}

std::string nfc(std::string_view s) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* normalizer = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");
  icu::UnicodeString input = icu::UnicodeString::fromUTF8(
      icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
  icu::UnicodeString normalized = normalizer->normalize(input, status);
  if (U_FAILURE(status)) throw Error("NFC normalization failed");
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

}  // namespace cfgen::text
