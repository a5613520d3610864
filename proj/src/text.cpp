#include "resprod/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>

namespace resprod::text {

namespace {

// ASCII spellings for U+00C0..U+00FF.
constexpr std::array<const char*, 64> kLatin1 = {
    "A", "A", "A", "A", "A", "A", "AE", "C", "E", "E", "E", "E", "I", "I", "I", "I",
    "D", "N", "O", "O", "O", "O", "O", " ", "O", "U", "U", "U", "U", "Y", "TH", "SS",
    "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
    "d", "n", "o", "o", "o", "o", "o", " ", "o", "u", "u", "u", "u", "y", "th", "y"};

// Base letters for U+0100..U+017F.
constexpr std::string_view kLatinExtA =
    "AaAaAaCcCcCcCcDdDdEeEeEeEeEeGgGgGgGgHhHhIiIiIiIiIi"
    "JjKkkLlLlLlLlLlNnNnNnnNnOoOoOoRrRrRrSsSsSsSsTtTtTt"
    "UuUuUuUuUuUuWwYyYZzZzZzs";
static_assert(kLatinExtA.size() == 124);

std::string_view fold_code_point(std::uint32_t cp) {
  if (cp >= 0xC0 && cp <= 0xFF) return kLatin1[cp - 0xC0];
  if (cp >= 0x100 && cp <= 0x17F) {
    if (cp == 0x132 || cp == 0x133) return "IJ";
    if (cp == 0x152 || cp == 0x153) return "OE";
    std::size_t k = cp - 0x100;
    if (cp > 0x133) k -= 2;
    if (cp > 0x153) k -= 2;
    return kLatinExtA.substr(k, 1);
  }
  switch (cp) {
    case 0x2018:
    case 0x2019:
    case 0x201B:
    case 0x2032:
      return "'";
    case 0x2010:
    case 0x2011:
    case 0x2012:
    case 0x2013:
    case 0x2014:
    case 0x2015:
      return "-";
    case 0x00A0:
    case 0x201C:
    case 0x201D:
    case 0x00AB:
    case 0x00BB:
      return " ";
    default:
      return "";
  }
}

bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

std::string collapse_spaces(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending = false;
  for (char c : s) {
    if (c == ' ') {
      pending = !out.empty();
      continue;
    }
    if (pending) out.push_back(' ');
    pending = false;
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string fold_to_ascii(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    const auto b = static_cast<unsigned char>(s[i]);
    if (b < 0x80) {
      out.push_back(static_cast<char>(b));
      ++i;
      continue;
    }
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if ((b & 0xE0) == 0xC0) {
      len = 2;
      cp = b & 0x1F;
    } else if ((b & 0xF0) == 0xE0) {
      len = 3;
      cp = b & 0x0F;
    } else if ((b & 0xF8) == 0xF0) {
      len = 4;
      cp = b & 0x07;
    } else {
      ++i;
      continue;
    }
    bool ok = i + len <= s.size();
    for (std::size_t k = 1; ok && k < len; ++k) {
      const auto cb = static_cast<unsigned char>(s[i + k]);
      if ((cb & 0xC0) != 0x80) ok = false;
      cp = (cp << 6) | (cb & 0x3F);
    }
    if (!ok) {
      ++i;
      continue;
    }
    out += fold_code_point(cp);
    i += len;
  }
  return out;
}

std::string normalize(std::string_view raw) {
  std::string folded = fold_to_ascii(raw);
  for (char& c : folded) {
    c = is_alnum(c) ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : ' ';
  }
  return collapse_spaces(folded);
}

std::string normalize_surname(std::string_view raw) {
  std::string folded = fold_to_ascii(raw);
  for (char& c : folded) {
    if (c == '-' || c == '\'') continue;
    c = is_alnum(c) ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : ' ';
  }
  return collapse_spaces(folded);
}

std::vector<std::string> split_words(std::string_view normalized) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < normalized.size()) {
    while (i < normalized.size() && normalized[i] == ' ') ++i;
    std::size_t j = i;
    while (j < normalized.size() && normalized[j] != ' ') ++j;
    if (j > i) words.emplace_back(normalized.substr(i, j - i));
    i = j;
  }
  return words;
}

std::vector<std::string> surname_variants(std::string_view surname) {
  const std::string folded = fold_to_ascii(surname);
  std::string separated;
  std::string joined;
  for (char c : folded) {
    if (c == '-' || c == '\'') {
      separated.push_back(' ');
      continue;
    }
    const char u = is_alnum(c) ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : ' ';
    separated.push_back(u);
    joined.push_back(u);
  }
  std::vector<std::string> out{collapse_spaces(separated), collapse_spaces(joined)};
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  out.erase(std::remove(out.begin(), out.end(), std::string{}), out.end());
  return out;
}

std::string initials_of(std::string_view given_names) {
  std::string out;
  for (const auto& w : split_words(normalize(given_names))) out.push_back(w.front());
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? s.size() - start : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace resprod::text
