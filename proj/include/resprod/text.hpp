#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace resprod::text {

/// Replaces accented Latin letters (Latin-1 and Latin Extended-A) with their
/// ASCII base letters and typographic quotes/dashes with ASCII ones. Other
/// non-ASCII code points and malformed UTF-8 bytes are dropped.
std::string fold_to_ascii(std::string_view utf8);

/// Diacritic-folded, upper-cased, punctuation replaced by single spaces, trimmed.
/// Idempotent.
std::string normalize(std::string_view raw);

std::vector<std::string> split_words(std::string_view normalized);

/// Like `normalize` but keeps hyphens and apostrophes, which carry meaning in surnames.
std::string normalize_surname(std::string_view raw);

/// Normalized surname spellings that should compare equal. Hyphens and
/// apostrophes generate a separated variant ("DE LUCA") and a joined one ("DELUCA").
std::vector<std::string> surname_variants(std::string_view surname);

/// First letters of each given name ("Maria Anna" -> MA, "Gian-Luca" -> GL).
std::string initials_of(std::string_view given_names);

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

}  // namespace resprod::text
