#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace resprod::csv {

/// One parsed record and the physical line on which it starts (1-based).
struct Record {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

/// RFC 4180 with a few tolerances: LF or CRLF line ends, an optional UTF-8 BOM,
/// and blank lines skipped. Quoted fields may span lines. Throws InputError for
/// an unterminated quote or text after a closing quote.
std::vector<Record> parse(std::string_view text, const std::string& source);

/// Reads a whole file; throws InputError when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Quotes a field when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);
std::string format_row(const std::vector<std::string>& fields);

}  // namespace resprod::csv
