#include "resprod/csv.hpp"

#include <fstream>
#include <sstream>

#include "resprod/errors.hpp"

namespace resprod {

namespace {

std::string summarize(const std::vector<LineDiagnostic>& d) {
  if (d.empty()) return "input error";
  std::string s = d.front().file + ":" + std::to_string(d.front().line) + ": " + d.front().message;
  if (d.size() > 1) s += " (and " + std::to_string(d.size() - 1) + " more)";
  return s;
}

}  // namespace

InputError::InputError(std::vector<LineDiagnostic> diagnostics)
    : Error(summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {}

namespace csv {

std::vector<Record> parse(std::string_view text, const std::string& source) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  std::vector<Record> out;
  Record current;
  std::string field;
  std::size_t line = 1;
  bool in_quotes = false;
  bool after_quote = false;  // just closed a quoted field
  bool record_has_content = false;

  auto end_field = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
    after_quote = false;
  };
  auto end_record = [&] {
    if (record_has_content || current.fields.size() > 0) {
      end_field();
      out.push_back(std::move(current));
    }
    current = Record{};
    field.clear();
    after_quote = false;
    record_has_content = false;
  };
  auto fail = [&](std::size_t at, const std::string& what) {
    throw InputError({{source, at, what}});
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (!record_has_content && current.fields.empty() && field.empty()) current.line = line;
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
          after_quote = true;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == ',') {
      record_has_content = true;
      end_field();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      end_record();
      ++line;
    } else if (after_quote) {
      fail(line, "unexpected character after closing quote");
    } else if (c == '"') {
      if (!field.empty()) fail(line, "quote inside an unquoted field");
      in_quotes = true;
      record_has_content = true;
    } else {
      field.push_back(c);
      record_has_content = true;
    }
  }
  if (in_quotes) fail(current.line, "unterminated quoted field");
  end_record();
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError({{path.string(), 0, "cannot open file"}});
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string format_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += escape(fields[i]);
  }
  return out;
}

}  // namespace csv
}  // namespace resprod
