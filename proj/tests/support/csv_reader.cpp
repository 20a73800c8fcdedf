#include "csv_reader.hpp"

#include <stdexcept>

namespace csvread {

Table parse(const std::string& text) {
  Table out;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, in_quotes = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      if (c != '"') {
        field += c;
      } else if (i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else {
        in_quotes = false;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty() || quoted) throw std::runtime_error("quote inside unquoted field");
        in_quotes = quoted = true;
        break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        quoted = false;
        break;
      case '\n':
        row.push_back(std::move(field));
        field.clear();
        quoted = false;
        out.push_back(std::move(row));
        row.clear();
        break;
      default:
        if (quoted) throw std::runtime_error("text after closing quote");
        field += c;
    }
  }
  if (in_quotes) throw std::runtime_error("unterminated quote");
  if (!field.empty() || !row.empty()) throw std::runtime_error("missing final newline");
  return out;
}

std::vector<std::vector<std::pair<std::string, std::string>>> records(const std::string& text) {
  Table t = parse(text);
  if (t.empty()) throw std::runtime_error("no header");
  std::vector<std::vector<std::pair<std::string, std::string>>> out;
  for (std::size_t r = 1; r < t.size(); ++r) {
    if (t[r].size() != t[0].size()) throw std::runtime_error("row " + std::to_string(r) + " has wrong width");
    std::vector<std::pair<std::string, std::string>> rec;
    for (std::size_t c = 0; c < t[0].size(); ++c) rec.emplace_back(t[0][c], t[r][c]);
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace csvread
