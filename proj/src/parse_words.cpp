#include <cctype>
#include <sstream>

#include "ag/error.hpp"
#include "ag/formats.hpp"

namespace ag::formats {

namespace {

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) fields.emplace_back(line.substr(start, i - start));
  }
  return fields;
}

}  // namespace

std::vector<Token> parse_aligned_words(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    auto fields = split_ws(line);
    if (fields.empty()) continue;
    if (fields.size() != 4) {
      throw ParseError("expected 4 fields (CHANNEL START DURATION TEXT), got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    Token tok;
    if (fields[0].size() != 1 || (fields[0][0] != 'A' && fields[0][0] != 'B')) {
      throw ParseError("channel must be A or B, got '" + fields[0] + "'", line_no);
    }
    tok.channel = channel_from_char(fields[0][0]);

    bool star_start = fields[1] == "*";
    bool star_dur = fields[2] == "*";
    if (star_start != star_dur) {
      throw ParseError("start and duration must both be numbers or both '*'",
                       line_no);
    }
    if (!star_start) {
      try {
        tok.start = Time::parse(fields[1]);
        tok.duration = Time::parse(fields[2]);
      } catch (const Error& e) {
        throw ParseError(e.what(), line_no);
      }
    }
    tok.text = fields[3];
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

std::string write_aligned_words(const std::vector<Token>& tokens) {
  std::ostringstream out;
  for (const Token& t : tokens) {
    out << to_char(t.channel) << ' ';
    if (t.timed()) {
      out << t.start->str() << ' ' << t.duration->str();
    } else {
      out << "* *";
    }
    out << ' ' << t.text << '\n';
  }
  return out.str();
}

}  // namespace ag::formats
