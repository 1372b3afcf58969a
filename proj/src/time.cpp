#include "ag/time.hpp"

#include <cctype>

#include "ag/error.hpp"

namespace ag {

Time Time::from_centis(std::int64_t centis) {
  if (centis < 0) {
    throw Error(ErrorKind::InvalidArgument,
                "time offset must be non-negative, got " +
                    std::to_string(centis) + " centiseconds");
  }
  return Time(centis);
}

Time Time::parse(std::string_view text) {
  if (text.empty()) {
    throw Error(ErrorKind::InvalidArgument, "empty time value");
  }
  std::string_view s = text;
  bool negative = false;
  if (s.front() == '-') {
    negative = true;
    s.remove_prefix(1);
  } else if (s.front() == '+') {
    s.remove_prefix(1);
  }

  std::int64_t whole = 0;
  std::size_t i = 0;
  bool any_digit = false;
  for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
    whole = whole * 10 + (s[i] - '0');
    any_digit = true;
  }
  std::int64_t frac = 0;
  if (i < s.size()) {
    if (s[i] != '.') {
      throw Error(ErrorKind::InvalidArgument,
                  "malformed time value '" + std::string(text) + "'");
    }
    ++i;
    int digits = 0;
    for (; i < s.size(); ++i, ++digits) {
      if (!std::isdigit(static_cast<unsigned char>(s[i])) || digits >= 2) {
        throw Error(ErrorKind::InvalidArgument,
                    "time value '" + std::string(text) +
                        "' is not representable at 0.01 s resolution");
      }
      frac = frac * 10 + (s[i] - '0');
      any_digit = true;
    }
    if (digits == 1) frac *= 10;
  }
  if (!any_digit) {
    throw Error(ErrorKind::InvalidArgument,
                "malformed time value '" + std::string(text) + "'");
  }
  std::int64_t centis = whole * 100 + frac;
  if (negative && centis != 0) {
    throw Error(ErrorKind::InvalidArgument,
                "time offset must be non-negative, got '" + std::string(text) + "'");
  }
  return Time(centis);
}

std::string Time::str() const {
  std::string out = std::to_string(centis_ / 100);
  std::int64_t frac = centis_ % 100;
  out += '.';
  out += static_cast<char>('0' + frac / 10);
  out += static_cast<char>('0' + frac % 10);
  return out;
}

}  // namespace ag
