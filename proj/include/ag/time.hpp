#ifndef AG_TIME_HPP
#define AG_TIME_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace ag {

/// Offset into a signal file, stored as integer centiseconds (10 ms
/// resolution). Exact integer storage keeps anchor comparison and node
/// unification free of floating-point identity traps.
class Time {
 public:
  Time() = default;

  static Time from_centis(std::int64_t centis);

  /// Parses a decimal seconds string ("21.86", "0", "19.4") with at most
  /// two fractional digits. Throws Error(InvalidArgument) on anything
  /// else, including negative values.
  static Time parse(std::string_view text);

  std::int64_t centis() const { return centis_; }
  double seconds() const { return static_cast<double>(centis_) / 100.0; }

  /// Renders as decimal seconds with two fractional digits ("21.86").
  std::string str() const;

  Time plus(Time d) const { return Time(centis_ + d.centis_); }

  auto operator<=>(const Time&) const = default;

 private:
  explicit Time(std::int64_t centis) : centis_(centis) {}

  std::int64_t centis_ = 0;
};

}  // namespace ag

#endif  // AG_TIME_HPP
