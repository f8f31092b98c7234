#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace ramsey {

enum class Color { Red, Blue };

inline Color opposite(Color c) { return c == Color::Red ? Color::Blue : Color::Red; }

inline std::string to_string(Color c) { return c == Color::Red ? "red" : "blue"; }

inline std::optional<Color> parse_color(std::string_view s) {
  if (s == "red") return Color::Red;
  if (s == "blue") return Color::Blue;
  return std::nullopt;
}

}  // namespace ramsey
