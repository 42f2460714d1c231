#pragma once

#include <charconv>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace vml {

// Shortest decimal representation that parses back to the same bits. All
// emitted numbers (configs, CSV, JSON echoes) go through here so replays
// are byte-exact.
inline std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty numeric field");
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{})
    throw std::invalid_argument("bad numeric field: " + s);
  return v;
}

inline std::string format_list(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += format_double(xs[i]);
  }
  return out;
}

inline std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    std::string item = s.substr(pos, comma - pos);
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(parse_double(item.substr(b, e - b + 1)));
    pos = comma + 1;
  }
  return out;
}

}  // namespace vml
