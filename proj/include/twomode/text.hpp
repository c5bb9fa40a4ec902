// Copyright 2026 The twomode Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TWOMODE_TEXT_HPP
#define TWOMODE_TEXT_HPP

#include <cctype>
#include <charconv>
#include <complex>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace twomode::text {

/// Round-trippable decimal: 17 significant digits, '.' separator.
inline std::string format_real(double x) {
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string format_complex(std::complex<double> z) {
  if (z.imag() == 0.0) return format_real(z.real());
  std::string im = format_real(z.imag());
  if (z.real() == 0.0) return im + "i";
  if (im.front() != '-') im = "+" + im;
  return format_real(z.real()) + im + "i";
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.emplace_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::optional<double> parse_real(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

inline std::optional<long> parse_int(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

/// Accepts "a", "bi", "a+bi", "a-bi" (exponents allowed in a and b).
inline std::optional<std::complex<double>> parse_complex(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.back() != 'i') {
    if (auto r = parse_real(s)) return std::complex<double>(*r, 0.0);
    return std::nullopt;
  }
  s.remove_suffix(1);
  // Split at the last sign that is not the leading one or part of an exponent.
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      auto re = parse_real(s.substr(0, k));
      std::string_view ims = s.substr(k);
      if (ims == "+" || ims == "-") ims = ims == "+" ? "1" : "-1";
      auto im = parse_real(ims);
      if (re && im) return std::complex<double>(*re, *im);
      return std::nullopt;
    }
  }
  if (s.empty() || s == "+") return std::complex<double>(0.0, 1.0);
  if (s == "-") return std::complex<double>(0.0, -1.0);
  if (auto im = parse_real(s)) return std::complex<double>(0.0, *im);
  return std::nullopt;
}

}  // namespace twomode::text

#endif  // TWOMODE_TEXT_HPP
