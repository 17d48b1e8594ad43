#pragma once

#include <string>
#include <string_view>

#include "automorph/errors.hpp"

namespace automorph {

using int128 = __int128;

inline std::string to_string(int128 v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  // Work with negative magnitudes so INT128_MIN is representable.
  std::string digits;
  int128 x = negative ? v : -v;
  while (x != 0) {
    digits.push_back(static_cast<char>('0' - static_cast<int>(x % 10)));
    x /= 10;
  }
  if (negative) digits.push_back('-');
  return {digits.rbegin(), digits.rend()};
}

inline int128 parse_int128(std::string_view text) {
  if (text.empty()) throw ParseError("empty integer field");
  std::size_t i = 0;
  const bool negative = text[0] == '-';
  if (negative || text[0] == '+') ++i;
  if (i == text.size()) throw ParseError("malformed integer field");
  int128 x = 0;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c < '0' || c > '9') throw ParseError("malformed integer field: " + std::string(text));
    int128 next;
    if (__builtin_mul_overflow(x, 10, &next) || __builtin_sub_overflow(next, c - '0', &next)) {
      throw ParseError("integer field overflows 128 bits");
    }
    x = next;
  }
  if (!negative) {
    if (x == -x && x != 0) throw ParseError("integer field overflows 128 bits");
    x = -x;
  }
  return x;
}

inline int128 checked_mul(int128 a, int128 b) {
  int128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw DomainError("128-bit integer overflow");
  return r;
}

inline int128 checked_add(int128 a, int128 b) {
  int128 r;
  if (__builtin_add_overflow(a, b, &r)) throw DomainError("128-bit integer overflow");
  return r;
}

}  // namespace automorph
