#pragma once

#include <array>
#include <charconv>
#include <string>
#include <string_view>

#include "automorph/errors.hpp"
#include "automorph/numerics/types.hpp"

namespace automorph {

using numerics::Complex;
using numerics::Real;

// Shortest decimal that reads back to the same double.
inline std::string format_double(Real v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw Error("format_double: conversion failed");
  return std::string(buf.data(), ptr);
}

// "a", "bi", "a+bi", "a-bi"; whitespace is not allowed inside.
inline Complex parse_complex(std::string_view text) {
  if (text.empty()) throw ParseError("empty complex number");
  auto read = [&](std::string_view part) {
    if (part.empty() || part == "+") return Real(1);
    if (part == "-") return Real(-1);
    if (part[0] == '+') part.remove_prefix(1);
    Real v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size()) throw ParseError("bad complex number '" + std::string(text) + "'");
    return v;
  };
  if (text.back() != 'i' && text.back() != 'j') return {read(text), 0.0};
  const std::string_view body = text.substr(0, text.size() - 1);
  // The split is the last sign that is not an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) return {0.0, read(body)};
  return {read(body.substr(0, split)), read(body.substr(split))};
}

inline std::string format_complex(Complex z) {
  if (z.imag() == 0) return format_double(z.real());
  std::string im = format_double(z.imag());
  if (im[0] != '-') im = "+" + im;
  return format_double(z.real()) + im + "i";
}

}  // namespace automorph
