#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "automorph/coefficients/hecke.hpp"

namespace automorph {

// Text format:
//   # R <decimal>
//   # parity even|odd
//   # normalization hecke|unitary
//   # count <N>            (optional)
//   <n> <re> [<im>]        n = 1, 2, 3, ...
// Other lines starting with '#' and blank lines are ignored.
//
// "hecke" means a_1 = 1 with multiplicative coefficients; "unitary" means
// an arbitrary constant multiple of those. Both are on the unitary scale.

namespace detail {

inline Real parse_real(const std::string& field, const std::string& context) {
  Real v = 0;
  const char* first = field.data();
  const char* last = first + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw ParseError(context + ": bad number '" + field + "'");
  return v;
}

inline std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace detail

inline CoefficientSeries parse_maass_coefficients(std::istream& in, Real hecke_threshold = 1e-6) {
  std::optional<Real> r;
  std::optional<int> parity;
  std::optional<std::size_t> declared;
  bool hecke = true;
  std::vector<Complex> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = "line " + std::to_string(lineno);
    const auto words = detail::split_ws(line);
    if (words.empty()) continue;
    if (words[0][0] == '#') {
      std::vector<std::string> w = words;
      if (w[0] == "#") {
        w.erase(w.begin());
      } else {
        w[0] = w[0].substr(1);
      }
      if (w.size() != 2) continue;
      if (w[0] == "R") {
        r = detail::parse_real(w[1], where);
        if (!(*r > 0)) throw ParseError(where + ": R must be positive");
      } else if (w[0] == "parity") {
        if (w[1] == "even") parity = 0;
        else if (w[1] == "odd") parity = 1;
        else throw ParseError(where + ": parity must be even or odd");
      } else if (w[0] == "normalization") {
        if (w[1] == "hecke") hecke = true;
        else if (w[1] == "unitary") hecke = false;
        else throw ParseError(where + ": normalization must be hecke or unitary");
      } else if (w[0] == "count") {
        declared = static_cast<std::size_t>(detail::parse_real(w[1], where));
      }
      continue;
    }
    if (words.size() < 2 || words.size() > 3) throw ParseError(where + ": expected '<n> <re> [<im>]'");
    const Real n = detail::parse_real(words[0], where);
    if (n != static_cast<Real>(values.size() + 1)) {
      throw ParseError(where + ": indices must run 1, 2, 3, ... without gaps");
    }
    const Real re = detail::parse_real(words[1], where);
    const Real im = words.size() == 3 ? detail::parse_real(words[2], where) : 0.0;
    values.emplace_back(re, im);
  }
  if (!r) throw ParseError("missing '# R' header");
  if (!parity) throw ParseError("missing '# parity' header");
  if (values.empty()) throw ParseError("no coefficients in body");
  if (declared && *declared != values.size()) {
    throw ParseError("header declares " + std::to_string(*declared) + " coefficients, body has " +
                     std::to_string(values.size()));
  }
  CoefficientSeries s;
  s.spectral = maass_from_r(*r, *parity);
  s.normalization = Normalization::unitary;
  s.hecke_normalized = hecke;
  s.values = std::move(values);
  if (hecke && std::abs(s.values[0] - Complex(1.0)) > 1e-12) {
    s.warnings.emplace_back("normalization: header says hecke but a_1 != 1");
  }
  // Relations are checked on the a_1-normalized values.
  CoefficientSeries normalized = s;
  if (std::abs(s.values[0]) > 0) {
    for (auto& v : normalized.values) v /= s.values[0];
    const HeckeReport rep = check_hecke_relations(normalized);
    s.hecke_residual = rep.max_residual();
    if (rep.max_residual() > hecke_threshold) {
      s.warnings.emplace_back("hecke relations: max residual " + std::to_string(rep.max_residual()) +
                              " exceeds " + std::to_string(hecke_threshold));
    }
  } else {
    s.warnings.emplace_back("normalization: a_1 = 0");
  }
  return s;
}

inline CoefficientSeries load_maass_coefficients(const std::filesystem::path& path, Real hecke_threshold = 1e-6) {
  std::ifstream in(path);
  if (!in) {
    if (!std::filesystem::exists(path)) throw NotFoundError("no such file: " + path.string());
    throw IoError("cannot open " + path.string());
  }
  return parse_maass_coefficients(in, hecke_threshold);
}

}  // namespace automorph
