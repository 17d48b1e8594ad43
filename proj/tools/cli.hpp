#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "automorph/acceptance.hpp"
#include "automorph/coefficients.hpp"
#include "automorph/eisenstein.hpp"
#include "automorph/extsquare.hpp"
#include "automorph/format.hpp"
#include "automorph/lseries.hpp"
#include "automorph/mellin_oracle.hpp"

namespace automorph::cli {

enum ExitCode : int { kPass = 0, kToleranceFail = 1, kUsage = 2, kIo = 3 };

// One output value. Numeric kinds carry an error estimate, rendered as a
// sibling field "<name>_error".
struct Field {
  enum class Kind { text, integer, exact, real, complex };
  std::string name;
  Kind kind = Kind::text;
  std::string text;
  long long integer = 0;
  Complex value{};
  Real error = 0.0;
};

struct Record {
  std::vector<Field> fields;

  Record& text(std::string name, std::string v) {
    fields.push_back({std::move(name), Field::Kind::text, std::move(v)});
    return *this;
  }
  Record& integer(std::string name, long long v) {
    Field f{std::move(name), Field::Kind::integer};
    f.integer = v;
    fields.push_back(std::move(f));
    return *this;
  }
  // Exact integer of arbitrary width, kept as decimal digits.
  Record& exact(std::string name, std::string digits) {
    fields.push_back({std::move(name), Field::Kind::exact, std::move(digits)});
    return *this;
  }
  Record& real(std::string name, Real v, Real err) {
    Field f{std::move(name), Field::Kind::real};
    f.value = v;
    f.error = err;
    fields.push_back(std::move(f));
    return *this;
  }
  Record& complex(std::string name, Complex v, Real err) {
    Field f{std::move(name), Field::Kind::complex};
    f.value = v;
    f.error = err;
    fields.push_back(std::move(f));
    return *this;
  }
};

struct Document {
  std::string command;
  std::uint64_t seed = 42;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<Record> records;
  bool pass = true;
  std::vector<std::string> messages;
};

enum class Format { json, csv, text };

// %.17g: every double reads back exactly.
inline std::string csv_double(Real v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

inline nlohmann::ordered_json json_number(Real v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

inline std::string render_json(const Document& d) {
  nlohmann::ordered_json j;
  j["command"] = d.command;
  j["seed"] = d.seed;
  j["status"] = d.pass ? "pass" : "fail";
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : d.parameters) params[k] = v;
  j["parameters"] = params;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : d.records) {
    nlohmann::ordered_json row = nlohmann::ordered_json::object();
    for (const auto& f : r.fields) {
      switch (f.kind) {
        case Field::Kind::text: row[f.name] = f.text; break;
        case Field::Kind::integer:
          row[f.name] = f.integer;
          row[f.name + "_error"] = 0;
          break;
        case Field::Kind::exact:
          row[f.name] = f.text;
          row[f.name + "_error"] = 0;
          break;
        case Field::Kind::real:
          row[f.name] = json_number(f.value.real());
          row[f.name + "_error"] = json_number(f.error);
          break;
        case Field::Kind::complex:
          row[f.name] = {{"re", json_number(f.value.real())}, {"im", json_number(f.value.imag())}};
          row[f.name + "_error"] = json_number(f.error);
          break;
      }
    }
    rows.push_back(row);
  }
  j["records"] = rows;
  j["messages"] = d.messages;
  return j.dump(2) + "\n";
}

// Header from the first record; every row starts with the seed.
inline std::string render_csv(const Document& d) {
  std::string out;
  if (d.records.empty()) return "seed\n" + std::to_string(d.seed) + "\n";
  std::vector<std::string> header{"seed"};
  for (const auto& f : d.records.front().fields) {
    switch (f.kind) {
      case Field::Kind::text: header.push_back(f.name); break;
      case Field::Kind::integer:
      case Field::Kind::exact:
      case Field::Kind::real:
        header.push_back(f.name);
        header.push_back(f.name + "_error");
        break;
      case Field::Kind::complex:
        header.push_back(f.name + "_re");
        header.push_back(f.name + "_im");
        header.push_back(f.name + "_error");
        break;
    }
  }
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += "\n";
  for (const auto& r : d.records) {
    out += std::to_string(d.seed);
    for (const auto& f : r.fields) {
      switch (f.kind) {
        case Field::Kind::text: out += "," + csv_quote(f.text); break;
        case Field::Kind::integer: out += "," + std::to_string(f.integer) + ",0"; break;
        case Field::Kind::exact: out += "," + f.text + ",0"; break;
        case Field::Kind::real: out += "," + csv_double(f.value.real()) + "," + csv_double(f.error); break;
        case Field::Kind::complex:
          out += "," + csv_double(f.value.real()) + "," + csv_double(f.value.imag()) + "," + csv_double(f.error);
          break;
      }
    }
    out += "\n";
  }
  return out;
}

inline std::string render_text(const Document& d) {
  std::string out = "command: " + d.command + "\nseed: " + std::to_string(d.seed) + "\n";
  for (const auto& [k, v] : d.parameters) out += k + ": " + v + "\n";
  for (const auto& r : d.records) {
    std::string line;
    for (const auto& f : r.fields) {
      if (!line.empty()) line += " ";
      switch (f.kind) {
        case Field::Kind::text: line += f.name + "=" + f.text; break;
        case Field::Kind::integer: line += f.name + "=" + std::to_string(f.integer); break;
        case Field::Kind::exact: line += f.name + "=" + f.text; break;
        case Field::Kind::real: line += f.name + "=" + format_double(f.value.real()) + " +- " + format_double(f.error); break;
        case Field::Kind::complex: line += f.name + "=" + format_complex(f.value) + " +- " + format_double(f.error); break;
      }
    }
    out += line + "\n";
  }
  for (const auto& m : d.messages) out += "note: " + m + "\n";
  out += std::string("status: ") + (d.pass ? "pass" : "fail") + "\n";
  return out;
}

inline std::string render(const Document& d, Format f) {
  switch (f) {
    case Format::json: return render_json(d);
    case Format::csv: return render_csv(d);
    case Format::text: return render_text(d);
  }
  return {};
}

// Shared state of a run: global flags plus per-command options.
struct RunConfig {
  std::optional<Real> tol;
  std::string cache_dir;
  std::uint64_t seed = 42;
  std::string out;
  Format format = Format::text;

  // coeffs / lvalue / fe-check
  std::string form = "delta";
  std::size_t count = 0;
  int k = 4;
  std::string nu = "1";
  std::string t = "0.5+4i";
  std::string file;
  std::string s;
  std::string method = "auto";
  bool mean_value_tail = false;
  Real lhs_split = 1.0, rhs_split = 1.25;
  std::vector<std::string> points;

  // mellin-verify
  std::string identity;
  std::string mu = "0", alpha = "0.3", beta = "0.3";
  int sign = 1, eta = 0, delta = 0;
  Real x = 0.0, y = 1.0, z = 2.0;
  std::string fixture;

  // extsq-verify
  int trials = 100, kmax = 12;
  Real x_radius = 0.5;
  Real littlewood_tol = 1e-9;

  // eisenstein
  int lattice_r = 64;

  // fe-check / accept
  std::string kind;
  std::string suite = "fast";
  std::string fixture_dir;
  std::string maass_file;
};

inline Real tolerance(const RunConfig& c, Real fallback) {
  const Real t = c.tol.value_or(fallback);
  if (!(t > 0)) throw DomainError("--tol must be positive");
  return t;
}

inline Complex complex_flag(const std::string& text, const char* name) {
  try {
    return parse_complex(text);
  } catch (const ParseError&) {
    throw DomainError(std::string("--") + name + ": cannot parse '" + text + "' as a complex number");
  }
}

// Delta coefficients, read from and written to the cache directory when one is given.
inline CoefficientSeries cached(const RunConfig& c, const std::string& name,
                                const std::function<CoefficientSeries()>& make) {
  if (c.cache_dir.empty()) return make();
  try {
    return cache_load(c.cache_dir, name);
  } catch (const NotFoundError&) {
  }
  auto series = make();
  cache_store(series, c.cache_dir, name);
  return series;
}

inline CoefficientSeries delta_series(const RunConfig& c, std::size_t count) {
  return cached(c, "delta-" + std::to_string(count), [&] { return delta_coefficients(count); });
}

inline std::string join(const std::vector<std::string>& v, const std::string& sep = "; ") {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : sep) + s;
  return out;
}

inline CoefficientSeries load_form(const RunConfig& c, std::size_t default_count) {
  const std::size_t n = c.count ? c.count : default_count;
  if (c.form == "delta") return delta_series(c, n);
  if (c.form == "eisenstein") {
    return cached(c, "eisenstein-" + std::to_string(c.k) + "-" + std::to_string(n),
                  [&] { return eisenstein_qcoeffs(c.k, n); });
  }
  if (c.form == "divisor") return divisor_power_coeffs(complex_flag(c.nu, "nu"), n);
  if (c.form == "maass") {
    if (c.file.empty()) throw DomainError("--form maass needs --file");
    return load_maass_coefficients(c.file);
  }
  if (c.form == "eisenstein-maass") return lseries::eisenstein_as_maass(complex_flag(c.t, "t"), n).first;
  throw DomainError("unknown --form '" + c.form + "'");
}

inline Document cmd_coeffs(const RunConfig& c) {
  Document d{"coeffs", c.seed};
  d.parameters = {{"form", c.form}, {"count", std::to_string(c.count ? c.count : 10)}};
  const auto series = load_form(c, 10);
  for (std::size_t n = 1; n <= series.count(); ++n) {
    Record r;
    r.integer("n", static_cast<long long>(n));
    if (series.is_exact()) {
      r.exact("a_n", to_string(series.exact[n - 1]));
    } else {
      const Complex v = series.at(n);
      r.complex("a_n", v, 4.0 * numerics::kEps * std::abs(v));
    }
    d.records.push_back(std::move(r));
  }
  if (series.scale != Complex(1.0)) d.messages.push_back("common scale " + format_complex(series.scale));
  for (const auto& w : series.warnings) d.messages.push_back(w);
  return d;
}

inline Record eval_record(const std::string& s, const EvalReport& e) {
  Record r;
  r.text("s", s).complex("value", e.value, e.error).integer("terms", static_cast<long long>(e.terms));
  r.text("method", e.method).text("flags", join(e.flags));
  return r;
}

inline Document cmd_lvalue(const RunConfig& c) {
  Document d{"lvalue", c.seed};
  const Complex s = complex_flag(c.s, "s");
  d.parameters = {{"form", c.form}, {"s", format_complex(s)}, {"method", c.method}};
  EvalReport e;
  if (c.form == "rs") {
    const auto delta = delta_series(c, c.count ? c.count : 20000);
    const auto pair = lseries::rankin_selberg(delta, delta);
    if (c.method == "dirichlet") {
      e = lseries::dirichlet_eval(pair, s, delta.count(),
                                  c.mean_value_tail ? lseries::TailModel::mean_value : lseries::TailModel::bound_only);
    } else if (c.method == "auto" || c.method == "integral") {
      e = lseries::rankin_selberg_l(pair, s);
    } else {
      throw DomainError("--method for rs must be dirichlet or integral");
    }
  } else {
    const auto series = load_form(c, 2000);
    const bool maass = std::holds_alternative<Maass>(series.spectral);
    if (c.method == "dirichlet" || (c.method == "auto" && c.form == "divisor")) {
      e = lseries::dirichlet_eval(lseries::standard(series), s, series.count(),
                                  c.mean_value_tail ? lseries::TailModel::mean_value : lseries::TailModel::bound_only);
    } else if (c.method == "auto" || c.method == "completed") {
      if (maass) {
        std::optional<lseries::MaassConstantTerm> constant;
        if (c.form == "eisenstein-maass") constant = lseries::eisenstein_as_maass(complex_flag(c.t, "t"), 1).second;
        e = lseries::completed_maass_l(series, s, 1e-13, constant);
      } else {
        e = lseries::completed_hecke_l(series, s, c.lhs_split);
      }
    } else {
      throw DomainError("unknown --method '" + c.method + "'");
    }
  }
  d.records.push_back(eval_record(format_complex(s), e));
  if (c.tol && e.error > tolerance(c, 1.0) * std::abs(e.value)) {
    d.pass = false;
    d.messages.push_back("error estimate above --tol relative to the value");
  }
  return d;
}

inline lseries::FEKind fe_kind(const std::string& k) {
  if (k == "hecke") return lseries::FEKind::hecke;
  if (k == "maass") return lseries::FEKind::maass;
  if (k == "rankin-selberg") return lseries::FEKind::rankin_selberg;
  if (k == "prop1") return lseries::FEKind::prop1;
  if (k == "completed") return lseries::FEKind::completed;
  throw DomainError("unknown functional-equation kind '" + k + "'");
}

inline Document cmd_fe_check(const RunConfig& c) {
  Document d{"fe-check", c.seed};
  const auto kind = fe_kind(c.kind);
  lseries::FEInputs in;
  Real default_tol = 1e-9;
  std::vector<std::string> points = c.points;
  switch (kind) {
    case lseries::FEKind::hecke:
      in.f = load_form(c, 200);
      in.lhs_split = c.lhs_split;
      in.rhs_split = c.rhs_split;
      if (points.empty()) points = {"6", "5+2i", "7-4i"};
      break;
    case lseries::FEKind::maass: {
      if (c.form == "eisenstein-maass") {
        auto [series, constant] = lseries::eisenstein_as_maass(complex_flag(c.t, "t"), c.count ? c.count : 200);
        in.f = series;
        in.constant = constant;
      } else {
        in.f = load_form(c, 2000);
      }
      in.tol = 1e-13;
      if (points.empty()) points = {"0.5", "0.25+1.5i", "0.8-3i"};
      break;
    }
    default: {
      const auto delta = delta_series(c, c.count ? c.count : 200);
      in.f = delta;
      in.g = delta;
      default_tol = kind == lseries::FEKind::rankin_selberg ? 1e-6 : 1e-5;
      if (points.empty()) points = {"0.3+2i", "0.7+0.5i"};
      break;
    }
  }
  const Real tol = tolerance(c, default_tol);
  d.parameters = {{"kind", c.kind}, {"form", c.form}, {"tol", format_double(tol)}};
  for (const auto& p : points) {
    const Complex s = complex_flag(p, "s");
    const auto r = lseries::fe_residual(kind, in, s);
    Record rec;
    rec.text("s", format_complex(s)).complex("lhs", r.lhs, 0.5 * r.error).complex("rhs", r.rhs, 0.5 * r.error);
    rec.real("abs_residual", r.abs_residual, r.error).real("rel_residual", r.rel_residual, r.error / std::max({std::abs(r.lhs), std::abs(r.rhs), Real(1e-300)}));
    rec.text("gamma_factor", r.gamma_expr_used.describe());
    if (r.rel_residual > tol) {
      d.pass = false;
      d.messages.push_back(std::string(lseries::to_string(kind)) + " functional equation: residual " +
                           format_double(r.rel_residual) + " above " + format_double(tol) + " at s = " + format_complex(s));
    }
    d.records.push_back(std::move(rec));
  }
  return d;
}

inline Record identity_record(const IdentityReport& r) {
  std::string params;
  for (const auto& [k, v] : r.parameters) params += (params.empty() ? "" : " ") + k + "=" + format_complex(v);
  Record rec;
  rec.text("identity", r.identity_id).text("parameters", params);
  rec.complex("lhs", r.lhs, r.quadrature.abs_error_estimate).complex("rhs", r.rhs, 0.0);
  rec.real("abs_residual", r.abs_residual, r.quadrature.abs_error_estimate).real("rel_residual", r.rel_residual(), r.quadrature.abs_error_estimate / std::max(std::abs(r.rhs), Real(1e-300)));
  rec.integer("evaluations", static_cast<long long>(r.quadrature.evaluations));
  return rec;
}

inline Real identity_default_tol(const std::string& id) {
  return (id == "bessel-double" || id == "kernel") ? 1e-6 : 1e-8;
}

inline Document cmd_mellin_verify(const RunConfig& c) {
  Document d{"mellin-verify", c.seed};
  std::vector<FixturePoint> points;
  if (c.identity == "fixture") {
    const std::string path = c.fixture.empty() ? std::string(AUTOMORPH_FIXTURE_DIR) + "/mellin_grid.txt" : c.fixture;
    points = load_fixture(path);
    d.parameters = {{"identity", "fixture"}, {"fixture", std::filesystem::path(path).filename().string()}};
  } else {
    FixturePoint p{c.identity, {}, 0};
    p.params = {{"s", complex_flag(c.s.empty() ? "0.5" : c.s, "s")},
                {"nu", complex_flag(c.nu, "nu")},
                {"mu", complex_flag(c.mu, "mu")},
                {"sign", Real(c.sign)},
                {"eta", Real(c.eta)},
                {"delta", Real(c.delta)},
                {"x", c.x},
                {"y", c.y},
                {"z", c.z},
                {"alpha", complex_flag(c.alpha, "alpha")},
                {"beta", complex_flag(c.beta, "beta")}};
    points.push_back(p);
    d.parameters = {{"identity", c.identity}};
  }
  for (const auto& p : points) {
    IdentityReport r;
    try {
      r = run_fixture_point(p);
    } catch (const ParseError& e) {
      throw DomainError(e.what());
    }
    const Real tol = tolerance(c, identity_default_tol(p.identity_id));
    if (r.rel_residual() > tol) {
      d.pass = false;
      d.messages.push_back(r.identity_id + ": residual " + format_double(r.rel_residual()) + " above " + format_double(tol) +
                           (p.line ? " at fixture line " + std::to_string(p.line) : std::string()));
    }
    d.records.push_back(identity_record(r));
  }
  return d;
}

// Fixture lines "key=value" for seed, trials, kmax, tol, x_radius; flags given
// on the command line take precedence.
inline void read_extsq_fixture(const std::string& path, RunConfig& c, bool seed_set, bool trials_set, bool kmax_set) {
  std::ifstream in(path);
  if (!in) {
    if (!std::filesystem::exists(path)) throw NotFoundError("fixture not found: " + path);
    throw IoError("cannot read " + path);
  }
  std::string line;
  while (std::getline(in, line)) {
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream words(line);
    for (std::string kv; words >> kv;) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw DomainError("extsq fixture: expected key=value, got '" + kv + "'");
      const std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
      try {
        if (key == "seed") {
          if (!seed_set) c.seed = std::stoull(value);
        } else if (key == "trials") {
          if (!trials_set) c.trials = std::stoi(value);
        } else if (key == "kmax") {
          if (!kmax_set) c.kmax = std::stoi(value);
        } else if (key == "tol") {
          if (!c.tol) c.tol = std::stod(value);
        } else if (key == "x_radius") {
          c.x_radius = std::stod(value);
        } else {
          throw DomainError("extsq fixture: unknown key '" + key + "'");
        }
      } catch (const std::logic_error&) {
        throw DomainError("extsq fixture: bad value for '" + key + "'");
      }
    }
  }
}

inline Document cmd_extsq_verify(const RunConfig& c) {
  Document d{"extsq-verify", c.seed};
  const Real tol = tolerance(c, 1e-10);
  d.parameters = {{"trials", std::to_string(c.trials)}, {"kmax", std::to_string(c.kmax)},
                  {"x_radius", format_double(c.x_radius)}, {"tol", format_double(tol)}};
  const auto b = extsquare::js_verify_batch(c.seed, c.trials, c.kmax, c.x_radius);
  Record r;
  r.real("max_js_residual", b.max_js_residual, 0.0).real("max_littlewood_residual", b.max_littlewood_residual, 0.0);
  r.integer("worst_trial", b.worst_trial);
  d.records.push_back(std::move(r));
  if (b.max_js_residual > tol) {
    d.pass = false;
    d.messages.push_back("Jacquet-Shalika identity: residual " + format_double(b.max_js_residual) + " above " +
                         format_double(tol) + " at trial " + std::to_string(b.worst_trial));
  }
  if (b.max_littlewood_residual > c.littlewood_tol) {
    d.pass = false;
    d.messages.push_back("Littlewood identity: residual " + format_double(b.max_littlewood_residual) + " above " +
                         format_double(c.littlewood_tol));
  }
  return d;
}

inline Document cmd_eisenstein(const RunConfig& c) {
  Document d{"eisenstein", c.seed};
  const Complex zc = complex_flag(c.points.at(0), "z");
  const Complex s = complex_flag(c.s, "s");
  const auto z = eisenstein::make_point(zc.real(), zc.imag());
  d.parameters = {{"z", format_complex(zc)}, {"s", format_complex(s)}};
  const auto red = eisenstein::reduce_to_fundamental_domain(z);
  const auto e = eisenstein::eval_completed_eisenstein(s, z);
  Record r;
  r.complex("value", e.value, e.error).integer("terms", static_cast<long long>(e.terms));
  r.text("reduced_z", format_complex(Complex(red.reduced.x, red.reduced.y)));
  r.text("matrix", std::to_string(red.matrix.a) + " " + std::to_string(red.matrix.b) + " " +
                       std::to_string(red.matrix.c) + " " + std::to_string(red.matrix.d));
  if (s.real() > 1.0) {
    const Real tol = tolerance(c, 1e-8);
    const auto direct = eisenstein::eval_direct_sum(s, z, c.lattice_r);
    const Real rel = std::abs(direct.value - e.value) / std::max(std::abs(e.value), Real(1e-300));
    r.complex("direct_sum", direct.value, direct.error).real("rel_difference", rel, (direct.error + e.error) / std::max(std::abs(e.value), Real(1e-300)));
    if (rel > tol) {
      d.pass = false;
      d.messages.push_back("expansion vs lattice sum: difference " + format_double(rel) + " above " + format_double(tol));
    }
  }
  d.records.push_back(std::move(r));
  return d;
}

inline Document cmd_accept(const RunConfig& c) {
  Document d{"accept", c.seed};
  acceptance::Options opt;
  if (c.suite != "fast" && c.suite != "full") throw DomainError("accept: suite must be fast or full");
  opt.suite = c.suite == "full" ? acceptance::Suite::full : acceptance::Suite::fast;
  opt.seed = c.seed;
  opt.fixture_dir = c.fixture_dir.empty() ? std::filesystem::path(AUTOMORPH_FIXTURE_DIR) : std::filesystem::path(c.fixture_dir);
  opt.maass_file = c.maass_file.empty() ? std::filesystem::path(AUTOMORPH_DATA_DIR) / "maass_even.txt"
                                        : std::filesystem::path(c.maass_file);
  d.parameters = {{"suite", c.suite}};
  const auto results = acceptance::run_all(opt);
  for (const auto& res : results) {
    Record r;
    r.integer("id", res.id).text("criterion", res.name).real("measured", res.measured, 0.0);
    r.real("threshold", res.threshold, 0.0).text("status", acceptance::to_string(res.status)).text("detail", res.detail);
    d.records.push_back(std::move(r));
  }
  d.pass = acceptance::all_passed(results);
  return d;
}

inline void write_output(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write " + c.out);
  f << text;
  if (!f) throw IoError("write failed for " + c.out);
}

// Parses argv, runs one subcommand and returns the exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Numerical checks for automorphic L-functions"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Flat key=value file mirroring the global flags");
  std::string format = "text";
  double tol_value = 0.0;
  auto* tol_opt = app.add_option("--tol", tol_value, "Residual tolerance (command-specific default)");
  app.add_option("--cache-dir", c.cache_dir, "Directory for cached coefficient tables");
  auto* seed_opt = app.add_option("--seed", c.seed, "Seed for randomized checks");
  app.add_option("--out", c.out, "Write output to this file instead of stdout");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));

  auto* coeffs = app.add_subcommand("coeffs", "Fourier coefficient table");
  coeffs->add_option("--form", c.form, "delta, eisenstein, divisor or maass")->required();
  coeffs->add_option("--count", c.count, "Number of coefficients");
  coeffs->add_option("--k", c.k, "Eisenstein weight");
  coeffs->add_option("--nu", c.nu, "Divisor exponent");
  coeffs->add_option("--file", c.file, "Maass coefficient file");

  auto* lvalue = app.add_subcommand("lvalue", "Evaluate an L-function");
  lvalue->add_option("--form", c.form, "delta, eisenstein, divisor, maass, eisenstein-maass or rs");
  lvalue->add_option("--s", c.s, "Point")->required();
  lvalue->add_option("--method", c.method, "auto, dirichlet, completed or integral");
  lvalue->add_option("--count", c.count, "Number of coefficients");
  lvalue->add_option("--k", c.k, "Eisenstein weight");
  lvalue->add_option("--nu", c.nu, "Divisor exponent");
  lvalue->add_option("--t", c.t, "Eisenstein parameter for eisenstein-maass");
  lvalue->add_option("--file", c.file, "Maass coefficient file");
  lvalue->add_option("--split", c.lhs_split, "Split point of the Mellin integral");
  lvalue->add_flag("--mean-value-tail", c.mean_value_tail, "Add the heuristic mean-value tail");

  auto* fe = app.add_subcommand("fe-check", "Functional-equation residuals");
  fe->add_option("kind", c.kind, "hecke, maass, rankin-selberg, prop1 or completed")->required();
  fe->add_option("--form", c.form, "delta, maass or eisenstein-maass");
  fe->add_option("--w,--s", c.points, "Evaluation points (repeatable)");
  fe->add_option("--count", c.count, "Number of coefficients");
  fe->add_option("--t", c.t, "Eisenstein parameter for eisenstein-maass");
  fe->add_option("--file", c.file, "Maass coefficient file");
  fe->add_option("--lhs-split", c.lhs_split, "Split point for Lambda(w)");
  fe->add_option("--rhs-split", c.rhs_split, "Split point for Lambda(k - w)");

  auto* mellin = app.add_subcommand("mellin-verify", "Archimedean integral identities");
  mellin->add_option("identity", c.identity, "exponential-mellin, g-eta, bessel-single, bessel-double, kernel or fixture")
      ->required();
  mellin->add_option("--s", c.s, "Mellin variable");
  mellin->add_option("--nu", c.nu, "Bessel order");
  mellin->add_option("--mu", c.mu, "Second Bessel order");
  mellin->add_option("--sign", c.sign, "Sign of the exponential");
  mellin->add_option("--eta", c.eta, "Parity");
  mellin->add_option("--delta", c.delta, "Kernel parity");
  mellin->add_option("--x", c.x, "Kernel point x");
  mellin->add_option("--y", c.y, "Kernel point y");
  mellin->add_option("--z", c.z, "Kernel point z");
  mellin->add_option("--alpha", c.alpha, "Kernel exponent alpha");
  mellin->add_option("--beta", c.beta, "Kernel exponent beta");
  mellin->add_option("--fixture", c.fixture, "Fixture grid file");

  auto* extsq = app.add_subcommand("extsq-verify", "Exterior-square local identity over random parameters");
  auto* trials_opt = extsq->add_option("--trials", c.trials, "Number of random trials");
  auto* kmax_opt = extsq->add_option("--kmax", c.kmax, "Series order K");
  extsq->add_option("--x-radius", c.x_radius, "Comparison radius");
  extsq->add_option("--littlewood-tol", c.littlewood_tol, "Tolerance of the Littlewood cross-check");
  extsq->add_option("--fixture", c.fixture, "Trial fixture file (seed, trials, kmax, tol)");

  auto* eis = app.add_subcommand("eisenstein", "Completed Eisenstein series at a point");
  std::string zflag;
  eis->add_option("--z", zflag, "Point in the upper half plane")->required();
  eis->add_option("--s", c.s, "Spectral parameter")->required();
  eis->add_option("--lattice-r", c.lattice_r, "Box size of the lattice sum");

  auto* accept = app.add_subcommand("accept", "Run the acceptance criteria");
  accept->add_option("suite", c.suite, "fast or full");
  accept->add_option("--fixture-dir", c.fixture_dir, "Directory of fixture files");
  accept->add_option("--maass-file", c.maass_file, "Even Maass form coefficient file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  if (tol_opt->count() > 0) c.tol = tol_value;
  c.format = format == "json" ? Format::json : format == "csv" ? Format::csv : Format::text;

  try {
    Document d;
    if (*coeffs) d = cmd_coeffs(c);
    else if (*lvalue) d = cmd_lvalue(c);
    else if (*fe) d = cmd_fe_check(c);
    else if (*mellin) d = cmd_mellin_verify(c);
    else if (*extsq) {
      if (!c.fixture.empty()) read_extsq_fixture(c.fixture, c, seed_opt->count() > 0, trials_opt->count() > 0, kmax_opt->count() > 0);
      d = cmd_extsq_verify(c);
    } else if (*eis) {
      c.points = {zflag};
      d = cmd_eisenstein(c);
    } else if (*accept) d = cmd_accept(c);
    write_output(c, render(d, c.format), out);
    if (!d.pass)
      for (const auto& m : d.messages) err << "fail: " << m << "\n";
    return d.pass ? kPass : kToleranceFail;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kToleranceFail;
  }
}

}  // namespace automorph::cli
