#pragma once

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <array>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>

#include "automorph/coefficients/maass_io.hpp"
#include "automorph/coefficients/series.hpp"
#include "automorph/format.hpp"

namespace automorph {

// Cache file layout (UTF-8 text, one record per line):
//
//   automorph-cache v1
//   checksum <16 hex digits>      FNV-1a 64 of every byte after this line
//   spectral holomorphic <k> <cuspidal 0|1>
//          | maass <re> <im> <parity> <cuspidal>
//          | gl4 <mu re im> x4 <eta> x4
//   normalization arithmetic|unitary
//   hecke 0|1
//   scale <re> <im>
//   constant none|pole|<re> <im>
//   count <N>
//   exact 0|1
//   <n> <integer>                 when exact
//   <n> <re> <im>                 otherwise
//
// Floats are written in shortest round-trip form.

inline constexpr const char* kCacheMagic = "automorph-cache";
inline constexpr int kCacheVersion = 1;

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// RAII advisory lock on <dir>/.lock.
class DirectoryLock {
 public:
  DirectoryLock(const std::filesystem::path& dir, bool exclusive) {
    const auto path = dir / ".lock";
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd_ < 0) throw IoError("cannot open lock file " + path.string());
    if (::flock(fd_, exclusive ? LOCK_EX : LOCK_SH) != 0) {
      ::close(fd_);
      throw IoError("cannot lock " + path.string());
    }
  }
  DirectoryLock(const DirectoryLock&) = delete;
  DirectoryLock& operator=(const DirectoryLock&) = delete;
  ~DirectoryLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }

 private:
  int fd_ = -1;
};

namespace detail {

inline std::string serialize_body(const CoefficientSeries& s) {
  std::ostringstream out;
  auto cplx = [](Complex z) { return format_double(z.real()) + " " + format_double(z.imag()); };
  if (const auto* h = std::get_if<Holomorphic>(&s.spectral)) {
    out << "spectral holomorphic " << h->weight << ' ' << (h->cuspidal ? 1 : 0) << '\n';
  } else if (const auto* m = std::get_if<Maass>(&s.spectral)) {
    out << "spectral maass " << cplx(m->lambda) << ' ' << m->parity << ' ' << (m->cuspidal ? 1 : 0) << '\n';
  } else {
    const auto& g = std::get<GL4>(s.spectral);
    out << "spectral gl4";
    for (const Complex& mu : g.mu) out << ' ' << cplx(mu);
    for (int e : g.eta) out << ' ' << e;
    out << '\n';
  }
  out << "normalization " << to_string(s.normalization) << '\n';
  out << "hecke " << (s.hecke_normalized ? 1 : 0) << '\n';
  out << "scale " << cplx(s.scale) << '\n';
  if (s.constant_term_pole) out << "constant pole\n";
  else if (s.constant_term) out << "constant " << cplx(*s.constant_term) << '\n';
  else out << "constant none\n";
  out << "count " << s.count() << '\n';
  out << "exact " << (s.is_exact() ? 1 : 0) << '\n';
  for (std::size_t n = 1; n <= s.count(); ++n) {
    if (s.is_exact()) out << n << ' ' << to_string(s.exact[n - 1]) << '\n';
    else out << n << ' ' << cplx(s.values[n - 1]) << '\n';
  }
  return out.str();
}

class LineReader {
 public:
  explicit LineReader(const std::string& text) : in_(text) {}

  std::vector<std::string> expect(const std::string& key, std::size_t fields) {
    std::string line;
    if (!std::getline(in_, line)) throw ParseError("cache: truncated before '" + key + "'");
    auto w = split_ws(line);
    if (w.empty() || w[0] != key) throw ParseError("cache: expected '" + key + "'");
    if (fields && w.size() != fields + 1) throw ParseError("cache: wrong field count for '" + key + "'");
    w.erase(w.begin());
    return w;
  }
  bool next(std::vector<std::string>& words) {
    std::string line;
    if (!std::getline(in_, line)) return false;
    words = split_ws(line);
    return true;
  }

 private:
  std::istringstream in_;
};

inline Complex parse_complex(const std::string& re, const std::string& im) {
  return {parse_real(re, "cache"), parse_real(im, "cache")};
}

inline int parse_flag(const std::string& f) {
  if (f == "0") return 0;
  if (f == "1") return 1;
  throw ParseError("cache: expected 0 or 1");
}

inline CoefficientSeries deserialize_body(const std::string& body) {
  LineReader r(body);
  CoefficientSeries s;
  auto fields = r.expect("spectral", 0);
  if (fields.size() == 3 && fields[0] == "holomorphic") {
    s.spectral = Holomorphic{static_cast<int>(parse_int128(fields[1])), parse_flag(fields[2]) == 1};
  } else if (fields.size() == 5 && fields[0] == "maass") {
    s.spectral = Maass{parse_complex(fields[1], fields[2]), parse_flag(fields[3]), parse_flag(fields[4]) == 1};
  } else if (fields.size() == 13 && fields[0] == "gl4") {
    GL4 g;
    for (int j = 0; j < 4; ++j) g.mu[j] = parse_complex(fields[1 + 2 * j], fields[2 + 2 * j]);
    for (int j = 0; j < 4; ++j) g.eta[j] = parse_flag(fields[9 + j]);
    s.spectral = g;
  } else {
    throw ParseError("cache: bad spectral record");
  }
  const auto norm = r.expect("normalization", 1)[0];
  if (norm == "arithmetic") s.normalization = Normalization::arithmetic;
  else if (norm == "unitary") s.normalization = Normalization::unitary;
  else throw ParseError("cache: bad normalization");
  s.hecke_normalized = parse_flag(r.expect("hecke", 1)[0]) == 1;
  const auto sc = r.expect("scale", 2);
  s.scale = parse_complex(sc[0], sc[1]);
  const auto ct = r.expect("constant", 0);
  if (ct.size() == 1 && ct[0] == "pole") s.constant_term_pole = true;
  else if (ct.size() == 2) s.constant_term = parse_complex(ct[0], ct[1]);
  else if (!(ct.size() == 1 && ct[0] == "none")) throw ParseError("cache: bad constant record");
  const auto count = static_cast<std::size_t>(parse_int128(r.expect("count", 1)[0]));
  const bool exact = parse_flag(r.expect("exact", 1)[0]) == 1;
  s.values.reserve(count);
  std::vector<std::string> w;
  for (std::size_t n = 1; n <= count; ++n) {
    if (!r.next(w)) throw ParseError("cache: fewer rows than count");
    if (w.size() != (exact ? 2u : 3u) || parse_int128(w[0]) != int128(n)) throw ParseError("cache: bad row " + std::to_string(n));
    if (exact) {
      s.exact.push_back(parse_int128(w[1]));
      s.values.emplace_back(static_cast<Real>(s.exact.back()), 0.0);
    } else {
      s.values.push_back(parse_complex(w[1], w[2]));
    }
  }
  if (r.next(w) && !w.empty()) throw ParseError("cache: more rows than count");
  return s;
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) out[i] = digits[v & 0xf];
  return out;
}

}  // namespace detail

inline std::filesystem::path cache_path(const std::filesystem::path& dir, const std::string& name) {
  return dir / (name + ".cache");
}

// Writes the series to <dir>/<name>.cache atomically (temp file + rename).
inline std::filesystem::path cache_store(const CoefficientSeries& series, const std::filesystem::path& dir,
                                         const std::string& name) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create cache directory " + dir.string());
  DirectoryLock lock(dir, true);
  const std::string body = detail::serialize_body(series);
  const auto path = cache_path(dir, name);
  const auto tmp = dir / (name + ".cache.tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << kCacheMagic << " v" << kCacheVersion << '\n';
    out << "checksum " << detail::hex64(fnv1a64(body)) << '\n';
    out << body;
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename into " + path.string());
  return path;
}

inline CoefficientSeries cache_load(const std::filesystem::path& dir, const std::string& name) {
  const auto path = cache_path(dir, name);
  if (!std::filesystem::exists(path)) throw NotFoundError("cache entry not found: " + path.string());
  DirectoryLock lock(dir, false);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::string magic_line, checksum_line;
  std::getline(in, magic_line);
  const auto magic = detail::split_ws(magic_line);
  if (magic.size() != 2 || magic[0] != kCacheMagic) throw ParseError("not a cache file: " + path.string());
  if (magic[1] != "v" + std::to_string(kCacheVersion)) {
    throw VersionError("cache version " + magic[1] + " is not supported (expected v" + std::to_string(kCacheVersion) + ")");
  }
  std::getline(in, checksum_line);
  const auto ck = detail::split_ws(checksum_line);
  if (ck.size() != 2 || ck[0] != "checksum") throw ParseError("cache: missing checksum line");
  std::ostringstream rest;
  rest << in.rdbuf();
  const std::string body = rest.str();
  if (detail::hex64(fnv1a64(body)) != ck[1]) throw ChecksumError("cache checksum mismatch: " + path.string());
  return detail::deserialize_body(body);
}

}  // namespace automorph
