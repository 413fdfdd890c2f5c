// Copyright 2026 The g1kit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "g1kit/mesh.hpp"

namespace g1kit {

enum class MeshFormat { OBJ, OFF };

/// Parse failure, carrying the 1-based line number of the offending record.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

inline Rational parse_coord(std::string_view tok, std::size_t line) {
  try {
    return parse_rational(tok);
  } catch (const Error& e) {
    throw ParseError(line, e.what());
  }
}

inline long parse_index(std::string_view tok, std::size_t line) {
  long v = 0;
  bool neg = false;
  std::size_t i = 0;
  if (!tok.empty() && (tok[0] == '-' || tok[0] == '+')) {
    neg = tok[0] == '-';
    i = 1;
  }
  if (i == tok.size()) throw ParseError(line, "malformed index '" + std::string(tok) + "'");
  for (; i < tok.size(); ++i) {
    if (tok[i] < '0' || tok[i] > '9' || v > 100000000)
      throw ParseError(line, "malformed index '" + std::string(tok) + "'");
    v = v * 10 + (tok[i] - '0');
  }
  return neg ? -v : v;
}

/// "# exact i: x y z" extension line; returns false for ordinary comments.
inline bool parse_exact_comment(std::string_view line, std::size_t lineno,
                                std::map<long, Point3>& exact) {
  auto toks = split_ws(line);
  if (toks.size() != 6 || toks[0] != "#" || toks[1] != "exact" || toks[2].empty() ||
      toks[2].back() != ':')
    return false;
  const long idx = parse_index(toks[2].substr(0, toks[2].size() - 1), lineno);
  exact[idx] = Point3(parse_coord(toks[3], lineno), parse_coord(toks[4], lineno),
                      parse_coord(toks[5], lineno));
  return true;
}

inline Mesh make_mesh(std::vector<Point3> verts, std::vector<std::vector<int>> faces,
                      const std::map<long, Point3>& exact, long first_index) {
  for (const auto& [idx, p] : exact) {
    const long k = idx - first_index;
    if (k < 0 || k >= static_cast<long>(verts.size()))
      throw Error("exact coordinate record for unknown vertex " + std::to_string(idx));
    verts[k] = p;
  }
  return Mesh(std::move(verts), std::move(faces));
}

inline Mesh load_obj(std::string_view text) {
  std::vector<Point3> verts;
  std::vector<std::vector<int>> faces;
  std::map<long, Point3> exact;
  std::size_t lineno = 0;
  for (std::string_view line : split_lines(text)) {
    ++lineno;
    if (line.empty()) continue;
    if (line.front() == '#') {
      parse_exact_comment(line, lineno, exact);
      continue;
    }
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "v") {
      if (toks.size() < 4) throw ParseError(lineno, "vertex record needs 3 coordinates");
      verts.emplace_back(parse_coord(toks[1], lineno), parse_coord(toks[2], lineno),
                         parse_coord(toks[3], lineno));
    } else if (toks[0] == "f") {
      if (toks.size() < 4) throw ParseError(lineno, "face record needs at least 3 indices");
      std::vector<int> face;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        std::string_view t = toks[i].substr(0, toks[i].find('/'));
        long idx = parse_index(t, lineno);
        if (idx < 0) idx += static_cast<long>(verts.size()) + 1;  // relative index
        if (idx < 1 || idx > static_cast<long>(verts.size()))
          throw ParseError(lineno, "index out of range: " + std::string(t));
        face.push_back(static_cast<int>(idx - 1));
      }
      faces.push_back(std::move(face));
    }
    // vn, vt, o, g, s, usemtl, mtllib and unknown records are ignored.
  }
  return make_mesh(std::move(verts), std::move(faces), exact, 1);
}

inline Mesh load_off(std::string_view text) {
  std::map<long, Point3> exact;
  std::vector<std::pair<std::size_t, std::vector<std::string_view>>> records;
  std::size_t lineno = 0;
  for (std::string_view line : split_lines(text)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      parse_exact_comment(line.substr(hash), lineno, exact);
      line = line.substr(0, hash);
    }
    auto toks = split_ws(line);
    if (!toks.empty()) records.emplace_back(lineno, std::move(toks));
  }
  if (records.empty() || records[0].second[0] != "OFF")
    throw ParseError(records.empty() ? 1 : records[0].first, "missing OFF header");
  std::size_t r = 0;
  std::vector<std::string_view> counts(records[0].second.begin() + 1, records[0].second.end());
  std::size_t counts_line = records[0].first;
  if (counts.empty()) {
    if (records.size() < 2) throw ParseError(counts_line, "missing counts line");
    r = 1;
    counts = records[1].second;
    counts_line = records[1].first;
  }
  if (counts.size() < 2) throw ParseError(counts_line, "counts line needs vertex and face counts");
  const long nv = parse_index(counts[0], counts_line);
  const long nf = parse_index(counts[1], counts_line);
  if (nv < 0 || nf < 0) throw ParseError(counts_line, "negative count");
  ++r;
  if (records.size() < r + static_cast<std::size_t>(nv + nf))
    throw ParseError(lineno, "unexpected end of file");

  std::vector<Point3> verts;
  for (long i = 0; i < nv; ++i, ++r) {
    const auto& [ln, toks] = records[r];
    if (toks.size() < 3) throw ParseError(ln, "vertex record needs 3 coordinates");
    verts.emplace_back(parse_coord(toks[0], ln), parse_coord(toks[1], ln),
                       parse_coord(toks[2], ln));
  }
  std::vector<std::vector<int>> faces;
  for (long i = 0; i < nf; ++i, ++r) {
    const auto& [ln, toks] = records[r];
    const long n = parse_index(toks[0], ln);
    if (n < 3) throw ParseError(ln, "face record needs at least 3 indices");
    if (static_cast<long>(toks.size()) < n + 1) throw ParseError(ln, "face record is truncated");
    std::vector<int> face;
    for (long k = 1; k <= n; ++k) {
      const long idx = parse_index(toks[k], ln);
      if (idx < 0 || idx >= nv)
        throw ParseError(ln, "index out of range: " + std::string(toks[k]));
      face.push_back(static_cast<int>(idx));
    }
    faces.push_back(std::move(face));
  }
  return make_mesh(std::move(verts), std::move(faces), exact, 0);
}

inline std::string decimal(const Rational& r) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", to_double(r));
  return buf;
}

}  // namespace detail

/// Parses OBJ or OFF text. Coordinates are read exactly; "# exact i: x y z"
/// comment records override the decimal fields of vertex i (numbered as in
/// the format: 1-based for OBJ, 0-based for OFF).
inline Mesh load_mesh(std::string_view text, MeshFormat format) {
  return format == MeshFormat::OBJ ? detail::load_obj(text) : detail::load_off(text);
}

/// Serializes with decimal approximations in the standard fields plus one
/// "# exact" record per vertex, so load_mesh(save_mesh(m)) reproduces m.
inline std::string save_mesh(const Mesh& m, MeshFormat format) {
  std::ostringstream os;
  const auto& V = m.vertices();
  if (format == MeshFormat::OBJ) {
    os << "# g1kit mesh: " << V.size() << " vertices, " << m.face_count() << " faces\n";
    for (std::size_t i = 0; i < V.size(); ++i)
      os << "# exact " << i + 1 << ": " << to_string(V[i].x) << ' ' << to_string(V[i].y) << ' '
         << to_string(V[i].z) << '\n';
    for (const auto& p : V)
      os << "v " << detail::decimal(p.x) << ' ' << detail::decimal(p.y) << ' '
         << detail::decimal(p.z) << '\n';
    for (const auto& f : m.faces()) {
      os << 'f';
      for (int v : f) os << ' ' << v + 1;
      os << '\n';
    }
  } else {
    os << "OFF\n" << V.size() << ' ' << m.face_count() << ' ' << m.edge_count() << '\n';
    for (std::size_t i = 0; i < V.size(); ++i)
      os << "# exact " << i << ": " << to_string(V[i].x) << ' ' << to_string(V[i].y) << ' '
         << to_string(V[i].z) << '\n';
    for (const auto& p : V)
      os << detail::decimal(p.x) << ' ' << detail::decimal(p.y) << ' ' << detail::decimal(p.z)
         << '\n';
    for (const auto& f : m.faces()) {
      os << f.size();
      for (int v : f) os << ' ' << v;
      os << '\n';
    }
  }
  return os.str();
}

/// Format from a file extension (.obj / .off, case-insensitive).
inline MeshFormat format_from_path(const std::string& path) {
  std::string ext = path.substr(path.find_last_of('.') == std::string::npos
                                    ? path.size()
                                    : path.find_last_of('.') + 1);
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (ext == "obj") return MeshFormat::OBJ;
  if (ext == "off") return MeshFormat::OFF;
  throw Error("cannot infer mesh format from '" + path + "' (expected .obj or .off)");
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << data;
  if (!out) throw Error("write failed for '" + path + "'");
}

inline Mesh load_mesh_file(const std::string& path) {
  return load_mesh(read_file(path), format_from_path(path));
}

}  // namespace g1kit
