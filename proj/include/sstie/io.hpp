#pragma once

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sstie/error.hpp"
#include "sstie/graph.hpp"

namespace sstie {

// Shortest decimal text that parses back to the same double.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline std::string_view unquote(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = line.find(',', start);
    out.push_back(unquote(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  return in;
}

inline std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

// Calls fn(row_number, fields) for every data row of a headed CSV. Blank lines
// and '#' comments are skipped; the first remaining line must equal one of
// the accepted headers (compared field-wise after trimming).
template <typename Fn>
void for_each_csv_row(std::istream& in, const std::vector<std::vector<std::string>>& headers,
                      Fn&& fn) {
  std::string line;
  std::size_t row = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++row;
    auto view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    auto fields = split_fields(view);
    if (!seen_header) {
      bool ok = false;
      for (const auto& h : headers)
        ok = ok || std::equal(fields.begin(), fields.end(), h.begin(), h.end());
      if (!ok) throw ParseError(row, "unexpected header '" + std::string(view) + "'");
      seen_header = true;
      continue;
    }
    fn(row, fields);
  }
  if (!seen_header) throw ParseError(row, "missing header");
}

}  // namespace detail

/// Reads the edge-list dialect: header `src,dst,weight` or
/// `src,dst,weight,label`, then one row per interaction record. A row with an
/// empty dst and weight (`7,,`) declares an isolated node.
inline SocialGraph read_graph(std::istream& in) {
  GraphBuilder builder;
  detail::for_each_csv_row(
      in, {{"src", "dst", "weight"}, {"src", "dst", "weight", "label"}},
      [&](std::size_t row, const std::vector<std::string_view>& f) {
        if (f.size() < 3 || f.size() > 4) throw ParseError(row, "expected 3 or 4 fields");
        NodeId src = 0;
        if (!detail::parse_number(f[0], src)) throw ParseError(row, "bad src node id");
        if (f[1].empty() && f[2].empty()) {
          builder.add_node(src);
          return;
        }
        NodeId dst = 0;
        double w = 0.0;
        if (!detail::parse_number(f[1], dst)) throw ParseError(row, "bad dst node id");
        if (!detail::parse_number(f[2], w) || !std::isfinite(w))
          throw ParseError(row, "bad weight");
        if (!(w > 0.0)) throw ParseError(row, "non-positive weight");
        if (src == dst) throw ParseError(row, "self-loop on node " + std::to_string(src));
        Label label = f.size() == 4 && !f[3].empty() ? Label(f[3]) : kDefaultLabel;
        builder.add_edge(src, dst, w, label);
      });
  return builder.build();
}

inline SocialGraph load_graph(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return read_graph(in);
}

// Writes the labeled dialect; isolated nodes get a `node,,` row.
inline void write_graph(std::ostream& out, const SocialGraph& g) {
  out << "src,dst,weight,label\n";
  for (const auto& e : g.labeled_edges())
    out << e.a << ',' << e.b << ',' << format_double(e.weight) << ',' << e.label << '\n';
  for (std::size_t v = 0; v < g.node_count(); ++v)
    if (g.degree(v) == 0) out << g.id(v) << ",,\n";
}

inline void save_graph(const std::filesystem::path& path, const SocialGraph& g) {
  auto out = detail::open_output(path);
  write_graph(out, g);
}

}  // namespace sstie
