#pragma once

// Text exchange formats: posets as cover lists, trajectory traces as CSV,
// and permutation snapshot plots as SVG.  All writers produce byte-stable
// output for fixed inputs; nothing here depends on clocks or locales.

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ungar/common.hpp"
#include "ungar/poset.hpp"
#include "ungar/weak_order.hpp"

namespace ungar {

// Poset exchange format: optional '#' comment lines, then the element count,
// then one cover pair "a b" per line meaning a is covered by b (0-based).
inline FinitePoset read_poset(std::istream& in) {
  int n = -1;
  std::vector<std::pair<int, int>> edges;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    if (n < 0) {
      if (row >> n) {
        int extra;
        if (row >> extra)
          throw invalid_input_error("poset header line must hold only the element count");
        if (n < 0) throw invalid_input_error("poset size must be nonnegative");
      } else if (!row.eof() && row.fail() && !line.empty() && line.find_first_not_of(" \t\r") != std::string::npos) {
        throw invalid_input_error("poset file line " + std::to_string(lineno) +
                                  ": expected the element count");
      }
      continue;
    }
    int a, b;
    if (!(row >> a)) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw invalid_input_error("poset file line " + std::to_string(lineno) +
                                  ": expected a cover pair");
      continue;
    }
    if (!(row >> b))
      throw invalid_input_error("poset file line " + std::to_string(lineno) +
                                ": cover pair needs two ids");
    int extra;
    if (row >> extra)
      throw invalid_input_error("poset file line " + std::to_string(lineno) +
                                ": cover pair has trailing tokens");
    edges.push_back({a, b});
  }
  if (n < 0) throw invalid_input_error("poset file has no element count");
  return FinitePoset::from_covers(n, edges);
}

inline FinitePoset read_poset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input_error("cannot open poset file: " + path);
  return read_poset(in);
}

inline void write_poset(std::ostream& out, const FinitePoset& p) {
  out << p.size() << "\n";
  for (auto [a, b] : p.covers()) out << a << " " << b << "\n";
}

// Trajectory trace: one CSV row (time, position, value) per permutation
// entry, snapshots in time order.
inline void write_trace_csv(std::ostream& out,
                            const std::vector<std::pair<long long, Perm>>& snapshots) {
  out << "time,position,value\n";
  for (const auto& [t, w] : snapshots)
    for (std::size_t i = 0; i < w.size(); ++i)
      out << t << "," << i + 1 << "," << w[i] << "\n";
}

namespace detail {

inline std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace detail

// Multi-panel scatter plot of permutations: one dot per (i, w(i)), panels
// laid out four per row.  Output bytes depend only on the inputs.
inline void write_permutation_panels_svg(std::ostream& out,
                                         const std::vector<std::pair<std::string, Perm>>& panels) {
  if (panels.empty()) throw invalid_input_error("plot needs at least one panel");
  const int panel = 220, margin = 24, title_h = 18, per_row = 4;
  const int cols = static_cast<int>(panels.size()) < per_row
                       ? static_cast<int>(panels.size())
                       : per_row;
  const int rows = (static_cast<int>(panels.size()) + per_row - 1) / per_row;
  const int width = cols * panel + 2 * margin;
  const int height = rows * (panel + title_h) + 2 * margin;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  for (std::size_t k = 0; k < panels.size(); ++k) {
    const auto& [title, w] = panels[k];
    const int n = static_cast<int>(w.size());
    if (n == 0) throw invalid_input_error("plot panel holds an empty permutation");
    const int px = margin + static_cast<int>(k % per_row) * panel;
    const int py = margin + static_cast<int>(k / per_row) * (panel + title_h);
    out << "<text x=\"" << px + panel / 2 << "\" y=\"" << py + 12
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" << title
        << "</text>\n";
    const int box = panel - 16;
    out << "<rect x=\"" << px + 8 << "\" y=\"" << py + title_h << "\" width=\"" << box
        << "\" height=\"" << box << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    const double step = static_cast<double>(box) / (n + 1);
    const double r = step < 4.0 ? (step < 1.0 ? 0.5 : step / 3.0) : 2.0;
    for (int i = 1; i <= n; ++i) {
      const double cx = px + 8 + step * i;
      const double cy = py + title_h + box - step * w[i - 1];
      out << "<circle cx=\"" << detail::fixed2(cx) << "\" cy=\"" << detail::fixed2(cy)
          << "\" r=\"" << detail::fixed2(r) << "\"/>\n";
    }
  }
  out << "</svg>\n";
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw invalid_input_error("cannot open output file: " + path);
  out << content;
  if (!out) throw invalid_input_error("failed writing output file: " + path);
}

}  // namespace ungar
