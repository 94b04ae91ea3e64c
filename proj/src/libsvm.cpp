#include "gensmooth/libsvm.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gensmooth/format.hpp"
#include "gensmooth/types.hpp"

namespace gensmooth {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_index(std::string_view text, std::size_t& out) {
  if (text.empty()) return false;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), out);
  return res.ec == std::errc() && res.ptr == text.data() + text.size();
}

std::string quoted(std::string_view token) { return "'" + std::string(token) + "'"; }

}  // namespace

SparseDataset parse_libsvm(std::string_view text) {
  SparseDataset data;
  std::vector<double> raw_labels;
  std::vector<double> distinct;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;

    const auto tokens = split_tokens(line);
    if (tokens.empty() || tokens.front().front() == '#') {
      if (end == text.size()) break;
      continue;
    }

    double label = 0.0;
    if (!parse_double(tokens.front(), label) || !std::isfinite(label))
      throw ParseError(line_no, "non-numeric label " + quoted(tokens.front()));
    bool seen = false;
    for (double d : distinct) seen = seen || d == label;
    if (!seen) {
      if (distinct.size() == 2)
        throw ParseError(line_no, "more than two distinct labels (third is " +
                                      quoted(tokens.front()) + ")");
      distinct.push_back(label);
    }

    SparseDataset::Row row;
    std::size_t prev = 0;
    for (std::size_t t = 1; t < tokens.size(); ++t) {
      const std::string_view tok = tokens[t];
      const std::size_t colon = tok.find(':');
      if (colon == std::string_view::npos)
        throw ParseError(line_no, "malformed token " + quoted(tok) + ", expected index:value");
      std::size_t index = 0;
      if (!parse_index(tok.substr(0, colon), index) || index == 0)
        throw ParseError(line_no, "malformed index in " + quoted(tok));
      double value = 0.0;
      if (!parse_double(tok.substr(colon + 1), value) || !std::isfinite(value))
        throw ParseError(line_no, "non-numeric value in " + quoted(tok));
      if (index <= prev)
        throw ParseError(line_no, "non-increasing index " + std::to_string(index) +
                                      " after " + std::to_string(prev));
      prev = index;
      row.features.emplace_back(index, value);
    }
    if (prev > data.max_index) data.max_index = prev;
    raw_labels.push_back(label);
    data.rows.push_back(std::move(row));
    if (end == text.size()) break;
  }

  bool signed_labels = true;
  for (double d : distinct) signed_labels = signed_labels && (d == 1.0 || d == -1.0);
  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    if (signed_labels) {
      data.rows[i].label = raw_labels[i] > 0 ? 1 : -1;
    } else {
      data.rows[i].label = raw_labels[i] == distinct.front() ? 1 : -1;
    }
  }
  return data;
}

SparseDataset load_libsvm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open dataset " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_libsvm(buf.str());
}

std::string serialize_libsvm(const SparseDataset& data) {
  std::string out;
  for (const auto& row : data.rows) {
    out += row.label > 0 ? "+1" : "-1";
    for (const auto& [index, value] : row.features) {
      out += ' ';
      out += std::to_string(index);
      out += ':';
      out += format_double(value);
    }
    out += '\n';
  }
  return out;
}

}  // namespace gensmooth
