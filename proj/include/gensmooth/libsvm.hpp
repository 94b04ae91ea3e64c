#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gensmooth {

/// Binary-labelled sparse samples in the LIBSVM layout.
struct SparseDataset {
  struct Row {
    int label = 1;  // +1 or -1
    std::vector<std::pair<std::size_t, double>> features;  // 1-based, strictly increasing
    bool operator==(const Row&) const = default;
  };

  std::vector<Row> rows;
  std::size_t max_index = 0;

  bool operator==(const SparseDataset&) const = default;
};

/// Parses `label index:value ...` lines. Blank lines and lines starting with
/// '#' are skipped. When the raw labels are a subset of {+1, -1} they keep
/// their sign; otherwise the two distinct labels map to +1 and -1 in the
/// order they first appear. Throws ParseError with the offending line.
SparseDataset parse_libsvm(std::string_view text);

SparseDataset load_libsvm(const std::filesystem::path& path);

/// One row per line: `%+d` label, then `index:value` with shortest
/// round-trip decimals.
std::string serialize_libsvm(const SparseDataset& data);

}  // namespace gensmooth
