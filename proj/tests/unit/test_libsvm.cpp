#include <random>

#include <gtest/gtest.h>

#include "gensmooth/libsvm.hpp"
#include "gensmooth/types.hpp"

namespace gensmooth {
namespace {

std::size_t error_line(std::string_view text) {
  try {
    parse_libsvm(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

TEST(Libsvm, ParsesSingleRow) {
  const SparseDataset d = parse_libsvm("+1 1:0.5 3:2\n");
  ASSERT_EQ(d.rows.size(), 1u);
  EXPECT_EQ(d.rows[0].label, 1);
  const std::vector<std::pair<std::size_t, double>> want{{1, 0.5}, {3, 2.0}};
  EXPECT_EQ(d.rows[0].features, want);
  EXPECT_EQ(d.max_index, 3u);
}

TEST(Libsvm, FirstSeenLabelMapping) {
  const SparseDataset d = parse_libsvm("1 2:1\n2 1:1\n");
  ASSERT_EQ(d.rows.size(), 2u);
  EXPECT_EQ(d.rows[0].label, 1);
  EXPECT_EQ(d.rows[1].label, -1);
  const SparseDataset m = parse_libsvm("2 1:1\n1 1:2\n2 2:1\n");
  EXPECT_EQ(m.rows[0].label, 1);
  EXPECT_EQ(m.rows[1].label, -1);
  EXPECT_EQ(m.rows[2].label, 1);
}

TEST(Libsvm, SignedLabelsKeepTheirSign) {
  const SparseDataset d = parse_libsvm("-1 1:1\n+1 1:2\n");
  EXPECT_EQ(d.rows[0].label, -1);
  EXPECT_EQ(d.rows[1].label, 1);
}

TEST(Libsvm, SkipsBlankAndCommentLines) {
  const SparseDataset d = parse_libsvm("# header\n\n+1 1:1\n   \n-1 2:3\n");
  EXPECT_EQ(d.rows.size(), 2u);
  EXPECT_EQ(error_line("# c\n\n+1 2:1 1:1\n"), 3u);
}

TEST(Libsvm, MalformedInputsReportTheirLine) {
  EXPECT_EQ(error_line("+1 3:1 2:1\n"), 1u);               // non-increasing
  EXPECT_EQ(error_line("+1 1:1\n+1 2:1 2:3\n"), 2u);        // repeated index
  EXPECT_EQ(error_line("+1 1:x\n"), 1u);                    // non-numeric value
  EXPECT_EQ(error_line("+1 1-2\n"), 1u);                    // malformed token
  EXPECT_EQ(error_line("+1 0:1\n"), 1u);                    // indices are 1-based
  EXPECT_EQ(error_line("+1 a:1\n"), 1u);                    // malformed index
  EXPECT_EQ(error_line("abc 1:1\n"), 1u);                   // non-numeric label
  EXPECT_EQ(error_line("1 1:1\n2 1:1\n3 1:1\n"), 3u);       // third distinct label
  EXPECT_EQ(error_line("+1 1:1\n-1 :2\n"), 2u);
}

TEST(Libsvm, SerializerFormat) {
  SparseDataset d;
  d.rows.push_back({1, {{1, 0.5}, {4, -2.0}}});
  d.rows.push_back({-1, {}});
  d.max_index = 4;
  EXPECT_EQ(serialize_libsvm(d), "+1 1:0.5 4:-2\n-1\n");
}

TEST(Libsvm, RoundTripOnRandomDatasets) {
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<int> rows(1, 12), nnz(0, 6), gap(1, 5), coin(0, 1);
  std::uniform_real_distribution<double> mag(-8, 8);
  for (int t = 0; t < 200; ++t) {
    SparseDataset d;
    const int r = rows(gen);
    for (int i = 0; i < r; ++i) {
      SparseDataset::Row row;
      row.label = coin(gen) ? 1 : -1;
      std::size_t idx = 0;
      const int k = nnz(gen);
      for (int j = 0; j < k; ++j) {
        idx += static_cast<std::size_t>(gap(gen));
        row.features.emplace_back(idx, (coin(gen) ? 1 : -1) * std::pow(10.0, mag(gen)));
        d.max_index = std::max(d.max_index, idx);
      }
      d.rows.push_back(std::move(row));
    }
    // A dataset of only -1 labels is stored as such and re-read as such.
    EXPECT_EQ(parse_libsvm(serialize_libsvm(d)), d);
  }
}

}  // namespace
}  // namespace gensmooth
