#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ungar {

// Error taxonomy mirrored by the CLI exit codes:
//   invalid_input_error -> 2, resource_limit_error -> 3, verification_error -> 4.
struct ungar_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct invalid_input_error : ungar_error {
  using ungar_error::ungar_error;
};

struct resource_limit_error : ungar_error {
  using ungar_error::ungar_error;
};

struct verification_error : ungar_error {
  using ungar_error::ungar_error;
};

namespace limits {
// Elements above which order-relation closures are not materialized.
inline constexpr int kClosureCap = 20000;
// Elements above which exact expected-step solvers refuse to run.
inline constexpr int kExactCap = 20000;
// Elements above which classify() refuses to run (left-modularity sweep is cubic).
inline constexpr int kClassifyCap = 2000;
// Cover counts above which per-state subset enumeration refuses to run.
inline constexpr int kCoverSubsetCap = 20;
// Default per-trial step cap for simulations.
inline constexpr std::uint64_t kStepCap = 10'000'000;
// Backtracking budget for isomorphism search.
inline constexpr std::uint64_t kIsoNodeBudget = 50'000'000;
}  // namespace limits

// Dense row-major bit matrix; row r holds a subset of [0, cols).
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), words_per_row_((cols + 63) / 64),
        bits_(static_cast<std::size_t>(rows) * words_per_row_, 0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int words_per_row() const { return words_per_row_; }
  bool empty() const { return bits_.empty(); }

  bool test(int r, int c) const {
    return (row(r)[c >> 6] >> (c & 63)) & 1u;
  }
  void set(int r, int c) { row(r)[c >> 6] |= std::uint64_t{1} << (c & 63); }
  void reset(int r, int c) { row(r)[c >> 6] &= ~(std::uint64_t{1} << (c & 63)); }

  std::uint64_t* row(int r) { return bits_.data() + static_cast<std::size_t>(r) * words_per_row_; }
  const std::uint64_t* row(int r) const {
    return bits_.data() + static_cast<std::size_t>(r) * words_per_row_;
  }

  // dst |= src, both row indices.
  void or_rows(int dst, int src) {
    auto* d = row(dst);
    const auto* s = row(src);
    for (int w = 0; w < words_per_row_; ++w) d[w] |= s[w];
  }

  int popcount_row(int r) const {
    const auto* s = row(r);
    int out = 0;
    for (int w = 0; w < words_per_row_; ++w) out += __builtin_popcountll(s[w]);
    return out;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  int words_per_row_ = 0;
  std::vector<std::uint64_t> bits_;
};

}  // namespace ungar
