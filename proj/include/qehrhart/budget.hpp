#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qehrhart {

/// Thrown when a computation would build a matrix larger than the caller allows.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix-size cap shared by the expensive operations. Zero means unlimited.
struct ComputeBudget {
  std::size_t max_matrix_entries = 0;

  void check(std::size_t rows, std::size_t cols, const char* what) const {
    if (max_matrix_entries == 0) return;
    if (rows * cols > max_matrix_entries) {
      throw BudgetExceeded(std::string(what) + ": " + std::to_string(rows) + "x" + std::to_string(cols) +
                           " matrix exceeds the cap of " + std::to_string(max_matrix_entries) + " entries");
    }
  }
};

}  // namespace qehrhart
