#pragma once

#include <cassert>
#include <vector>

namespace depmine {

// Dense row-major matrix with checked construction and unchecked access.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(int rows, int cols, T init = T{})
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, init) {
    assert(rows >= 0 && cols >= 0);
  }

  T& operator()(int r, int c) {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }
  const T& operator()(int r, int c) const {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  void fill(const T& value) { data_.assign(data_.size(), value); }
  const std::vector<T>& cells() const { return data_; }

  friend bool operator==(const Grid& a, const Grid& b) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

}  // namespace depmine
