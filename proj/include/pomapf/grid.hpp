#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pomapf/core.hpp"

namespace pomapf {

/// Dense row-major 2D array.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  std::size_t cell_count() const noexcept { return data_.size(); }

  bool in_bounds(int r, int c) const noexcept {
    return r >= 0 && c >= 0 && r < rows_ && c < cols_;
  }
  bool in_bounds(CellCoord p) const noexcept { return in_bounds(p.row, p.col); }

  std::size_t index(int r, int c) const noexcept {
    assert(in_bounds(r, c));
    return static_cast<std::size_t>(r) * cols_ + c;
  }
  std::size_t index(CellCoord p) const noexcept { return index(p.row, p.col); }
  CellCoord coord(std::size_t idx) const noexcept {
    return {static_cast<int>(idx / cols_), static_cast<int>(idx % cols_)};
  }

  T& operator()(int r, int c) noexcept { return data_[index(r, c)]; }
  const T& operator()(int r, int c) const noexcept { return data_[index(r, c)]; }
  T& operator[](CellCoord p) noexcept { return data_[index(p)]; }
  const T& operator[](CellCoord p) const noexcept { return data_[index(p)]; }

  std::span<T> flat() noexcept { return data_; }
  std::span<const T> flat() const noexcept { return data_; }

  void fill(T value) { std::fill(data_.begin(), data_.end(), value); }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

/// 1 = blocked, 0 = free.
using ObstacleGrid = Matrix<std::uint8_t>;

inline bool is_free(const ObstacleGrid& grid, CellCoord p) {
  return grid.in_bounds(p) && grid[p] == 0;
}

}  // namespace pomapf
