#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cptp/rational.hpp"

namespace cptp {

/// Row-major exact rational matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> data);

  static DenseMatrix identity(std::size_t n);
  /// `cols` is needed to describe a matrix with zero rows.
  static DenseMatrix from_rows(const std::vector<RationalVector>& rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<const Rational> data() const noexcept { return data_; }

  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const Rational> row(std::size_t r) const {
    return std::span<const Rational>(data_).subspan(r * cols_, cols_);
  }

  DenseMatrix transpose() const;

  /// Matrix-vector product. Throws InvalidArgument on length mismatch.
  RationalVector apply(std::span<const Rational> x) const;

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Stacks `top` over `bottom`; column counts must agree.
DenseMatrix vstack(const DenseMatrix& top, const DenseMatrix& bottom);

/// Prepends `count` zero columns.
DenseMatrix pad_left_columns(const DenseMatrix& m, std::size_t count);

}  // namespace cptp
