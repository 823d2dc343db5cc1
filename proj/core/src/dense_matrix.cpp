#include "cptp/dense_matrix.hpp"

#include <string>

#include "cptp/error.hpp"

namespace cptp {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw InvalidArgument("matrix data length " + std::to_string(data_.size()) + " != " +
                          std::to_string(rows_) + "x" + std::to_string(cols_));
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

DenseMatrix DenseMatrix::from_rows(const std::vector<RationalVector>& rows, std::size_t cols) {
  DenseMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw InvalidArgument("row " + std::to_string(r) + " has length " +
                            std::to_string(rows[r].size()) + ", expected " + std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

RationalVector DenseMatrix::apply(std::span<const Rational> x) const {
  if (x.size() != cols_) {
    throw InvalidArgument("matrix-vector product: vector length " + std::to_string(x.size()) +
                          " != " + std::to_string(cols_) + " columns");
  }
  RationalVector y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Rational sum = 0;
    for (std::size_t c = 0; c < cols_; ++c) sum += (*this)(r, c) * x[c];
    y[r] = sum;
  }
  return y;
}

DenseMatrix vstack(const DenseMatrix& top, const DenseMatrix& bottom) {
  if (top.cols() != bottom.cols()) throw InvalidArgument("vstack: column counts differ");
  DenseMatrix out(top.rows() + bottom.rows(), top.cols());
  for (std::size_t r = 0; r < top.rows(); ++r) {
    for (std::size_t c = 0; c < top.cols(); ++c) out(r, c) = top(r, c);
  }
  for (std::size_t r = 0; r < bottom.rows(); ++r) {
    for (std::size_t c = 0; c < bottom.cols(); ++c) out(top.rows() + r, c) = bottom(r, c);
  }
  return out;
}

DenseMatrix pad_left_columns(const DenseMatrix& m, std::size_t count) {
  DenseMatrix out(m.rows(), m.cols() + count);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c + count) = m(r, c);
  }
  return out;
}

}  // namespace cptp
