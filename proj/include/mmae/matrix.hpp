#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace mmae {

// Dense row-major matrix of doubles. Samples live one per column, so a
// layer application reads literally as W*x + b.
class RealMatrix {
 public:
  RealMatrix() = default;
  RealMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

  static RealMatrix from_rows(
      std::initializer_list<std::initializer_list<double>> rows);
  // Single-column matrix from a flat vector.
  static RealMatrix column(const std::vector<double>& v);
  static RealMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  double& operator()(std::size_t r, std::size_t c) {
    return values_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return values_[r * cols_ + c];
  }

  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  bool same_shape(const RealMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_;
  }

  // True when every entry is finite.
  bool all_finite() const;

  RealMatrix transposed() const;

  // Columns [begin, end) as a new matrix.
  RealMatrix slice_cols(std::size_t begin, std::size_t end) const;

  bool operator==(const RealMatrix& o) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

// Shape string like "3x4", for error messages.
std::string shape_str(const RealMatrix& m);

// C = A*B.
RealMatrix multiply(const RealMatrix& a, const RealMatrix& b);
// C = A^T * B without materializing the transpose.
RealMatrix multiply_at_b(const RealMatrix& a, const RealMatrix& b);
// C = A * B^T without materializing the transpose.
RealMatrix multiply_a_bt(const RealMatrix& a, const RealMatrix& b);

RealMatrix add(const RealMatrix& a, const RealMatrix& b);
RealMatrix subtract(const RealMatrix& a, const RealMatrix& b);
RealMatrix hadamard(const RealMatrix& a, const RealMatrix& b);
RealMatrix scaled(const RealMatrix& a, double s);
void add_in_place(RealMatrix& a, const RealMatrix& b);
void add_scaled_in_place(RealMatrix& a, const RealMatrix& b, double s);

// Adds v[i] to every entry of row i.
void add_column_vector_in_place(RealMatrix& m, const std::vector<double>& v);
// Sum across columns: out[i] = sum_j m(i, j).
std::vector<double> row_sums(const RealMatrix& m);

double frobenius_norm_sq(const RealMatrix& m);

// [A | B] side by side.
RealMatrix hcat(const RealMatrix& a, const RealMatrix& b);

}  // namespace mmae
