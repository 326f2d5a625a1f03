#include "mmae/matrix.hpp"

#include <cmath>
#include <string>

#include "mmae/errors.hpp"

namespace mmae {

namespace {

void require_same_shape(const RealMatrix& a, const RealMatrix& b,
                        const char* op) {
  if (!a.same_shape(b)) {
    throw ShapeError(std::string(op) + ": shape mismatch " + shape_str(a) +
                     " vs " + shape_str(b));
  }
}

}  // namespace

RealMatrix RealMatrix::from_rows(
    std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  RealMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw ShapeError("from_rows: ragged row lengths");
    std::size_t j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

RealMatrix RealMatrix::column(const std::vector<double>& v) {
  RealMatrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

RealMatrix RealMatrix::identity(std::size_t n) {
  RealMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

bool RealMatrix::all_finite() const {
  for (double v : values_)
    if (!std::isfinite(v)) return false;
  return true;
}

RealMatrix RealMatrix::transposed() const {
  RealMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RealMatrix RealMatrix::slice_cols(std::size_t begin, std::size_t end) const {
  if (begin > end || end > cols_)
    throw ShapeError("slice_cols: range out of bounds");
  RealMatrix out(rows_, end - begin);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = begin; j < end; ++j) out(i, j - begin) = (*this)(i, j);
  return out;
}

std::string shape_str(const RealMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

RealMatrix multiply(const RealMatrix& a, const RealMatrix& b) {
  if (a.cols() != b.rows())
    throw ShapeError("multiply: shape mismatch " + shape_str(a) + " * " +
                     shape_str(b));
  RealMatrix c(a.rows(), b.cols());
  const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
  for (std::size_t i = 0; i < n; ++i) {
    double* ci = c.data() + i * m;
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = a(i, p);
      if (aip == 0.0) continue;
      const double* bp = b.data() + p * m;
      for (std::size_t j = 0; j < m; ++j) ci[j] += aip * bp[j];
    }
  }
  return c;
}

RealMatrix multiply_at_b(const RealMatrix& a, const RealMatrix& b) {
  if (a.rows() != b.rows())
    throw ShapeError("multiply_at_b: shape mismatch " + shape_str(a) + "^T * " +
                     shape_str(b));
  RealMatrix c(a.cols(), b.cols());
  const std::size_t k = a.rows(), n = a.cols(), m = b.cols();
  for (std::size_t p = 0; p < k; ++p) {
    const double* ap = a.data() + p * n;
    const double* bp = b.data() + p * m;
    for (std::size_t i = 0; i < n; ++i) {
      const double api = ap[i];
      if (api == 0.0) continue;
      double* ci = c.data() + i * m;
      for (std::size_t j = 0; j < m; ++j) ci[j] += api * bp[j];
    }
  }
  return c;
}

RealMatrix multiply_a_bt(const RealMatrix& a, const RealMatrix& b) {
  if (a.cols() != b.cols())
    throw ShapeError("multiply_a_bt: shape mismatch " + shape_str(a) + " * " +
                     shape_str(b) + "^T");
  RealMatrix c(a.rows(), b.rows());
  const std::size_t n = a.rows(), k = a.cols(), m = b.rows();
  for (std::size_t i = 0; i < n; ++i) {
    const double* ai = a.data() + i * k;
    for (std::size_t j = 0; j < m; ++j) {
      const double* bj = b.data() + j * k;
      double s = 0.0;
      for (std::size_t p = 0; p < k; ++p) s += ai[p] * bj[p];
      c(i, j) = s;
    }
  }
  return c;
}

RealMatrix add(const RealMatrix& a, const RealMatrix& b) {
  require_same_shape(a, b, "add");
  RealMatrix c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c.values()[i] += b.values()[i];
  return c;
}

RealMatrix subtract(const RealMatrix& a, const RealMatrix& b) {
  require_same_shape(a, b, "subtract");
  RealMatrix c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c.values()[i] -= b.values()[i];
  return c;
}

RealMatrix hadamard(const RealMatrix& a, const RealMatrix& b) {
  require_same_shape(a, b, "hadamard");
  RealMatrix c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c.values()[i] *= b.values()[i];
  return c;
}

RealMatrix scaled(const RealMatrix& a, double s) {
  RealMatrix c = a;
  for (double& v : c.values()) v *= s;
  return c;
}

void add_in_place(RealMatrix& a, const RealMatrix& b) {
  require_same_shape(a, b, "add_in_place");
  for (std::size_t i = 0; i < a.size(); ++i) a.values()[i] += b.values()[i];
}

void add_scaled_in_place(RealMatrix& a, const RealMatrix& b, double s) {
  require_same_shape(a, b, "add_scaled_in_place");
  for (std::size_t i = 0; i < a.size(); ++i) a.values()[i] += s * b.values()[i];
}

void add_column_vector_in_place(RealMatrix& m, const std::vector<double>& v) {
  if (v.size() != m.rows())
    throw ShapeError("add_column_vector: vector length " +
                     std::to_string(v.size()) + " vs matrix " + shape_str(m));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) += v[i];
}

std::vector<double> row_sums(const RealMatrix& m) {
  std::vector<double> out(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j);
  return out;
}

double frobenius_norm_sq(const RealMatrix& m) {
  double s = 0.0;
  for (double v : m.values()) s += v * v;
  return s;
}

RealMatrix hcat(const RealMatrix& a, const RealMatrix& b) {
  if (a.rows() != b.rows())
    throw ShapeError("hcat: row mismatch " + shape_str(a) + " | " +
                     shape_str(b));
  RealMatrix c(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

}  // namespace mmae
