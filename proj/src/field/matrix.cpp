#include "diffalg/matrix.hpp"

#include <algorithm>

namespace diffalg {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw StructureMismatch(std::string(op) + ": shape " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                            " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
}

// Gauss-Jordan elimination in place with first-nonzero pivoting.  Returns
// pivot columns, one per nonzero row of the reduced matrix.
std::vector<std::size_t> reduce(Matrix& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < ncols && row < m.rows(); ++c) {
    std::size_t p = row;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(p, k), m(row, k));
    const RatFun inv = m(row, c).inverse();
    for (std::size_t k = c; k < m.cols(); ++k) m(row, k) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, c).is_zero()) continue;
      const RatFun f = m(r, c);
      for (std::size_t k = c; k < m.cols(); ++k)
        if (!m(row, k).is_zero()) m(r, k) -= f * m(row, k);
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<RatFun> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw StructureMismatch("matrix data size does not match its shape");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::column(const std::vector<RatFun>& v) { return Matrix(v.size(), 1, v); }

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const RatFun& x) { return x.is_zero(); });
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::map(const std::function<RatFun(const RatFun&)>& f) const {
  Matrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = f(data_[i]);
  return out;
}

std::vector<RatFun> Matrix::col(std::size_t c) const {
  std::vector<RatFun> v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  require_same_shape(*this, o, "add");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  require_same_shape(*this, o, "sub");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Matrix Matrix::operator-() const {
  return map([](const RatFun& x) { return -x; });
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw StructureMismatch("mul: " + std::to_string(a.cols()) + " columns vs " + std::to_string(b.rows()) + " rows");
  Matrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const RatFun& x = a(r, k);
      if (x.is_zero()) continue;
      for (std::size_t c = 0; c < b.cols(); ++c)
        if (!b(k, c).is_zero()) out(r, c) += x * b(k, c);
    }
  return out;
}

Matrix operator*(const RatFun& s, const Matrix& m) {
  return m.map([&s](const RatFun& x) { return s * x; });
}

std::vector<RatFun> Matrix::apply(const std::vector<RatFun>& v) const {
  return ((*this) * column(v)).col(0);
}

Matrix Matrix::block(std::size_t r, std::size_t c, std::size_t rows, std::size_t cols) const {
  Matrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = (*this)(r + i, c + j);
  return out;
}

void Matrix::set_block(std::size_t r, std::size_t c, const Matrix& b) {
  if (r + b.rows() > rows_ || c + b.cols() > cols_) throw StructureMismatch("block out of range");
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r + i, c + j) = b(i, j);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() + b.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), a.cols(), b);
  return out;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

std::size_t rank(const Matrix& m) {
  Matrix w = m;
  return reduce(w, w.cols()).size();
}

Matrix inverse(const Matrix& m) {
  if (!m.is_square()) throw StructureMismatch("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, Matrix::identity(n));
  if (reduce(aug, n).size() != n) throw DivisionByZero();
  return aug.block(0, n, n, n);
}

std::vector<std::vector<RatFun>> nullspace(const Matrix& m) {
  Matrix w = m;
  auto pivots = reduce(w, w.cols());
  std::vector<bool> is_pivot(w.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<RatFun>> basis;
  for (std::size_t free = 0; free < w.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<RatFun> v(w.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -w(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<RatFun>> solve(const Matrix& m, const std::vector<RatFun>& b) {
  if (b.size() != m.rows()) throw StructureMismatch("solve: right-hand side length");
  Matrix aug(m.rows(), m.cols() + 1);
  aug.set_block(0, 0, m);
  aug.set_block(0, m.cols(), Matrix::column(b));
  auto pivots = reduce(aug, m.cols());
  for (std::size_t r = pivots.size(); r < aug.rows(); ++r)
    if (!aug(r, m.cols()).is_zero()) return std::nullopt;
  std::vector<RatFun> x(m.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, m.cols());
  return x;
}

std::vector<std::vector<std::string>> render(const Matrix& m, const FieldSpec& field) {
  std::vector<std::vector<std::string>> out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r].push_back(to_string(m(r, c).promoted(field.size()), field));
  return out;
}

Matrix parse_matrix(const std::vector<std::vector<std::string>>& rows, const FieldSpec& field) {
  const std::size_t nrows = rows.size();
  const std::size_t ncols = nrows == 0 ? 0 : rows.front().size();
  Matrix m(nrows, ncols);
  for (std::size_t r = 0; r < nrows; ++r) {
    if (rows[r].size() != ncols) throw StructureMismatch("ragged matrix: row " + std::to_string(r));
    for (std::size_t c = 0; c < ncols; ++c) m(r, c) = parse_ratfun(rows[r][c], field);
  }
  return m;
}

}  // namespace diffalg
