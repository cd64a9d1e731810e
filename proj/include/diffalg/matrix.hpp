#pragma once

// Dense matrices over Q(v_1..v_N) and the exact linear algebra used by the
// higher modules (ranks, inverses, null spaces, Kronecker products).

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "diffalg/field.hpp"

namespace diffalg {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<RatFun> data);

  static Matrix identity(std::size_t n);
  static Matrix column(const std::vector<RatFun>& v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  RatFun& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const RatFun& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<RatFun>& data() const { return data_; }

  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }

  Matrix transpose() const;
  Matrix map(const std::function<RatFun(const RatFun&)>& f) const;
  std::vector<RatFun> col(std::size_t c) const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix operator-() const;
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const RatFun& s, const Matrix& m);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

  std::vector<RatFun> apply(const std::vector<RatFun>& v) const;

  /// Copy of the block starting at (r, c).
  Matrix block(std::size_t r, std::size_t c, std::size_t rows, std::size_t cols) const;
  void set_block(std::size_t r, std::size_t c, const Matrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<RatFun> data_;
};

Matrix kron(const Matrix& a, const Matrix& b);
Matrix direct_sum(const Matrix& a, const Matrix& b);
Matrix commutator(const Matrix& a, const Matrix& b);

std::size_t rank(const Matrix& m);
/// Throws DivisionByZero for a singular matrix.
Matrix inverse(const Matrix& m);
/// Basis of {x : m x = 0}, in reduced form (pivot-free coordinates set to unit vectors).
std::vector<std::vector<RatFun>> nullspace(const Matrix& m);
/// Some solution of m x = b, or nullopt when inconsistent.  Free unknowns are 0.
std::optional<std::vector<RatFun>> solve(const Matrix& m, const std::vector<RatFun>& b);

/// Row-major rendering as nested lists of canonical text.
std::vector<std::vector<std::string>> render(const Matrix& m, const FieldSpec& field);
Matrix parse_matrix(const std::vector<std::vector<std::string>>& rows, const FieldSpec& field);

}  // namespace diffalg
