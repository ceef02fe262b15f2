#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace narcert {

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p);

/// Dense matrix over the prime field F_p, entries stored reduced in [0, p).
class ModpMatrix {
 public:
  ModpMatrix() = default;
  ModpMatrix(std::size_t rows, std::size_t cols, std::uint32_t p);

  static ModpMatrix identity(std::size_t n, std::uint32_t p);
  /// Rows given as integers; each entry is reduced mod p.
  static ModpMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows,
                              std::size_t cols, std::uint32_t p);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t prime() const { return p_; }

  std::uint32_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t value);

  ModpMatrix operator*(const ModpMatrix& rhs) const;
  bool operator==(const ModpMatrix& rhs) const = default;

  ModpMatrix transpose() const;
  ModpMatrix row(std::size_t r) const;
  bool is_zero() const;

  /// Brings the matrix to reduced row echelon form in place (zero rows kept
  /// at the bottom) and returns the pivot columns.
  std::vector<std::size_t> row_reduce();
  std::size_t rank() const;
  /// Basis of {x : A x = 0} as the rows of a matrix in reduced echelon form.
  ModpMatrix nullspace() const;
  /// Nonzero rows of the reduced echelon form.
  ModpMatrix row_space() const;

  std::vector<std::vector<std::uint32_t>> to_rows() const;
  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::uint32_t p_ = 2;
  std::vector<std::uint32_t> data_;
};

}  // namespace narcert
