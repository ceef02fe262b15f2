#include "narcert/modp.hpp"

#include <sstream>
#include <utility>

#include "narcert/arith.hpp"
#include "narcert/error.hpp"

namespace narcert {

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a % p;
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw Error(ErrorKind::kInvalidArgument, "element is not invertible mod p");
  return static_cast<std::uint32_t>(t < 0 ? t + p : t);
}

ModpMatrix::ModpMatrix(std::size_t rows, std::size_t cols, std::uint32_t p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {
  if (!is_prime(p)) {
    throw Error(ErrorKind::kInvalidArgument, std::to_string(p) + " is not prime");
  }
}

ModpMatrix ModpMatrix::identity(std::size_t n, std::uint32_t p) {
  ModpMatrix m(n, n, p);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

ModpMatrix ModpMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows,
                                 std::size_t cols, std::uint32_t p) {
  ModpMatrix m(rows.size(), cols, p);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw Error(ErrorKind::kInvalidArgument, "row has wrong width");
    }
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

void ModpMatrix::set(std::size_t r, std::size_t c, std::int64_t value) {
  const std::int64_t p = p_;
  std::int64_t v = value % p;
  if (v < 0) v += p;
  data_[r * cols_ + c] = static_cast<std::uint32_t>(v);
}

ModpMatrix ModpMatrix::operator*(const ModpMatrix& rhs) const {
  if (cols_ != rhs.rows_ || p_ != rhs.p_) {
    throw Error(ErrorKind::kInvalidArgument, "matrix shapes or fields do not match");
  }
  ModpMatrix out(rows_, rhs.cols_, p_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const std::uint64_t a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        auto& cell = out.data_[i * out.cols_ + j];
        cell = static_cast<std::uint32_t>((cell + a * rhs(k, j)) % p_);
      }
    }
  }
  return out;
}

ModpMatrix ModpMatrix::transpose() const {
  ModpMatrix out(cols_, rows_, p_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out.data_[j * rows_ + i] = (*this)(i, j);
  }
  return out;
}

ModpMatrix ModpMatrix::row(std::size_t r) const {
  ModpMatrix out(1, cols_, p_);
  for (std::size_t j = 0; j < cols_; ++j) out.data_[j] = (*this)(r, j);
  return out;
}

bool ModpMatrix::is_zero() const {
  for (auto v : data_) {
    if (v != 0) return false;
  }
  return true;
}

std::vector<std::size_t> ModpMatrix::row_reduce() {
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < cols_ && lead < rows_; ++c) {
    std::size_t r = lead;
    while (r < rows_ && (*this)(r, c) == 0) ++r;
    if (r == rows_) continue;
    if (r != lead) {
      for (std::size_t j = 0; j < cols_; ++j) {
        std::swap(data_[r * cols_ + j], data_[lead * cols_ + j]);
      }
    }
    const std::uint64_t inv = inverse_mod((*this)(lead, c), p_);
    for (std::size_t j = 0; j < cols_; ++j) {
      auto& cell = data_[lead * cols_ + j];
      cell = static_cast<std::uint32_t>(cell * inv % p_);
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == lead) continue;
      const std::uint64_t factor = (*this)(i, c);
      if (factor == 0) continue;
      for (std::size_t j = 0; j < cols_; ++j) {
        auto& cell = data_[i * cols_ + j];
        const std::uint64_t sub = factor * (*this)(lead, j) % p_;
        cell = static_cast<std::uint32_t>((cell + p_ - sub) % p_);
      }
    }
    pivots.push_back(c);
    ++lead;
  }
  return pivots;
}

std::size_t ModpMatrix::rank() const {
  ModpMatrix copy = *this;
  return copy.row_reduce().size();
}

ModpMatrix ModpMatrix::nullspace() const {
  ModpMatrix reduced = *this;
  const auto pivots = reduced.row_reduce();
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivots) is_pivot[c] = true;

  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < cols_; ++c) {
    if (!is_pivot[c]) free_cols.push_back(c);
  }
  ModpMatrix basis(free_cols.size(), cols_, p_);
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t f = free_cols[k];
    basis.data_[k * cols_ + f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      basis.set(k, pivots[i], -static_cast<std::int64_t>(reduced(i, f)));
    }
  }
  basis.row_reduce();
  return basis;
}

ModpMatrix ModpMatrix::row_space() const {
  ModpMatrix reduced = *this;
  const std::size_t r = reduced.row_reduce().size();
  ModpMatrix out(r, cols_, p_);
  std::copy(reduced.data_.begin(), reduced.data_.begin() + r * cols_, out.data_.begin());
  return out;
}

std::vector<std::vector<std::uint32_t>> ModpMatrix::to_rows() const {
  std::vector<std::vector<std::uint32_t>> out(rows_, std::vector<std::uint32_t>(cols_));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j);
  }
  return out;
}

std::string ModpMatrix::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
  }
  os << ']';
  return os.str();
}

}  // namespace narcert
