#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "ainf/coeff/scalar.hpp"

namespace ainf::coeff {

using SparseRow = std::map<int, Scalar>;
using Column = std::vector<Scalar>;

/// Sparse matrix over a Scalar ring, stored by rows. Zero entries are never
/// stored.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(int rows, int cols);
  static ExactMatrix identity(int n);
  static ExactMatrix from_dense(const std::vector<std::vector<Scalar>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Scalar get(int r, int c) const;
  void set(int r, int c, const Scalar& v);
  void add(int r, int c, const Scalar& v);
  const SparseRow& row(int r) const { return data_[static_cast<size_t>(r)]; }
  SparseRow& row_mut(int r) { return data_[static_cast<size_t>(r)]; }
  std::vector<std::tuple<int, int, Scalar>> entries() const;
  size_t nonzeros() const;
  bool is_zero() const { return nonzeros() == 0; }

  ExactMatrix transpose() const;
  std::vector<std::vector<Scalar>> to_dense() const;
  Column apply(const Column& x) const;
  /// Row vector times matrix.
  Column left_apply(const Column& y) const;

  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator!=(const ExactMatrix& a, const ExactMatrix& b) { return !(a == b); }

  std::string to_string(std::string_view var = "ħ") const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<SparseRow> data_;
};

}  // namespace ainf::coeff
