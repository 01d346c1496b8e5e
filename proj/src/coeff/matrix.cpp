#include "ainf/coeff/matrix.hpp"

#include <sstream>

#include "ainf/error.hpp"

namespace ainf::coeff {

ExactMatrix::ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows)) {
  if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
}

ExactMatrix ExactMatrix::identity(int n) {
  ExactMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, Scalar(1));
  return m;
}

ExactMatrix ExactMatrix::from_dense(const std::vector<std::vector<Scalar>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows[0].size()) : 0;
  ExactMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != c) throw DimensionError("ragged dense matrix");
    for (int j = 0; j < c; ++j) m.set(i, j, rows[static_cast<size_t>(i)][static_cast<size_t>(j)]);
  }
  return m;
}

Scalar ExactMatrix::get(int r, int c) const {
  const auto& row = data_.at(static_cast<size_t>(r));
  auto it = row.find(c);
  return it == row.end() ? Scalar() : it->second;
}

void ExactMatrix::set(int r, int c, const Scalar& v) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw DimensionError("matrix index out of range");
  auto& row = data_[static_cast<size_t>(r)];
  if (v.is_zero()) row.erase(c);
  else row[c] = v;
}

void ExactMatrix::add(int r, int c, const Scalar& v) {
  if (v.is_zero()) return;
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw DimensionError("matrix index out of range");
  auto& row = data_[static_cast<size_t>(r)];
  auto [it, inserted] = row.try_emplace(c, v);
  if (!inserted) {
    it->second += v;
    if (it->second.is_zero()) row.erase(it);
  }
}

std::vector<std::tuple<int, int, Scalar>> ExactMatrix::entries() const {
  std::vector<std::tuple<int, int, Scalar>> out;
  for (int r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[static_cast<size_t>(r)]) out.emplace_back(r, c, v);
  return out;
}

size_t ExactMatrix::nonzeros() const {
  size_t n = 0;
  for (const auto& row : data_) n += row.size();
  return n;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[static_cast<size_t>(r)]) t.data_[static_cast<size_t>(c)][r] = v;
  return t;
}

std::vector<std::vector<Scalar>> ExactMatrix::to_dense() const {
  std::vector<std::vector<Scalar>> d(static_cast<size_t>(rows_), std::vector<Scalar>(static_cast<size_t>(cols_)));
  for (int r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[static_cast<size_t>(r)]) d[static_cast<size_t>(r)][static_cast<size_t>(c)] = v;
  return d;
}

Column ExactMatrix::apply(const Column& x) const {
  if (static_cast<int>(x.size()) != cols_) throw DimensionError("vector length does not match columns");
  Column y(static_cast<size_t>(rows_));
  for (int r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[static_cast<size_t>(r)])
      if (!x[static_cast<size_t>(c)].is_zero()) y[static_cast<size_t>(r)] += v * x[static_cast<size_t>(c)];
  return y;
}

Column ExactMatrix::left_apply(const Column& y) const {
  if (static_cast<int>(y.size()) != rows_) throw DimensionError("vector length does not match rows");
  Column x(static_cast<size_t>(cols_));
  for (int r = 0; r < rows_; ++r) {
    if (y[static_cast<size_t>(r)].is_zero()) continue;
    for (const auto& [c, v] : data_[static_cast<size_t>(r)]) x[static_cast<size_t>(c)] += y[static_cast<size_t>(r)] * v;
  }
  return x;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("matrix product dimension mismatch");
  ExactMatrix p(a.rows_, b.cols_);
  for (int r = 0; r < a.rows_; ++r)
    for (const auto& [k, av] : a.data_[static_cast<size_t>(r)])
      for (const auto& [c, bv] : b.data_[static_cast<size_t>(k)]) p.add(r, c, av * bv);
  return p;
}

ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix sum dimension mismatch");
  ExactMatrix s = a;
  for (int r = 0; r < b.rows_; ++r)
    for (const auto& [c, v] : b.data_[static_cast<size_t>(r)]) s.add(r, c, v);
  return s;
}

ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix difference dimension mismatch");
  ExactMatrix s = a;
  for (int r = 0; r < b.rows_; ++r)
    for (const auto& [c, v] : b.data_[static_cast<size_t>(r)]) s.add(r, c, -v);
  return s;
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string ExactMatrix::to_string(std::string_view var) const {
  std::ostringstream os;
  for (int r = 0; r < rows_; ++r) {
    os << "[";
    for (int c = 0; c < cols_; ++c) os << (c ? " " : "") << get(r, c).to_string(var);
    os << "]\n";
  }
  return os.str();
}

}  // namespace ainf::coeff
