#include "ctwist/linalg.hpp"

#include <cassert>

namespace ctwist::linalg {

RatMat identity(std::size_t n) {
  RatMat a(n, RatVec(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) a[i][i] = 1;
  return a;
}

RatMat zeros(std::size_t rows, std::size_t cols) {
  return RatMat(rows, RatVec(cols, Rational(0)));
}

RatMat transpose(const RatMat& a) {
  if (a.empty()) return {};
  RatMat t = zeros(a[0].size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

RatMat mul(const RatMat& a, const RatMat& b) {
  assert(!a.empty() && !b.empty() && a[0].size() == b.size());
  RatMat c = zeros(a.size(), b[0].size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

RatVec mul(const RatMat& a, const RatVec& x) {
  assert(!a.empty() && a[0].size() == x.size());
  RatVec y(a.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (a[i][j] != 0 && x[j] != 0) y[i] += a[i][j] * x[j];
  return y;
}

RatMat add(const RatMat& a, const RatMat& b) {
  RatMat c = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) c[i][j] += b[i][j];
  return c;
}

RatMat scale(const Rational& s, const RatMat& a) {
  RatMat c = a;
  for (auto& row : c)
    for (auto& v : row) v *= s;
  return c;
}

namespace {

// Row echelon with partial (first nonzero) pivoting; returns pivot columns.
// `rhs`, when present, is carried along.
std::vector<std::size_t> eliminate(RatMat& a, RatMat* rhs) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    if (rhs) std::swap((*rhs)[p], (*rhs)[r]);
    const Rational inv = Rational(1) / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    if (rhs)
      for (auto& v : (*rhs)[r]) v *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
      if (rhs)
        for (std::size_t j = 0; j < (*rhs)[i].size(); ++j) (*rhs)[i][j] -= f * (*rhs)[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Rational determinant(RatMat a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return Rational(0);
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    const Rational inv = Rational(1) / a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      const Rational f = a[i][c] * inv;
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

Rational pfaffian(const RatMat& a) {
  const std::size_t n = a.size();
  if (n % 2 != 0) return Rational(0);
  if (n == 0) return Rational(1);
  if (n == 2) return a[0][1];
  Rational sum = 0;
  for (std::size_t j = 1; j < n; ++j) {
    if (a[0][j] == 0) continue;
    RatMat minor;
    minor.reserve(n - 2);
    for (std::size_t r = 1; r < n; ++r) {
      if (r == j) continue;
      RatVec row;
      row.reserve(n - 2);
      for (std::size_t c = 1; c < n; ++c) {
        if (c == j) continue;
        row.push_back(a[r][c]);
      }
      minor.push_back(std::move(row));
    }
    const Rational sign = (j % 2 == 1) ? Rational(1) : Rational(-1);
    sum += sign * a[0][j] * pfaffian(minor);
  }
  return sum;
}

std::optional<RatVec> solve(RatMat a, RatVec b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  RatMat rhs(rows, RatVec(1));
  for (std::size_t i = 0; i < rows; ++i) rhs[i][0] = b[i];
  const auto pivots = eliminate(a, &rhs);
  RatVec x(cols, Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = rhs[r][0];
  // Consistency: rows with zero coefficients must have zero rhs.
  for (std::size_t r = pivots.size(); r < rows; ++r)
    if (rhs[r][0] != 0) return std::nullopt;
  if (pivots.size() < cols) {
    // Underdetermined: report only if the particular solution checks out,
    // which it does by construction; callers that need uniqueness use kernel().
  }
  return x;
}

std::optional<RatMat> inverse(const RatMat& a) {
  const std::size_t n = a.size();
  RatMat work = a;
  RatMat rhs = identity(n);
  const auto pivots = eliminate(work, &rhs);
  if (pivots.size() < n) return std::nullopt;
  return rhs;
}

std::vector<RatVec> kernel(RatMat a) {
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  const auto pivots = eliminate(a, nullptr);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<RatVec> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RatVec v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

bool is_zero(const RatVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

bool is_zero(const RatMat& a) {
  for (const auto& row : a)
    if (!is_zero(row)) return false;
  return true;
}

}  // namespace ctwist::linalg
