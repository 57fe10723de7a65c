#pragma once

#include <cstddef>
#include <optional>

#include "ctwist/rational.hpp"

namespace ctwist::linalg {

RatMat identity(std::size_t n);
RatMat zeros(std::size_t rows, std::size_t cols);
RatMat transpose(const RatMat& a);
RatMat mul(const RatMat& a, const RatMat& b);
RatVec mul(const RatMat& a, const RatVec& x);
RatMat add(const RatMat& a, const RatMat& b);
RatMat scale(const Rational& c, const RatMat& a);

Rational determinant(RatMat a);

// Pfaffian of a skew-symmetric matrix, by cofactor expansion along the first
// row. Sizes here never exceed 6x6.
Rational pfaffian(const RatMat& a);

// Solution of a.x = b, empty if the system is singular/inconsistent.
std::optional<RatVec> solve(RatMat a, RatVec b);

std::optional<RatMat> inverse(const RatMat& a);

// Basis of the null space {x : a.x = 0}.
std::vector<RatVec> kernel(RatMat a);

bool is_zero(const RatVec& v);
bool is_zero(const RatMat& a);

}  // namespace ctwist::linalg
