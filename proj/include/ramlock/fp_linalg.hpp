#pragma once

#include <optional>
#include <vector>

#include "ramlock/zmod.hpp"

namespace ramlock {

using FpVec = std::vector<u64>;
using FpMat = std::vector<FpVec>;

namespace fp {

/// Row-reduce in place; returns the rank.
int row_reduce(FpMat& m, u64 p);
/// Basis of {v : row . v = 0 for every row}, with `cols` unknowns.
FpMat nullspace(const FpMat& rows, int cols, u64 p);
/// Some solution of A x = b (A given by rows), if consistent.
std::optional<FpVec> solve(const FpMat& a, const FpVec& b, u64 p);
u64 dot(const FpVec& a, const FpVec& b, u64 p);
bool is_zero(const FpVec& v);

}  // namespace fp

}  // namespace ramlock
