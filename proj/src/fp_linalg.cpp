#include "ramlock/fp_linalg.hpp"

#include <algorithm>

namespace ramlock::fp {

int row_reduce(FpMat& m, u64 p) {
  if (m.empty()) return 0;
  const size_t cols = m[0].size();
  size_t rank = 0;
  for (size_t c = 0; c < cols && rank < m.size(); ++c) {
    size_t piv = rank;
    while (piv < m.size() && m[piv][c] % p == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[rank], m[piv]);
    const u64 inv = invmod_small(m[rank][c] % p, p);
    for (auto& x : m[rank]) x = x % p * inv % p;
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == rank || m[i][c] % p == 0) continue;
      const u64 f = m[i][c] % p;
      for (size_t j = 0; j < cols; ++j) m[i][j] = (m[i][j] % p + p * p - f * m[rank][j]) % p;
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

FpMat nullspace(const FpMat& rows, int cols, u64 p) {
  FpMat m = rows;
  for (auto& r : m) r.resize(cols, 0);
  const int rank = row_reduce(m, p);
  std::vector<int> pivcol;
  for (int r = 0; r < rank; ++r) {
    int c = 0;
    while (m[r][c] == 0) ++c;
    pivcol.push_back(c);
  }
  FpMat out;
  for (int free = 0; free < cols; ++free) {
    if (std::find(pivcol.begin(), pivcol.end(), free) != pivcol.end()) continue;
    FpVec v(cols, 0);
    v[free] = 1;
    for (int r = 0; r < rank; ++r) v[pivcol[r]] = (p - m[r][free] % p) % p;
    out.push_back(v);
  }
  return out;
}

std::optional<FpVec> solve(const FpMat& a, const FpVec& b, u64 p) {
  const size_t cols = a.empty() ? 0 : a[0].size();
  FpMat aug = a;
  for (size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i] % p);
  const int rank = row_reduce(aug, p);
  FpVec x(cols, 0);
  for (int r = 0; r < rank; ++r) {
    size_t c = 0;
    while (c <= cols && aug[r][c] == 0) ++c;
    if (c == cols) return std::nullopt;
    x[c] = aug[r][cols];
  }
  return x;
}

u64 dot(const FpVec& a, const FpVec& b, u64 p) {
  u64 s = 0;
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) s = (s + (a[i] % p) * (b[i] % p)) % p;
  return s;
}

bool is_zero(const FpVec& v) {
  return std::all_of(v.begin(), v.end(), [](u64 x) { return x == 0; });
}

}  // namespace ramlock::fp
