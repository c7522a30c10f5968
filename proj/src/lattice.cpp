#include "lkq/lattice.hpp"

#include <utility>

namespace lkq {

namespace {

BigInt babs(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

}  // namespace

std::vector<BigInt> smith_invariants(std::vector<std::vector<BigInt>> M) {
  std::vector<BigInt> diag;
  const int rows = static_cast<int>(M.size());
  if (rows == 0) return diag;
  const int cols = static_cast<int>(M[0].size());
  for (int t = 0; t < std::min(rows, cols); ++t) {
    // pivot: smallest nonzero magnitude in the remaining block
    for (;;) {
      int pi = -1, pj = -1;
      for (int i = t; i < rows; ++i)
        for (int j = t; j < cols; ++j)
          if (M[i][j] != 0 && (pi < 0 || babs(M[i][j]) < babs(M[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi < 0) return diag;
      std::swap(M[t], M[pi]);
      for (int i = 0; i < rows; ++i) std::swap(M[i][t], M[i][pj]);

      bool clean = true;
      for (int i = t + 1; i < rows; ++i) {
        BigInt q = M[i][t] / M[t][t];
        if (q != 0)
          for (int j = t; j < cols; ++j) M[i][j] -= q * M[t][j];
        if (M[i][t] != 0) clean = false;
      }
      for (int j = t + 1; j < cols; ++j) {
        BigInt q = M[t][j] / M[t][t];
        if (q != 0)
          for (int i = t; i < rows; ++i) M[i][j] -= q * M[i][t];
        if (M[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility: fold any entry not divisible by the pivot into row t
      int bad = -1;
      for (int i = t + 1; i < rows && bad < 0; ++i)
        for (int j = t + 1; j < cols; ++j)
          if (M[i][j] % M[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      for (int j = t; j < cols; ++j) M[t][j] += M[bad][j];
    }
    diag.push_back(babs(M[t][t]));
  }
  return diag;
}

}  // namespace lkq
