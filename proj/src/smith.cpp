#include "momtech/smith.hpp"

#include <cstdlib>
#include <numeric>
#include <utility>

#include "momtech/error.hpp"

namespace momtech {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorKind::Internal, "integer overflow in Smith normal form");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) fail(ErrorKind::Internal, "integer overflow in Smith normal form");
  return r;
}

// row_a -= q * row_b
void sub_row(IntMatrix& m, std::size_t a, std::size_t b, std::int64_t q) {
  for (std::size_t j = 0; j < m[a].size(); ++j) m[a][j] = checked_sub(m[a][j], checked_mul(q, m[b][j]));
}

void sub_col(IntMatrix& m, std::size_t a, std::size_t b, std::int64_t q) {
  for (auto& row : m) row[a] = checked_sub(row[a], checked_mul(q, row[b]));
}

}  // namespace

std::vector<std::int64_t> invariant_factors(IntMatrix m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (const auto& r : m)
    if (r.size() != cols) fail(ErrorKind::Internal, "ragged matrix");

  std::vector<std::int64_t> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // Pivot: smallest nonzero magnitude in the remaining block.
    auto find_pivot = [&](std::size_t& pi, std::size_t& pj) {
      bool found = false;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m[i][j] != 0 && (!found || std::llabs(m[i][j]) < std::llabs(m[pi][pj]))) {
            pi = i;
            pj = j;
            found = true;
          }
      return found;
    };
    std::size_t pi = t, pj = t;
    if (!find_pivot(pi, pj)) break;
    for (;;) {
      std::swap(m[t], m[pi]);
      for (auto& row : m) std::swap(row[t], row[pj]);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        sub_row(m, i, t, m[i][t] / m[t][t]);
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        sub_col(m, j, t, m[t][j] / m[t][t]);
        if (m[t][j] != 0) clean = false;
      }
      if (clean) {
        // The pivot must divide the rest of the block.
        bool divides = true;
        for (std::size_t i = t + 1; i < rows && divides; ++i)
          for (std::size_t j = t + 1; j < cols && divides; ++j)
            if (m[i][j] % m[t][t] != 0) {
              for (std::size_t k = t; k < cols; ++k) m[t][k] = m[t][k] + m[i][k];
              divides = false;
            }
        if (divides) break;
        clean = false;
      }
      pi = t;
      pj = t;
      // Smallest remainder in row/column t becomes the next pivot.
      for (std::size_t i = t; i < rows; ++i)
        if (m[i][t] != 0 && (m[pi][pj] == 0 || std::llabs(m[i][t]) < std::llabs(m[pi][pj]))) {
          pi = i;
          pj = t;
        }
      for (std::size_t j = t; j < cols; ++j)
        if (m[t][j] != 0 && (m[pi][pj] == 0 || std::llabs(m[t][j]) < std::llabs(m[pi][pj]))) {
          pi = t;
          pj = j;
        }
    }
    diag.push_back(std::llabs(m[t][t]));
  }
  // Divisibility chain from the diagonal via gcd/lcm sweeps.
  for (std::size_t a = 0; a < diag.size(); ++a)
    for (std::size_t b = a + 1; b < diag.size(); ++b) {
      std::int64_t g = std::gcd(diag[a], diag[b]);
      std::int64_t l = checked_mul(diag[a] / g, diag[b]);
      diag[a] = g;
      diag[b] = l;
    }
  return diag;
}

int matrix_rank(const IntMatrix& m) { return static_cast<int>(invariant_factors(m).size()); }

}  // namespace momtech
