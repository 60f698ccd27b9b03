#include "qga/linalg.hpp"

#include <utility>

namespace qga::linalg {

namespace {

struct Echelon {
  std::vector<IntRow> rows;
  std::vector<std::size_t> pivot_cols;  ///< pivot_cols[i] is the pivot of rows[i]
};

/// Bareiss elimination restricted to the first `ncols` columns; trailing
/// columns (an augmented right-hand side) are carried along.
Echelon bareiss(std::vector<IntRow> m, std::size_t ncols) {
  Echelon e;
  const std::size_t nrows = m.size();
  if (nrows == 0) return e;
  const std::size_t width = m[0].size();
  Integer prev = 1;
  std::size_t r = 0;
  Integer t;
  for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
    std::size_t p = r;
    while (p < nrows && m[p][c] == 0) ++p;
    if (p == nrows) continue;
    std::swap(m[p], m[r]);
    const Integer& piv = m[r][c];
    for (std::size_t i = r + 1; i < nrows; ++i) {
      if (m[i][c] == 0) {
        if (prev != 1) {
          for (std::size_t j = c + 1; j < width; ++j) {
            if (m[i][j] == 0) continue;
            m[i][j] *= piv;
            mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
          }
        } else {
          for (std::size_t j = c + 1; j < width; ++j) {
            if (m[i][j] != 0) m[i][j] *= piv;
          }
        }
        continue;
      }
      const Integer f = m[i][c];
      for (std::size_t j = c + 1; j < width; ++j) {
        t = piv * m[i][j];
        mpz_submul(t.get_mpz_t(), f.get_mpz_t(), m[r][j].get_mpz_t());
        if (prev != 1) mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = t;
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    e.pivot_cols.push_back(c);
    ++r;
  }
  e.rows = std::move(m);
  return e;
}

}  // namespace

IntRow to_integer_row(const RatVector& row) {
  Integer l = 1;
  for (const auto& x : row) {
    if (x.get_den() != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
  }
  IntRow out;
  out.reserve(row.size());
  for (const auto& x : row) out.push_back(x.get_num() * (l / x.get_den()));
  return out;
}

std::size_t rank_int(std::vector<IntRow> rows) {
  if (rows.empty()) return 0;
  const std::size_t n = rows[0].size();
  return bareiss(std::move(rows), n).pivot_cols.size();
}

std::size_t rank(const std::vector<RatVector>& rows) {
  std::vector<IntRow> m;
  m.reserve(rows.size());
  for (const auto& r : rows) m.push_back(to_integer_row(r));
  return rank_int(std::move(m));
}

std::optional<Solution> solve(const std::vector<RatVector>& a, const RatVector& b) {
  const std::size_t nrows = a.size();
  const std::size_t ncols = nrows ? a[0].size() : 0;
  std::vector<IntRow> m;
  m.reserve(nrows);
  for (std::size_t i = 0; i < nrows; ++i) {
    RatVector row = a[i];
    row.push_back(b[i]);
    m.push_back(to_integer_row(row));
  }
  Echelon e = bareiss(std::move(m), ncols);
  const std::size_t rk = e.pivot_cols.size();
  for (std::size_t i = rk; i < nrows; ++i) {
    if (e.rows[i][ncols] != 0) return std::nullopt;
  }
  Solution s;
  s.x.assign(ncols, Rational(0));
  s.unique = rk == ncols;
  for (std::size_t i = rk; i-- > 0;) {
    const std::size_t c = e.pivot_cols[i];
    Rational acc(e.rows[i][ncols]);
    for (std::size_t j = c + 1; j < ncols; ++j) {
      if (e.rows[i][j] != 0 && s.x[j] != 0) acc -= Rational(e.rows[i][j]) * s.x[j];
    }
    s.x[c] = acc / Rational(e.rows[i][c]);
  }
  return s;
}

std::optional<RatVector> solve_in_span(const std::vector<RatVector>& vectors,
                                       const RatVector& target) {
  const std::size_t k = vectors.size();
  const std::size_t n = target.size();
  std::vector<RatVector> a(n, RatVector(k));
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < n; ++i) a[i][j] = vectors[j][i];
  }
  if (k == 0) {
    for (const auto& t : target) {
      if (t != 0) return std::nullopt;
    }
    return RatVector{};
  }
  auto s = solve(a, target);
  if (!s) return std::nullopt;
  return std::move(s->x);
}

}  // namespace qga::linalg
