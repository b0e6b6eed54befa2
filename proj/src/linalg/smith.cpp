#include <algorithm>
#include <sstream>

#include "diffcoh/linalg.hpp"

namespace diffcoh {

namespace {

// Dense working state. Row ops act on A and U (and inverse columns of U^{-1}),
// column ops on A and V (and inverse rows of V^{-1}).
struct SmithState {
  std::vector<std::vector<Integer>> a;
  IntDense U, V, Ui, Vi;
  std::size_t m, n;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap(a[i], a[j]);
    for (std::size_t c = 0; c < m; ++c) {
      std::swap(U(i, c), U(j, c));
      std::swap(Ui(c, i), Ui(c, j));
    }
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (auto& row : a) std::swap(row[i], row[j]);
    for (std::size_t r = 0; r < n; ++r) {
      std::swap(V(r, i), V(r, j));
      std::swap(Vi(i, r), Vi(j, r));
    }
  }
  // row i += k * row j
  void add_row(std::size_t i, std::size_t j, const Integer& k, std::size_t from) {
    if (k == 0) return;
    for (std::size_t c = from; c < n; ++c)
      if (a[j][c] != 0) a[i][c] += k * a[j][c];
    for (std::size_t c = 0; c < m; ++c) {
      if (U(j, c) != 0) U(i, c) += k * U(j, c);
      if (Ui(c, i) != 0) Ui(c, j) -= k * Ui(c, i);
    }
  }
  // col i += k * col j
  void add_col(std::size_t i, std::size_t j, const Integer& k, std::size_t from) {
    if (k == 0) return;
    for (std::size_t r = from; r < m; ++r)
      if (a[r][j] != 0) a[r][i] += k * a[r][j];
    for (std::size_t r = 0; r < n; ++r) {
      if (V(r, j) != 0) V(r, i) += k * V(r, j);
      if (Vi(i, r) != 0) Vi(j, r) -= k * Vi(i, r);
    }
  }
  void negate_row(std::size_t i) {
    for (auto& x : a[i]) x = -x;
    for (std::size_t c = 0; c < m; ++c) {
      U(i, c) = -U(i, c);
      Ui(c, i) = -Ui(c, i);
    }
  }
};

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& A) {
  SmithState s;
  s.m = A.rows();
  s.n = A.cols();
  s.a.assign(s.m, std::vector<Integer>(s.n));
  for (const auto& [rc, v] : A.entries()) s.a[rc.first][rc.second] = v;
  s.U = IntDense::identity(s.m);
  s.Ui = IntDense::identity(s.m);
  s.V = IntDense::identity(s.n);
  s.Vi = IntDense::identity(s.n);

  std::size_t t = 0;
  const std::size_t limit = std::min(s.m, s.n);
  for (; t < limit; ++t) {
    // smallest nonzero entry of the trailing block
    std::size_t pr = s.m, pc = s.n;
    for (std::size_t i = t; i < s.m; ++i)
      for (std::size_t j = t; j < s.n; ++j) {
        const Integer& x = s.a[i][j];
        if (x == 0) continue;
        if (pr == s.m || abs(x) < abs(s.a[pr][pc])) {
          pr = i;
          pc = j;
          if (abs(x) == 1) goto found;
        }
      }
  found:
    if (pr == s.m) break;
    s.swap_rows(t, pr);
    s.swap_cols(t, pc);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < s.m; ++i) {
        if (s.a[i][t] == 0) continue;
        s.add_row(i, t, -floor_div(s.a[i][t], s.a[t][t]), t);
        if (s.a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < s.n; ++j) {
        if (s.a[t][j] == 0) continue;
        s.add_col(j, t, -floor_div(s.a[t][j], s.a[t][t]), t);
        if (s.a[t][j] != 0) clean = false;
      }
      if (!clean) {
        // move a smaller remainder into the pivot position
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < s.m; ++i)
          if (s.a[i][t] != 0 && abs(s.a[i][t]) < abs(s.a[bi][bj])) bi = i, bj = t;
        for (std::size_t j = t + 1; j < s.n; ++j)
          if (s.a[t][j] != 0 && abs(s.a[t][j]) < abs(s.a[bi][bj])) bi = t, bj = j;
        s.swap_rows(t, bi);
        s.swap_cols(t, bj);
        continue;
      }
      // divisibility of the trailing block by the pivot
      std::size_t bad = s.m;
      if (abs(s.a[t][t]) != 1) {
        for (std::size_t i = t + 1; i < s.m && bad == s.m; ++i)
          for (std::size_t j = t + 1; j < s.n; ++j)
            if (s.a[i][j] != 0 && s.a[i][j] % s.a[t][t] != 0) {
              bad = i;
              break;
            }
      }
      if (bad == s.m) break;
      s.add_row(t, bad, 1, t);
    }
    if (s.a[t][t] < 0) s.negate_row(t);
  }

  SmithForm out;
  out.rank = t;
  out.D = IntDense(s.m, s.n);
  out.diagonal.resize(limit);
  for (std::size_t i = 0; i < limit; ++i) {
    out.diagonal[i] = s.a[i][i];
    out.D(i, i) = s.a[i][i];
  }
  out.U = std::move(s.U);
  out.V = std::move(s.V);
  out.U_inverse = std::move(s.Ui);
  out.V_inverse = std::move(s.Vi);
  return out;
}

std::vector<Integer> smith_invariants(const IntMatrix& A) {
  // Unit pivots are peeled off sparsely; the remaining block goes through the dense algorithm.
  std::vector<std::map<std::size_t, Integer>> rows(A.rows());
  std::vector<std::map<std::size_t, bool>> col_index(A.cols());
  for (const auto& [rc, v] : A.entries()) {
    rows[rc.first][rc.second] = v;
    col_index[rc.second][rc.first] = true;
  }
  std::vector<bool> row_alive(A.rows(), true), col_alive(A.cols(), true);
  std::size_t units = 0;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!row_alive[r]) continue;
      std::size_t pc = A.cols();
      for (const auto& [c, v] : rows[r])
        if (v == 1 || v == -1) {
          pc = c;
          break;
        }
      if (pc == A.cols()) continue;
      const Integer pv = rows[r][pc];
      // eliminate column pc from every other live row
      std::vector<std::size_t> others;
      for (const auto& [r2, unused] : col_index[pc])
        if (r2 != r) others.push_back(r2);
      for (std::size_t r2 : others) {
        Integer k = rows[r2][pc] * pv;  // pv = pv^{-1}
        for (const auto& [c, v] : rows[r]) {
          Integer nv = rows[r2][c] - k * v;
          if (nv == 0) {
            rows[r2].erase(c);
            col_index[c].erase(r2);
          } else {
            rows[r2][c] = nv;
            col_index[c][r2] = true;
          }
        }
      }
      // column operations clear the rest of row r without touching other rows
      for (const auto& [c, v] : rows[r]) col_index[c].erase(r);
      rows[r].clear();
      row_alive[r] = false;
      col_alive[pc] = false;
      ++units;
      progress = true;
    }
  }
  std::vector<std::size_t> rmap, cmap;
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (row_alive[r] && !rows[r].empty()) rmap.push_back(r);
  std::vector<std::size_t> cpos(A.cols(), A.cols());
  for (std::size_t c = 0; c < A.cols(); ++c)
    if (col_alive[c] && !col_index[c].empty()) {
      cpos[c] = cmap.size();
      cmap.push_back(c);
    }
  IntMatrix rest(rmap.size(), cmap.size());
  for (std::size_t i = 0; i < rmap.size(); ++i)
    for (const auto& [c, v] : rows[rmap[i]]) rest.set(i, cpos[c], v);
  std::vector<Integer> inv(units, Integer(1));
  if (rest.nonzeros() > 0) {
    SmithForm sf = smith_normal_form(rest);
    for (std::size_t i = 0; i < sf.rank; ++i) inv.push_back(sf.diagonal[i]);
  }
  return inv;
}

Integer determinant(const IntDense& A) {
  if (A.rows != A.cols) throw LinalgError("determinant: matrix is not square");
  const std::size_t n = A.rows;
  if (n == 0) return 1;
  IntDense M = A;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && M(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(M(k, c), M(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = M(i, j) * M(k, k) - M(i, k) * M(k, j);
        mpz_divexact(M(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

IntDense multiply(const IntDense& A, const IntDense& B) {
  if (A.cols != B.rows) throw LinalgError("multiply: dimension mismatch");
  IntDense C(A.rows, B.cols);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t k = 0; k < A.cols; ++k) {
      if (A(i, k) == 0) continue;
      for (std::size_t j = 0; j < B.cols; ++j)
        if (B(k, j) != 0) C(i, j) += A(i, k) * B(k, j);
    }
  return C;
}

std::string AbelianGroupPresentation::to_string() const {
  std::ostringstream os;
  bool first = true;
  if (rank > 0) {
    os << "Z";
    if (rank > 1) os << "^" << rank;
    first = false;
  }
  for (const auto& t : torsion) {
    if (!first) os << " + ";
    os << "Z/" << t.get_str();
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace diffcoh
