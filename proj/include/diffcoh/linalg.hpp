#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "diffcoh/scalar.hpp"

namespace diffcoh {

class LinalgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class T>
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<T> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  T& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

using IntDense = DenseMatrix<Integer>;
using RatDense = DenseMatrix<Rational>;

/// Coordinate-format exact matrix. Zero entries are never stored.
template <class T>
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void set(std::size_t r, std::size_t c, const T& v) {
    check(r, c);
    if (v == 0)
      entries_.erase({r, c});
    else
      entries_[{r, c}] = v;
  }
  void add(std::size_t r, std::size_t c, const T& v) {
    check(r, c);
    if (v == 0) return;
    auto [it, inserted] = entries_.try_emplace({r, c}, v);
    if (!inserted) {
      it->second += v;
      if (it->second == 0) entries_.erase(it);
    }
  }
  T get(std::size_t r, std::size_t c) const {
    auto it = entries_.find({r, c});
    return it == entries_.end() ? T(0) : it->second;
  }
  const std::map<std::pair<std::size_t, std::size_t>, T>& entries() const { return entries_; }
  std::size_t nonzeros() const { return entries_.size(); }

  DenseMatrix<T> to_dense() const {
    DenseMatrix<T> d(rows_, cols_);
    for (const auto& [rc, v] : entries_) d(rc.first, rc.second) = v;
    return d;
  }

  std::vector<T> multiply(const std::vector<T>& x) const {
    if (x.size() != cols_) throw LinalgError("SparseMatrix::multiply: dimension mismatch");
    std::vector<T> y(rows_);
    for (const auto& [rc, v] : entries_) y[rc.first] += v * x[rc.second];
    return y;
  }

  /// Writes "rows cols nnz" followed by one "r c value" line per entry.
  void dump(std::ostream& os) const {
    os << rows_ << ' ' << cols_ << ' ' << entries_.size() << '\n';
    for (const auto& [rc, v] : entries_) os << rc.first << ' ' << rc.second << ' ' << v << '\n';
  }

 private:
  void check(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw LinalgError("SparseMatrix: index out of bounds");
  }
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::map<std::pair<std::size_t, std::size_t>, T> entries_;
};

using IntMatrix = SparseMatrix<Integer>;
using RatMatrix = SparseMatrix<Rational>;

/// U * A * V = D with D diagonal (successive divisibility, nonnegative) and U, V unimodular.
struct SmithForm {
  IntDense D;
  IntDense U;
  IntDense V;
  IntDense U_inverse;
  IntDense V_inverse;
  std::vector<Integer> diagonal;  // first `rank` entries are the nonzero invariant factors
  std::size_t rank = 0;
};

SmithForm smith_normal_form(const IntMatrix& A);

/// Nonzero invariant factors only, in divisibility order. Cheap on sparse coboundary matrices.
std::vector<Integer> smith_invariants(const IntMatrix& A);

struct AbelianGroupPresentation {
  std::size_t rank = 0;
  std::vector<Integer> torsion;  // invariant factors > 1, each dividing the next

  std::string to_string() const;
  bool operator==(const AbelianGroupPresentation&) const = default;
};

enum class Ring { Integer, Rational };

/// Witness that A x = b has no solution over the requested ring: y^T A is integral
/// (zero for the rational ring) while y^T b is not.
struct InfeasibilityCertificate {
  RatVector y;
};

struct AffineSolution {
  bool feasible = false;
  RatVector x;
  std::vector<RatVector> kernel;  // lattice basis over Z, vector-space basis over Q
  std::optional<InfeasibilityCertificate> certificate;
};

AffineSolution solve_affine(const RatMatrix& A, const RatVector& b, Ring ring);

/// Checks a certificate produced by solve_affine against the system it refutes.
bool verify_certificate(const RatMatrix& A, const RatVector& b, Ring ring,
                        const InfeasibilityCertificate& cert);

/// Incremental sparse row echelon form over Q. Rows may carry their history
/// as a combination of inserted rows.
class RowEchelon {
 public:
  using Row = std::map<std::size_t, Rational>;

  explicit RowEchelon(std::size_t cols, bool track_history = false)
      : cols_(cols), track_(track_history) {}

  /// Stores the reduction of `row`; returns its leading column, or nullopt if it was
  /// dependent. With history tracking on, `dependency` then receives coefficients h
  /// over insertion indices with sum h_i row_i = 0.
  std::optional<std::size_t> insert(const Row& row, Row* dependency = nullptr);
  /// Full reduction against the stored pivots. `history` starts as the caller's
  /// combination for `row` and is updated alongside it.
  Row reduce(Row row, Row* history = nullptr) const;
  /// History of the pivot row at column c (coefficients over insertion indices).
  const Row& pivot_history(std::size_t c) const { return pivots_.at(c).history; }
  std::size_t inserted() const { return inserted_; }

  std::size_t rank() const { return pivots_.size(); }
  std::size_t cols() const { return cols_; }
  bool is_pivot(std::size_t c) const { return pivots_.count(c) > 0; }

  /// Treats column `unknowns` of each stored row as a right-hand side and returns the
  /// solution with free variables set to zero. Requires no pivot at or beyond `unknowns`.
  RatVector back_substitute(std::size_t unknowns) const;
  /// Kernel basis of the stored rows restricted to the first `unknowns` columns.
  std::vector<RatVector> kernel(std::size_t unknowns) const;

 private:
  struct Pivot {
    Row row;  // leading entry normalized to 1
    Row history;
  };
  std::size_t cols_;
  bool track_;
  std::size_t inserted_ = 0;
  std::map<std::size_t, Pivot> pivots_;
};

/// Basis of {y : y^T A = 0} over Q.
std::vector<RatVector> left_null_space(const RatMatrix& A);

/// Rank over Q.
std::size_t rational_rank(const RatMatrix& A);

RatMatrix to_rational(const IntMatrix& A);
IntMatrix to_integer(const RatMatrix& A);  // throws if some entry is not integral

/// Bareiss determinant, exact.
Integer determinant(const IntDense& A);

IntDense multiply(const IntDense& A, const IntDense& B);

}  // namespace diffcoh
