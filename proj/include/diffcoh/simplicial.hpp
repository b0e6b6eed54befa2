#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace diffcoh {

class SimplicialError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A monotone map [k] -> [n], stored as its list of values.
using Monotone = std::vector<int>;

/// x = y∘eta with y a nondegenerate cell of dimension eta.back() and eta a
/// monotone surjection. The simplex is nondegenerate iff eta is the identity.
struct Simplex {
  Monotone eta{0};
  int cell = 0;

  int dim() const { return static_cast<int>(eta.size()) - 1; }
  int cell_dim() const { return eta.back(); }
  bool degenerate() const { return eta.back() != dim(); }

  auto operator<=>(const Simplex&) const = default;
  bool operator==(const Simplex&) const = default;
};

Monotone identity_map(int n);
Simplex nondegenerate(int dim, int cell);
Monotone compose(const Monotone& outer, const Monotone& inner);  // outer∘inner
/// The coface [n-1] -> [n] skipping i.
Monotone coface(int n, int i);
/// The codegeneracy [n+1] -> [n] hitting i twice.
Monotone codegeneracy(int n, int i);

/// Canonical degeneracy word s_{i_k}...s_{i_1} (i_k > ... > i_1) as the digit string "i_k...i_1".
std::string degeneracy_word(const Monotone& eta);
/// Parses any degeneracy word applied to a cell of dimension cell_dim.
Monotone surjection_from_word(const std::string& word, int cell_dim);

class SimplicialSet {
 public:
  explicit SimplicialSet(std::string name = "") : name_(std::move(name)) {}

  /// Adds a nondegenerate cell. `faces` has dim+1 entries (none for vertices)
  /// and must satisfy the simplicial identities against existing cells.
  int add_cell(int dim, const std::string& name, std::vector<Simplex> faces);
  void set_basepoint(int vertex);

  const std::string& name() const { return name_; }
  void rename(std::string n) { name_ = std::move(n); }
  int dimension() const { return static_cast<int>(cells_.size()) - 1; }
  std::size_t count(int dim) const { return dim >= 0 && dim <= dimension() ? cells_[dim].size() : 0; }
  std::size_t total_cells() const;
  const std::string& cell_name(int dim, int index) const { return cells_.at(dim).at(index).name; }
  std::optional<std::pair<int, int>> find(const std::string& name) const;
  std::optional<int> basepoint() const { return basepoint_; }

  const Simplex& cell_face(int dim, int index, int i) const { return cells_[dim][index].faces[i]; }
  /// Front p-face and back q-face of a nondegenerate cell.
  const Simplex& front(int dim, int index, int p) const { return cells_[dim][index].front[p]; }
  const Simplex& back(int dim, int index, int q) const { return cells_[dim][index].back[q]; }
  /// Vertex j of a nondegenerate cell.
  int vertex(int dim, int index, int j) const { return cells_[dim][index].vertices[j]; }

  /// x∘theta for a monotone theta: [k] -> [dim x].
  Simplex apply(const Simplex& x, const Monotone& theta) const;
  Simplex face(const Simplex& x, int i) const;
  Simplex degeneracy(const Simplex& x, int i) const;

  std::vector<int> euler_counts() const;

 private:
  struct Cell {
    std::string name;
    std::vector<Simplex> faces;
    std::vector<Simplex> front;
    std::vector<Simplex> back;
    std::vector<int> vertices;
  };
  Simplex apply_to_cell(int cell_dim, int cell, const Monotone& phi) const;

  std::string name_;
  std::vector<std::vector<Cell>> cells_;
  std::map<std::string, std::pair<int, int>> by_name_;
  std::optional<int> basepoint_;
};

using SSetPtr = std::shared_ptr<const SimplicialSet>;

class SimplicialMap {
 public:
  SimplicialMap() = default;
  /// images[d][i] is the image of nondegenerate cell (d, i). Validated against faces.
  SimplicialMap(SSetPtr source, SSetPtr target, std::vector<std::vector<Simplex>> images);

  static SimplicialMap identity(SSetPtr X);

  const SSetPtr& source() const { return source_; }
  const SSetPtr& target() const { return target_; }
  const Simplex& image(int dim, int index) const { return images_[dim][index]; }
  Simplex apply(const Simplex& x) const;

  bool preserves_basepoint() const;
  bool operator==(const SimplicialMap& other) const;

 private:
  SSetPtr source_;
  SSetPtr target_;
  std::vector<std::vector<Simplex>> images_;
};

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f);  // g∘f

/// Product X×Y with its nondegenerate cells (eta1 x, eta2 y), J(eta1) ∩ J(eta2) = ∅.
class Product {
 public:
  Product(SSetPtr left, SSetPtr right);

  const SSetPtr& set() const { return set_; }
  const SSetPtr& left() const { return left_; }
  const SSetPtr& right() const { return right_; }
  const SimplicialMap& pr1() const { return pr1_; }
  const SimplicialMap& pr2() const { return pr2_; }
  const std::pair<Simplex, Simplex>& components(int dim, int index) const { return components_[dim][index]; }
  /// The product simplex with the given components (equal dimensions).
  Simplex pair(const Simplex& a, const Simplex& b) const;

 private:
  SSetPtr left_, right_, set_;
  std::vector<std::vector<std::pair<Simplex, Simplex>>> components_;
  std::vector<std::map<std::pair<Simplex, Simplex>, int>> lookup_;
  SimplicialMap pr1_, pr2_;
};

using ProductPtr = std::shared_ptr<const Product>;

ProductPtr product(SSetPtr X, SSetPtr Y);
/// <f, g>: Z -> X×Y.
SimplicialMap pairing(const ProductPtr& P, const SimplicialMap& f, const SimplicialMap& g);
/// f×g: X×Y -> X'×Y'.
SimplicialMap product_map(const ProductPtr& src, const ProductPtr& dst, const SimplicialMap& f,
                          const SimplicialMap& g);
SimplicialMap diagonal(const ProductPtr& XX);
/// (x, y) -> (y, x) from P = X×Y to Q = Y×X.
SimplicialMap twist(const ProductPtr& P, const ProductPtr& Q);
/// ((a, b), c) -> (a, (b, c)) from (A×B)×C to A×(B×C).
SimplicialMap associator(const ProductPtr& AB, const ProductPtr& AB_C, const ProductPtr& BC,
                         const ProductPtr& A_BC);
/// The constant map X -> Y at a vertex of Y.
SimplicialMap constant_map(SSetPtr X, SSetPtr Y, int vertex);

struct Cylinder {
  ProductPtr product;  // Δ¹ × X
  SimplicialMap i0, i1, pr;
};

Cylinder cylinder(SSetPtr X);
/// Δ¹×X for any interval-like first factor A with two endpoint vertices (Δ¹ or circle).
Cylinder cylinder_over(SSetPtr A, SSetPtr X, int vertex0, int vertex1);

/// A subcomplex A ⊂ X given by a face-closed set of nondegenerate cells.
class Pair {
 public:
  Pair(SSetPtr ambient, std::vector<std::vector<bool>> in_sub);
  static std::shared_ptr<const Pair> absolute(SSetPtr X);
  static std::shared_ptr<const Pair> from_names(SSetPtr X, const std::vector<std::string>& names);

  const SSetPtr& ambient() const { return ambient_; }
  const SSetPtr& sub() const { return sub_; }
  const SimplicialMap& inclusion() const { return inclusion_; }
  bool in_sub(int dim, int index) const { return in_sub_[dim][index]; }
  bool is_absolute() const;
  std::size_t relative_count(int dim) const { return dim >= 0 && dim < (int)relative_.size() ? relative_[dim].size() : 0; }
  /// Ambient indices of cells not in the subcomplex.
  const std::vector<int>& relative_cells(int dim) const { return relative_[dim]; }
  /// Index of an ambient cell in the subcomplex, or -1.
  int sub_index(int dim, int index) const { return sub_index_[dim][index]; }
  std::vector<std::string> sub_names() const;

 private:
  SSetPtr ambient_, sub_;
  std::vector<std::vector<bool>> in_sub_;
  std::vector<std::vector<int>> relative_;
  std::vector<std::vector<int>> sub_index_;
  SimplicialMap inclusion_;
};

using PairPtr = std::shared_ptr<const Pair>;

/// The shared pair with this subcomplex mask; equal masks give the same pointer.
PairPtr intern_pair(SSetPtr X, std::vector<std::vector<bool>> mask);
/// (X, A ∪ B).
PairPtr pair_union(const PairPtr& a, const PairPtr& b);
/// (X×Y, A×Y ∪ X×B).
PairPtr product_pair(const ProductPtr& P, const PairPtr& XA, const PairPtr& YB);
/// f: X -> Y carrying A into B.
bool maps_pair(const SimplicialMap& f, const PairPtr& XA, const PairPtr& YB);

namespace builtins {

SSetPtr point();
SSetPtr simplex(int n);
SSetPtr simplex_boundary(int n);
SSetPtr circle();          // one vertex v, one edge e
SSetPtr circle_subdivided();  // two vertices, two edges
SSetPtr torus();           // circle × circle
SSetPtr rp2();
SSetPtr klein();
/// Quotient Δ¹ -> circle identifying the endpoints.
SimplicialMap interval_to_circle();

struct CirclePair {
  ProductPtr product;  // circle × M
  PairPtr pair;        // (S¹×M, 1×M)
};
CirclePair circle_pair(SSetPtr M);

/// Named lookup used by the CLI: point, simplex<n>, boundary<n>, circle, circle2, torus, rp2, klein.
SSetPtr by_name(const std::string& name);
/// Named pairs: "simplex2/boundary2", "torus/circle" plus any absolute complex name.
PairPtr pair_by_name(const std::string& name);

}  // namespace builtins

}  // namespace diffcoh
