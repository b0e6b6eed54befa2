#include <bit>

#include "diffcoh/forms.hpp"

namespace diffcoh {

namespace {

bool same_mask(const PairPtr& a, const PairPtr& b) {
  if (a == b) return true;
  if (a->ambient() != b->ambient()) return false;
  const auto& X = a->ambient();
  for (int d = 0; d <= X->dimension(); ++d)
    for (std::size_t i = 0; i < X->count(d); ++i)
      if (a->in_sub(d, static_cast<int>(i)) != b->in_sub(d, static_cast<int>(i))) return false;
  return true;
}

PairPtr union_base(const PairPtr& a, const PairPtr& b) { return pair_union(a, b); }

}  // namespace

PLForm::PLForm(PairPtr base, CoeffPtr coeffs, int degree)
    : base_(std::move(base)), coeffs_(std::move(coeffs)), degree_(degree) {
  const auto& X = base_->ambient();
  parts_.resize(coeffs_->rank());
  for (auto& per_dim : parts_) {
    per_dim.resize(X->dimension() + 1);
    for (int d = 0; d <= X->dimension(); ++d) {
      per_dim[d].resize(X->count(d));
      for (auto& f : per_dim[d]) f.dim = d;
    }
  }
}

PLForm PLForm::unit(PairPtr base, CoeffPtr coeffs) {
  PLForm f(base, coeffs, 0);
  const int e = f.coeffs_->unit();
  const auto& X = f.base_->ambient();
  if (!f.base_->is_absolute()) throw FormError("unit form: base must be absolute");
  for (int d = 0; d <= X->dimension(); ++d)
    for (auto& lf : f.parts_[e][d]) lf = LocalForm::constant(d, 1);
  return f;
}

LocalForm PLForm::on_simplex(int b, const Simplex& s) const {
  return pullback(parts_[b][s.cell_dim()][s.cell], s.eta);
}

bool PLForm::is_zero() const {
  for (const auto& per_dim : parts_)
    for (const auto& cells : per_dim)
      for (const auto& f : cells)
        if (!f.is_zero()) return false;
  return true;
}

int PLForm::poly_degree() const {
  int d = -1;
  for (const auto& per_dim : parts_)
    for (const auto& cells : per_dim)
      for (const auto& f : cells) d = std::max(d, f.poly_degree());
  return d;
}

std::string PLForm::compatibility_error() const {
  const auto& X = base_->ambient();
  for (int b = 0; b < coeffs_->rank(); ++b) {
    const int r = form_degree(b);
    for (int k = 0; k <= X->dimension(); ++k)
      for (std::size_t c = 0; c < X->count(k); ++c) {
        const int ci = static_cast<int>(c);
        const LocalForm& f = parts_[b][k][c];
        const std::string where = coeffs_->basis_name(b) + ":" + X->cell_name(k, ci);
        if (f.dim != k) return "component on " + where + " has the wrong dimension";
        for (const auto& [mask, p] : f.comps)
          if (std::popcount(mask) != r) return "component on " + where + " has the wrong form degree";
        if (base_->in_sub(k, ci) && !f.is_zero()) return "nonzero on subcomplex cell " + where;
        for (int i = 0; k > 0 && i <= k; ++i)
          if (!(pullback(f, coface(k, i)) == on_simplex(b, X->cell_face(k, ci, i))))
            return "face " + std::to_string(i) + " of " + where + " does not match";
      }
  }
  return "";
}

bool PLForm::is_closed() const { return exterior_d(*this).is_zero(); }

void PLForm::check_compatible(const PLForm& o) const {
  if (!base_ || !o.base_) throw FormError("form: uninitialized operand");
  if (coeffs_ != o.coeffs_ || degree_ != o.degree_ || !same_mask(base_, o.base_))
    throw FormError("form: operands live on different bases or degrees");
}

PLForm& PLForm::operator+=(const PLForm& o) {
  check_compatible(o);
  for (std::size_t b = 0; b < parts_.size(); ++b)
    for (std::size_t d = 0; d < parts_[b].size(); ++d)
      for (std::size_t c = 0; c < parts_[b][d].size(); ++c) parts_[b][d][c] += o.parts_[b][d][c];
  return *this;
}

PLForm PLForm::operator+(const PLForm& o) const {
  PLForm r = *this;
  r += o;
  return r;
}

PLForm PLForm::operator-(const PLForm& o) const { return *this + (-o); }

PLForm PLForm::operator-() const { return Rational(-1) * *this; }

PLForm operator*(const Rational& k, const PLForm& a) {
  PLForm r = a;
  for (auto& per_dim : r.parts_)
    for (auto& cells : per_dim)
      for (auto& f : cells) f = f.scaled(k);
  return r;
}

bool PLForm::operator==(const PLForm& o) const {
  return coeffs_ == o.coeffs_ && degree_ == o.degree_ && same_mask(base_, o.base_) && parts_ == o.parts_;
}

PLForm PLForm::rebase(PairPtr other) const {
  if (other->ambient() != base_->ambient()) throw FormError("rebase: ambient sets differ");
  PLForm r = *this;
  r.base_ = std::move(other);
  const auto& X = r.base_->ambient();
  for (const auto& per_dim : r.parts_)
    for (int d = 0; d <= X->dimension(); ++d)
      for (std::size_t c = 0; c < X->count(d); ++c)
        if (r.base_->in_sub(d, static_cast<int>(c)) && !per_dim[d][c].is_zero())
          throw FormError("rebase: form does not vanish on the new subcomplex");
  return r;
}

PLForm wedge(const PLForm& a, const PLForm& b) {
  if (a.coeffs() != b.coeffs()) throw FormError("wedge: coefficient rings differ");
  const auto& L = a.coeffs();
  PLForm r(union_base(a.base(), b.base()), L, a.degree() + b.degree());
  const auto& X = a.base()->ambient();
  for (int x = 0; x < L->rank(); ++x)
    for (int y = 0; y < L->rank(); ++y)
      for (const auto& term : L->product(x, y))
        for (int d = 0; d <= X->dimension(); ++d)
          for (std::size_t c = 0; c < X->count(d); ++c) {
            const auto& fa = a.local(x, d, static_cast<int>(c));
            const auto& fb = b.local(y, d, static_cast<int>(c));
            if (fa.is_zero() || fb.is_zero()) continue;
            r.local(term.basis, d, static_cast<int>(c)) += wedge(fa, fb).scaled(Rational(term.coefficient));
          }
  return r;
}

PLForm exterior_d(const PLForm& a) {
  PLForm r(a.base(), a.coeffs(), a.degree() + 1);
  const auto& X = a.base()->ambient();
  for (int b = 0; b < a.coeffs()->rank(); ++b)
    for (int d = 0; d <= X->dimension(); ++d)
      for (std::size_t c = 0; c < X->count(d); ++c)
        r.local(b, d, static_cast<int>(c)) = exterior_d(a.local(b, d, static_cast<int>(c)));
  return r;
}

PLForm pullback(const SimplicialMap& f, const PLForm& a, PairPtr source) {
  if (f.target() != a.base()->ambient() || f.source() != source->ambient())
    throw FormError("pullback: map does not match the form or the source pair");
  if (!maps_pair(f, source, a.base())) throw FormError("pullback: map does not carry the subcomplex into the target subcomplex");
  PLForm r(source, a.coeffs(), a.degree());
  const auto& X = source->ambient();
  for (int b = 0; b < a.coeffs()->rank(); ++b)
    for (int d = 0; d <= X->dimension(); ++d)
      for (std::size_t c = 0; c < X->count(d); ++c)
        r.local(b, d, static_cast<int>(c)) = a.on_simplex(b, f.image(d, static_cast<int>(c)));
  return r;
}

Cochain deRham(const PLForm& a) {
  Cochain r(a.base(), a.coeffs(), a.degree());
  const auto& X = a.base()->ambient();
  for (int b = 0; b < a.coeffs()->rank(); ++b) {
    const int k = a.form_degree(b);
    if (k < 0 || k > X->dimension()) continue;
    for (std::size_t c = 0; c < X->count(k); ++c)
      r.set(b, static_cast<int>(c), integrate_simplex(a.local(b, k, static_cast<int>(c))));
  }
  return r;
}

PLForm fiber_integrate(const ProductPtr& P, int edge, const PLForm& a, PairPtr target) {
  if (a.base()->ambient() != P->set() || target->ambient() != P->right())
    throw FormError("fiber_integrate: form or target does not match the product");
  PLForm r(target, a.coeffs(), a.degree() - 1);
  const auto& X = P->right();
  for (int b = 0; b < a.coeffs()->rank(); ++b)
    for (int k = 0; k <= X->dimension(); ++k)
      for (std::size_t x = 0; x < X->count(k); ++x) {
        LocalForm out;
        out.dim = k;
        // prism piece j has vertices (0,0)..(0,j),(1,j)..(1,k)
        for (int j = 0; j <= k; ++j) {
          Monotone e1(k + 2), e2(k + 2);
          for (int t = 0; t <= k + 1; ++t) {
            e1[t] = t <= j ? 0 : 1;
            e2[t] = t <= j ? t : t - 1;
          }
          const Simplex piece = P->pair(Simplex{e1, edge}, Simplex{e2, static_cast<int>(x)});
          const LocalForm w = a.on_simplex(b, piece);
          if (w.is_zero()) continue;
          // coordinates (s, y_1..y_k) are variables 0..k
          auto tail = [&](int from) {
            Poly s;
            if (from == 0) return Poly(1);
            for (int m = from; m <= k; ++m) s += Poly::variable(m);
            return s;
          };
          std::vector<Poly> images(k + 1);
          for (int i = 1; i <= k + 1; ++i) {
            if (i < j)
              images[i - 1] = Poly::variable(i);
            else if (i == j)
              images[i - 1] = tail(j) - Poly::variable(0);
            else if (i == j + 1)
              images[i - 1] = Poly::variable(0) - tail(j + 1);
            else
              images[i - 1] = Poly::variable(i - 1);
          }
          const LocalForm ws = substitute(w, images, k + 1);
          // limits S_j and S_{j+1} in the output coordinates y_m -> variable m-1
          std::vector<Poly> shift(k + 1);
          for (int m = 1; m <= k; ++m) shift[m] = Poly::variable(m - 1);
          auto limit = [&](int from) {
            if (from == 0) return Poly(1);
            Poly s;
            for (int m = from; m <= k; ++m) s += Poly::variable(m - 1);
            return s;
          };
          for (const auto& [mask, p] : ws.comps) {
            if (!(mask & 1u)) continue;
            const Poly Q = p.antiderivative(0);
            shift[0] = limit(j);
            Poly upper = Q.substitute(shift);
            shift[0] = limit(j + 1);
            Poly lower = Q.substitute(shift);
            out.add(mask >> 1, upper - lower);
          }
        }
        out.dim = k;
        r.local(b, k, static_cast<int>(x)) = out;
      }
  for (int b = 0; b < a.coeffs()->rank(); ++b)
    for (int k = 0; k <= X->dimension(); ++k)
      for (std::size_t x = 0; x < X->count(k); ++x)
        if (target->in_sub(k, static_cast<int>(x)) && !r.local(b, k, static_cast<int>(x)).is_zero())
          throw FormError("fiber_integrate: result does not vanish on the target subcomplex");
  return r;
}

}  // namespace diffcoh
