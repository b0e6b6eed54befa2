#include <bit>
#include <sstream>

#include "diffcoh/forms.hpp"

namespace diffcoh {

namespace {

// Sign of dt_I ∧ dt_J, zero if they overlap.
int wedge_sign(std::uint32_t I, std::uint32_t J) {
  if (I & J) return 0;
  int swaps = 0;
  for (std::uint32_t rest = J; rest; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    swaps += std::popcount(I >> (j + 1));
  }
  return swaps % 2 == 0 ? 1 : -1;
}

}  // namespace

LocalForm LocalForm::constant(int dim, const Rational& c) {
  LocalForm f;
  f.dim = dim;
  f.add(0, Poly(c));
  return f;
}

int LocalForm::poly_degree() const {
  int d = -1;
  for (const auto& [mask, p] : comps) d = std::max(d, p.degree());
  return d;
}

void LocalForm::add(std::uint32_t mask, const Poly& p) {
  if (p.is_zero()) return;
  auto [it, inserted] = comps.try_emplace(mask, p);
  if (!inserted) {
    it->second += p;
    if (it->second.is_zero()) comps.erase(it);
  }
}

LocalForm& LocalForm::operator+=(const LocalForm& o) {
  if (o.dim != dim && !o.comps.empty() && !comps.empty()) throw FormError("local form: dimension mismatch");
  if (comps.empty()) dim = o.dim;
  for (const auto& [mask, p] : o.comps) add(mask, p);
  return *this;
}

LocalForm LocalForm::operator+(const LocalForm& o) const {
  LocalForm r = *this;
  r += o;
  return r;
}

LocalForm LocalForm::operator-(const LocalForm& o) const { return *this + o.scaled(-1); }

LocalForm LocalForm::scaled(const Rational& k) const {
  LocalForm r;
  r.dim = dim;
  if (k == 0) return r;
  for (const auto& [mask, p] : comps) r.comps[mask] = p.scaled(k);
  return r;
}

LocalForm LocalForm::part(int r) const {
  LocalForm out;
  out.dim = dim;
  for (const auto& [mask, p] : comps)
    if (std::popcount(mask) == r) out.comps[mask] = p;
  return out;
}

LocalForm wedge(const LocalForm& a, const LocalForm& b) {
  if (a.dim != b.dim) throw FormError("wedge: dimension mismatch");
  LocalForm r;
  r.dim = a.dim;
  for (const auto& [I, p] : a.comps)
    for (const auto& [J, q] : b.comps) {
      const int s = wedge_sign(I, J);
      if (s == 0) continue;
      r.add(I | J, s > 0 ? p * q : -(p * q));
    }
  return r;
}

LocalForm exterior_d(const LocalForm& a) {
  LocalForm r;
  r.dim = a.dim;
  for (const auto& [I, p] : a.comps)
    for (int j = 0; j < a.dim; ++j) {
      const std::uint32_t bit = 1u << j;
      if (I & bit) continue;
      Poly dp = p.derivative(j);
      if (dp.is_zero()) continue;
      r.add(I | bit, wedge_sign(bit, I) > 0 ? dp : -dp);
    }
  return r;
}

LocalForm substitute(const LocalForm& a, const std::vector<Poly>& images, int new_dim) {
  if (static_cast<int>(images.size()) != a.dim) throw FormError("substitute: wrong number of images");
  // d(image_i) as a 1-form in the new coordinates
  std::vector<LocalForm> differentials(a.dim);
  for (int i = 0; i < a.dim; ++i) {
    differentials[i].dim = new_dim;
    for (const auto& [m, c] : images[i].terms()) {
      if (total_degree(m) > 1) throw FormError("substitute: images must be affine");
      if (m == 0) continue;
      for (int v = 0; v < new_dim; ++v)
        if (exponent(m, v) == 1) differentials[i].add(1u << v, Poly(c));
    }
  }
  LocalForm r;
  r.dim = new_dim;
  for (const auto& [I, p] : a.comps) {
    LocalForm term;
    term.dim = new_dim;
    term.add(0, p.substitute(images));
    for (std::uint32_t rest = I; rest; rest &= rest - 1) term = wedge(term, differentials[std::countr_zero(rest)]);
    r += term;
  }
  r.dim = new_dim;
  return r;
}

LocalForm pullback(const LocalForm& a, const Monotone& theta) {
  const int m = static_cast<int>(theta.size()) - 1;
  std::vector<Poly> images(a.dim);
  Poly s0(1);
  for (int v = 0; v < m; ++v) s0 -= Poly::variable(v);
  for (int i = 0; i <= m; ++i) {
    const int j = theta[i];
    if (j == 0) continue;
    images[j - 1] += i == 0 ? s0 : Poly::variable(i - 1);
  }
  return substitute(a, images, m);
}

Rational integrate_simplex(const LocalForm& a) {
  const int k = a.dim;
  auto it = a.comps.find(k == 0 ? 0u : (1u << k) - 1);
  if (it == a.comps.end()) return 0;
  Rational total = 0;
  for (const auto& [m, c] : it->second.terms()) {
    Integer num = 1, den = 1;
    int sum = 0;
    for (int v = 0; v < k; ++v) {
      const int e = exponent(m, v);
      Integer f;
      mpz_fac_ui(f.get_mpz_t(), e);
      num *= f;
      sum += e;
    }
    mpz_fac_ui(den.get_mpz_t(), sum + k);
    Rational q(num, den);
    q.canonicalize();
    total += c * q;
  }
  return total;
}

LocalForm cone_homotopy(const LocalForm& a) {
  LocalForm r;
  r.dim = a.dim;
  for (const auto& [I, p] : a.comps) {
    if (I == 0) continue;
    int pos = 0;
    for (std::uint32_t rest = I; rest; rest &= rest - 1, ++pos) {
      const int v = std::countr_zero(rest);
      Poly q;
      for (const auto& [m, c] : p.terms()) {
        const int weight = total_degree(m) + std::popcount(I);
        q.add_term(with_exponent(m, v, exponent(m, v) + 1), (pos % 2 == 0 ? c : Rational(-c)) / Rational(weight));
      }
      r.add(I & ~(1u << v), q);
    }
  }
  return r;
}

std::string to_string(const LocalForm& a) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [I, p] : a.comps)
    for (const auto& [m, c] : p.terms()) {
      if (!first) os << " + ";
      first = false;
      os << c.get_str();
      for (int v = 0; v < 8; ++v) {
        const int e = exponent(m, v);
        if (e == 0) continue;
        os << "*t" << (v + 1);
        if (e > 1) os << "^" << e;
      }
      for (std::uint32_t rest = I; rest; rest &= rest - 1) os << "*dt" << (std::countr_zero(rest) + 1);
    }
  if (first) os << "0";
  return os.str();
}

LocalForm parse_local_form(const std::string& text, int dim) {
  std::string s;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == ' ') continue;
    // binary minus becomes "+-"
    if (text[i] == '-' && !s.empty() && s.back() != '+' && s.back() != '*') s.push_back('+');
    s.push_back(text[i]);
  }
  LocalForm total;
  total.dim = dim;
  if (s.empty() || s == "0") return total;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find('+', start);
    if (end == std::string::npos) end = s.size();
    const std::string term = s.substr(start, end - start);
    if (term.empty()) throw FormError("form literal: empty term in '" + text + "'");
    LocalForm acc = LocalForm::constant(dim, 1);
    std::size_t fs = 0;
    while (fs <= term.size()) {
      std::size_t fe = term.find('*', fs);
      if (fe == std::string::npos) fe = term.size();
      std::string f = term.substr(fs, fe - fs);
      bool negate = false;
      while (!f.empty() && f[0] == '-') {
        negate = !negate;
        f.erase(0, 1);
      }
      LocalForm factor;
      factor.dim = dim;
      auto var_index = [&](const std::string& digits) {
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
          throw FormError("form literal: bad factor '" + f + "'");
        int i = std::stoi(digits);
        if (i > dim) throw FormError("form literal: coordinate t" + digits + " exceeds the simplex dimension");
        return i;
      };
      if (f.rfind("dt", 0) == 0) {
        const int i = var_index(f.substr(2));
        if (i == 0)
          for (int v = 0; v < dim; ++v) factor.add(1u << v, Poly(-1));
        else
          factor.add(1u << (i - 1), Poly(1));
      } else if (f.rfind("t", 0) == 0) {
        const auto caret = f.find('^');
        const int i = var_index(f.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
        const int e = caret == std::string::npos ? 1 : std::stoi(f.substr(caret + 1));
        Poly base;
        if (i == 0) {
          base = Poly(1);
          for (int v = 0; v < dim; ++v) base -= Poly::variable(v);
        } else {
          base = Poly::variable(i - 1);
        }
        Poly pw(1);
        for (int k = 0; k < e; ++k) pw = pw * base;
        factor.add(0, pw);
      } else {
        factor = LocalForm::constant(dim, parse_rational(f));
      }
      if (negate) factor = factor.scaled(-1);
      acc = wedge(acc, factor);
      if (fe == term.size()) break;
      fs = fe + 1;
    }
    total += acc;
    if (end == s.size()) break;
    start = end + 1;
  }
  total.dim = dim;
  return total;
}

}  // namespace diffcoh
