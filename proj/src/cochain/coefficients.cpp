#include <map>
#include <mutex>
#include <regex>

#include "diffcoh/cochain.hpp"

namespace diffcoh {

GradedCoefficients::GradedCoefficients(std::string name, std::vector<std::string> basis, std::vector<int> degrees,
                                       int unit, std::vector<std::vector<std::vector<Term>>> products)
    : name_(std::move(name)),
      names_(std::move(basis)),
      degrees_(std::move(degrees)),
      unit_(unit),
      products_(std::move(products)) {
  validate();
}

void GradedCoefficients::validate() const {
  const int r = rank();
  if (r == 0 || static_cast<int>(degrees_.size()) != r) throw CochainError("coefficients: empty or inconsistent basis");
  if (unit_ < 0 || unit_ >= r || degrees_[unit_] != 0) throw CochainError("coefficients: unit must be a degree-0 basis element");
  for (int d : degrees_)
    if (d % 2 != 0) throw CochainError("coefficients: basis degrees must be even");
  if (static_cast<int>(products_.size()) != r) throw CochainError("coefficients: product table has wrong size");
  for (int a = 0; a < r; ++a) {
    if (static_cast<int>(products_[a].size()) != r) throw CochainError("coefficients: product table has wrong size");
    for (int b = 0; b < r; ++b)
      for (const auto& t : products_[a][b])
        if (t.basis < 0 || t.basis >= r || degrees_[t.basis] != degrees_[a] + degrees_[b])
          throw CochainError("coefficients: product " + names_[a] + "*" + names_[b] + " is not degree preserving");
  }
  auto as_vector = [&](const std::vector<Term>& ts) {
    std::vector<Integer> v(r);
    for (const auto& t : ts) v[t.basis] += t.coefficient;
    return v;
  };
  for (int a = 0; a < r; ++a) {
    std::vector<Integer> e(r);
    e[a] = 1;
    if (as_vector(products_[unit_][a]) != e || as_vector(products_[a][unit_]) != e)
      throw CochainError("coefficients: unit law fails for " + names_[a]);
    for (int b = 0; b < r; ++b) {
      if (as_vector(products_[a][b]) != as_vector(products_[b][a]))
        throw CochainError("coefficients: product is not commutative on " + names_[a] + ", " + names_[b]);
      for (int c = 0; c < r; ++c) {
        std::vector<Integer> left(r), right(r);
        for (const auto& t : products_[a][b])
          for (const auto& s : products_[t.basis][c]) left[s.basis] += t.coefficient * s.coefficient;
        for (const auto& t : products_[b][c])
          for (const auto& s : products_[a][t.basis]) right[s.basis] += t.coefficient * s.coefficient;
        if (left != right) throw CochainError("coefficients: product is not associative");
      }
    }
  }
}

int GradedCoefficients::find(const std::string& basis) const {
  for (int b = 0; b < rank(); ++b)
    if (names_[b] == basis) return b;
  throw CochainError("coefficients: unknown basis element '" + basis + "'");
}

namespace {

// One shared instance per ring, so pointer comparison is ring equality.
CoeffPtr intern(CoeffPtr L) {
  static std::mutex mu;
  static std::map<std::string, CoeffPtr> memo;
  std::lock_guard<std::mutex> lock(mu);
  return memo.emplace(L->to_json().dump(), L).first->second;
}

}  // namespace

CoeffPtr GradedCoefficients::integers() {
  static const CoeffPtr Z = intern(std::make_shared<const GradedCoefficients>(
      "Z", std::vector<std::string>{"1"}, std::vector<int>{0}, 0,
      std::vector<std::vector<std::vector<Term>>>{{{Term{0, Integer(1)}}}}));
  return Z;
}

CoeffPtr GradedCoefficients::truncated_polynomial(int k, int degree) {
  if (k < 1) throw CochainError("coefficients: truncation order must be positive");
  std::vector<std::string> names;
  std::vector<int> degrees;
  for (int i = 0; i < k; ++i) {
    names.push_back(i == 0 ? "1" : i == 1 ? "u" : "u^" + std::to_string(i));
    degrees.push_back(i * degree);
  }
  std::vector<std::vector<std::vector<Term>>> prod(k, std::vector<std::vector<Term>>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i + j < k) prod[i][j].push_back(Term{i + j, Integer(1)});
  const std::string name = "Z[u]/(u^" + std::to_string(k) + "),|u|=" + std::to_string(degree);
  return intern(std::make_shared<const GradedCoefficients>(name, names, degrees, 0, prod));
}

CoeffPtr GradedCoefficients::from_json(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "Z") return integers();
    static const std::regex poly(R"(Z\[u\]/\(u\^(\d+)\),\|u\|=(-?\d+))");
    std::smatch m;
    if (std::regex_match(s, m, poly)) return truncated_polynomial(std::stoi(m[1]), std::stoi(m[2]));
    throw CochainError("coefficients: unknown shorthand '" + s + "'");
  }
  if (!j.is_object() || !j.contains("basis")) throw CochainError("coefficients: expected a string or an object with \"basis\"");
  std::vector<std::string> names;
  std::vector<int> degrees;
  for (const auto& b : j["basis"]) {
    names.push_back(b.at("name").get<std::string>());
    degrees.push_back(b.at("degree").get<int>());
  }
  const int r = static_cast<int>(names.size());
  auto index = [&](const std::string& n) {
    for (int i = 0; i < r; ++i)
      if (names[i] == n) return i;
    throw CochainError("coefficients: unknown basis element '" + n + "'");
  };
  const int unit = index(j.value("unit", std::string("1")));
  std::vector<std::vector<std::vector<Term>>> prod(r, std::vector<std::vector<Term>>(r));
  for (int b = 0; b < r; ++b) {
    prod[unit][b] = {Term{b, Integer(1)}};
    prod[b][unit] = {Term{b, Integer(1)}};
  }
  if (j.contains("products"))
    for (const auto& entry : j["products"]) {
      const int a = index(entry.at(0).get<std::string>()), b = index(entry.at(1).get<std::string>());
      std::vector<Term> terms;
      for (const auto& t : entry.at(2)) terms.push_back(Term{index(t.at(0).get<std::string>()), Integer(t.at(1).get<long>())});
      prod[a][b] = terms;
      prod[b][a] = terms;
    }
  return intern(std::make_shared<const GradedCoefficients>(j.value("name", std::string("custom")), names, degrees, unit, prod));
}

Json GradedCoefficients::to_json() const {
  Json out = Json::object();
  out["name"] = name_;
  Json basis = Json::array();
  for (int b = 0; b < rank(); ++b) basis.push_back(Json{{"name", names_[b]}, {"degree", degrees_[b]}});
  out["basis"] = basis;
  out["unit"] = names_[unit_];
  Json prods = Json::array();
  for (int a = 0; a < rank(); ++a)
    for (int b = a; b < rank(); ++b) {
      if (a == unit_ || b == unit_ || products_[a][b].empty()) continue;
      Json terms = Json::array();
      for (const auto& t : products_[a][b]) terms.push_back(Json::array({names_[t.basis], t.coefficient.get_si()}));
      prods.push_back(Json::array({names_[a], names_[b], terms}));
    }
  out["products"] = prods;
  return out;
}

}  // namespace diffcoh
