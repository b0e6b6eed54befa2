#include <functional>
#include <set>

#include "doctest.h"

#include "diffcoh/presentation.hpp"
#include "diffcoh/simplicial.hpp"

using namespace diffcoh;
namespace bi = diffcoh::builtins;

namespace {

long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Nondegenerate k-cells of X×Y: pairs of cells with disjoint degeneracy sets.
std::vector<long> expected_product_counts(const SimplicialSet& X, const SimplicialSet& Y) {
  std::vector<long> out(X.dimension() + Y.dimension() + 1, 0);
  for (int p = 0; p <= X.dimension(); ++p)
    for (int q = 0; q <= Y.dimension(); ++q)
      for (int k = std::max(p, q); k <= p + q; ++k)
        out[k] += static_cast<long>(X.count(p) * Y.count(q)) * binom(k, k - p) * binom(p, k - q);
  return out;
}

std::vector<long> counts(const SimplicialSet& X) {
  std::vector<long> out;
  for (int d = 0; d <= X.dimension(); ++d) out.push_back(static_cast<long>(X.count(d)));
  return out;
}

void all_monotone(int k, int n, std::vector<Monotone>& out) {
  Monotone cur(k + 1, 0);
  std::function<void(int, int)> rec = [&](int pos, int lo) {
    if (pos > k) {
      out.push_back(cur);
      return;
    }
    for (int v = lo; v <= n; ++v) {
      cur[pos] = v;
      rec(pos + 1, v);
    }
  };
  rec(0, 0);
}

// x∘(a∘b) = (x∘a)∘b for all simplices up to dimension 2 above each cell.
void check_functoriality(const SimplicialSet& X, int extra) {
  for (int d = 0; d <= X.dimension(); ++d)
    for (std::size_t c = 0; c < X.count(d); ++c)
      for (int n = d; n <= d + extra; ++n) {
        std::vector<Monotone> sur;
        all_monotone(n, d, sur);
        for (const auto& eta : sur) {
          bool onto = eta.back() == d;
          for (int t = 0; t <= d && onto; ++t) onto = std::find(eta.begin(), eta.end(), t) != eta.end();
          if (!onto) continue;
          Simplex x{eta, static_cast<int>(c)};
          std::vector<Monotone> as, bs;
          all_monotone(1, n, as);
          for (const auto& a : as) {
            bs.clear();
            all_monotone(0, 1, bs);
            for (const auto& b : bs) CHECK(X.apply(x, compose(a, b)) == X.apply(X.apply(x, a), b));
          }
        }
      }
}

}  // namespace

TEST_SUITE("simplicial") {
  TEST_CASE("degeneracy words") {
    CHECK(surjection_from_word("10", 0) == Monotone{0, 0, 0});
    CHECK(degeneracy_word(Monotone{0, 0, 1, 1}) == "20");
    CHECK(degeneracy_word(surjection_from_word("02", 2)) == "30");
    CHECK(degeneracy_word(identity_map(3)).empty());
    CHECK_THROWS_AS(surjection_from_word("5", 1), SimplicialError);
  }

  TEST_CASE("standard simplices and the minimal circle") {
    CHECK(bi::simplex(1)->total_cells() == 3);
    CHECK(counts(*bi::simplex(3)) == std::vector<long>{4, 6, 4, 1});
    CHECK(counts(*bi::simplex_boundary(2)) == std::vector<long>{3, 3});
    auto C = bi::circle();
    CHECK(counts(*C) == std::vector<long>{1, 1});
    CHECK(C->basepoint() == 0);
    CHECK(counts(*bi::rp2()) == std::vector<long>{2, 3, 2});
    CHECK(counts(*bi::klein()) == std::vector<long>{1, 3, 2});
  }

  TEST_CASE("build rejects identity violations and bad references") {
    SimplicialSet X;
    X.add_cell(0, "a", {});
    X.add_cell(0, "b", {});
    X.add_cell(0, "c", {});
    X.add_cell(1, "ab", {nondegenerate(0, 1), nondegenerate(0, 0)});
    X.add_cell(1, "bc", {nondegenerate(0, 2), nondegenerate(0, 1)});
    X.add_cell(1, "ac", {nondegenerate(0, 2), nondegenerate(0, 0)});
    // d0 must be bc, d1 ac, d2 ab; swapping d0 and d2 breaks d0d0 = d0d1
    try {
      X.add_cell(2, "bad", {nondegenerate(1, 0), nondegenerate(1, 2), nondegenerate(1, 1)});
      FAIL("expected an identity violation");
    } catch (const SimplicialError& e) {
      CHECK(std::string(e.what()).find("identity violation") != std::string::npos);
    }
    X.add_cell(2, "abc", {nondegenerate(1, 1), nondegenerate(1, 2), nondegenerate(1, 0)});
    CHECK_THROWS_WITH_AS(parse_presentation(R"({"cells":{"0":["v"],"1":["e"]},"faces":{"e":[["","v"],["","w"]]}})"),
                         doctest::Contains("dangling face reference"), SimplicialError);
    CHECK_THROWS_WITH_AS(parse_presentation(R"({"cells":{"0":["v"],"1":["e"]},"faces":{"e":[["","v"]]}})"),
                         doctest::Contains("dimension mismatch"), SimplicialError);
    CHECK_THROWS_WITH_AS(
        parse_presentation(R"({"cells":{"0":["v"],"1":["e"]},"faces":{"e":[["0","v"],["","v"]]}})"),
        doctest::Contains("dimension mismatch"), SimplicialError);
  }

  TEST_CASE("face and degeneracy operators are functorial") {
    check_functoriality(*bi::simplex(2), 1);
    check_functoriality(*bi::rp2(), 1);
    check_functoriality(*bi::klein(), 1);
    check_functoriality(*bi::torus(), 1);
  }

  TEST_CASE("product cell counts") {
    auto I = bi::simplex(1);
    auto sq = product(I, I);
    CHECK(counts(*sq->set()) == std::vector<long>{4, 5, 2});
    CHECK(counts(*product(bi::simplex(2), bi::point())->set()) == counts(*bi::simplex(2)));
    // one vertex, three edges (two axes and the diagonal), two triangles
    CHECK(counts(*bi::torus()) == std::vector<long>{1, 3, 2});
    std::vector<SSetPtr> suite = {bi::point(), I, bi::circle(), bi::simplex(2), bi::rp2(), bi::klein()};
    for (const auto& X : suite)
      for (const auto& Y : suite) CHECK(counts(*product(X, Y)->set()) == expected_product_counts(*X, *Y));
  }

  TEST_CASE("projections, diagonal and twist") {
    for (const auto& X : {bi::simplex(1), bi::circle(), bi::rp2(), bi::torus()}) {
      auto XX = product(X, X);
      auto D = diagonal(XX);
      auto id = SimplicialMap::identity(X);
      CHECK(compose(XX->pr1(), D) == id);
      CHECK(compose(XX->pr2(), D) == id);
      auto tw = twist(XX, XX);
      CHECK(compose(tw, tw) == SimplicialMap::identity(XX->set()));
      CHECK(compose(tw, D) == D);
    }
    auto I = bi::simplex(1);
    auto D = diagonal(product(I, I));
    CHECK_FALSE(D.image(1, 0).degenerate());
    CHECK(product(I, I)->components(1, D.image(1, 0).cell) == std::make_pair(nondegenerate(1, 0), nondegenerate(1, 0)));
  }

  TEST_CASE("cylinders") {
    auto cp = cylinder(bi::point());
    CHECK(counts(*cp.product->set()) == std::vector<long>{2, 1});
    CHECK(cp.i0.image(0, 0) != cp.i1.image(0, 0));
    auto cI = cylinder(bi::simplex(1));
    CHECK(cI.product->set()->count(2) == 2);
    for (const auto& X : {bi::circle(), bi::rp2(), bi::torus()}) {
      auto c = cylinder(X);
      auto id = SimplicialMap::identity(X);
      CHECK(compose(c.pr, c.i0) == id);
      CHECK(compose(c.pr, c.i1) == id);
    }
  }

  TEST_CASE("associator is an isomorphism on cells") {
    auto C = bi::circle();
    auto I = bi::simplex(1);
    auto AB = product(I, C);
    auto AB_C = product(AB->set(), C);
    auto BC = product(C, C);
    auto A_BC = product(I, BC->set());
    auto a = associator(AB, AB_C, BC, A_BC);
    CHECK(counts(*AB_C->set()) == counts(*A_BC->set()));
    for (int d = 0; d <= AB_C->set()->dimension(); ++d) {
      std::set<int> hit;
      for (std::size_t i = 0; i < AB_C->set()->count(d); ++i) {
        CHECK_FALSE(a.image(d, static_cast<int>(i)).degenerate());
        hit.insert(a.image(d, static_cast<int>(i)).cell);
      }
      CHECK(hit.size() == AB_C->set()->count(d));
    }
  }

  TEST_CASE("pairs") {
    auto P = bi::pair_by_name("simplex2/boundary2");
    CHECK(P->relative_count(0) == 0);
    CHECK(P->relative_count(1) == 0);
    CHECK(P->relative_count(2) == 1);
    auto cp = bi::circle_pair(bi::circle());
    CHECK(counts(*cp.pair->sub()) == std::vector<long>{1, 1});
    CHECK(cp.pair->relative_count(1) == 2);
    CHECK(cp.pair->relative_count(2) == 2);
    CHECK(bi::pair_by_name("torus/circle") == cp.pair);
    CHECK(cp.product->set() == bi::torus());
    CHECK_THROWS_AS(Pair::from_names(bi::simplex(1), {"01"}), SimplicialError);
    CHECK(Pair::absolute(bi::rp2())->is_absolute());
  }

  TEST_CASE("presentation round trip is byte exact") {
    const std::string circle = R"({"cells":{"0":["v"],"1":["e"]},"faces":{"e":[["","v"],["","v"]]},"basepoint":"v"})";
    CHECK(dump_presentation(*parse_presentation(circle)) == circle);
    CHECK(dump_presentation(*bi::circle()) == circle);
    for (const auto& X : {bi::simplex(3), bi::rp2(), bi::klein(), bi::torus(), product(bi::torus(), bi::circle())->set()}) {
      const std::string text = dump_presentation(*X);
      auto Y = parse_presentation(text);
      CHECK(dump_presentation(*Y) == text);
      CHECK(counts(*Y) == counts(*X));
    }
    const std::string degenerate_faces =
        R"({"cells":{"0":["v"],"1":["e"],"2":["t"]},"faces":{"e":[["","v"],["","v"]],"t":[["0","v"],["","e"],["","e"]]}})";
    CHECK(dump_presentation(*parse_presentation(degenerate_faces)) == degenerate_faces);
  }
}
