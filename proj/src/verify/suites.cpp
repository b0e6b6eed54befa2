#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include "diffcoh/verify.hpp"

namespace diffcoh::verify {

namespace {

struct Outcome {
  bool ok = false;
  Json payload = Json::object();
};

using Check = std::function<Outcome(std::mt19937_64&)>;

struct Task {
  std::string claim;
  std::string complex;
  int degree = 0;
  Check check;
};

Outcome pass(Json payload = Json::object()) { return {true, std::move(payload)}; }

Outcome fail(Json payload) { return {false, std::move(payload)}; }

// a ~ b, with the witness or the distinguishing certificate and both triples.
Outcome same_class(const Triple& a, const Triple& b) {
  const EquivalenceResult r = equivalent(a, b);
  if (r.equivalent && check_witness(a, b, *r.witness)) return pass({{"witness", witness_to_json(*r.witness)}});
  Json out = Json::object();
  if (r.certificate) out["certificate"] = certificate_to_json(*r.certificate, a.base(), a.coeffs());
  out["lhs"] = triple_to_json(a);
  out["rhs"] = triple_to_json(b);
  return fail(std::move(out));
}

Outcome exact(bool ok, const std::string& what, Json counterexample = Json::object()) {
  if (ok) return pass({{"exact", what}});
  counterexample["exact"] = what;
  return fail(std::move(counterexample));
}

// Runs `samples` draws; stops at the first failure. A passing run keeps the first witness.
Outcome sampled(int samples, std::mt19937_64& rng, const Check& f) {
  Json first;
  for (int i = 0; i < samples; ++i) {
    Outcome o = f(rng);
    if (!o.ok) {
      o.payload["sample"] = i;
      return o;
    }
    if (i == 0) first = std::move(o.payload);
  }
  Json out = Json::object();
  out["samples"] = samples;
  for (auto& [k, v] : first.items()) out[k] = v;
  return pass(std::move(out));
}

Outcome from_report(const SequenceReport& rep) {
  Json nodes = Json::object();
  Json failures = Json::array();
  for (const auto& node : rep.nodes) {
    nodes[node.node] = Json{{"composites", node.composites}, {"preimages", node.kernel_samples}};
    for (const auto& f : node.failures) failures.push_back(node.node + " " + f);
  }
  if (failures.empty()) return pass({{"nodes", nodes}});
  return fail({{"nodes", nodes}, {"failures", failures}});
}

Triple with_sign(int s, const Triple& t) { return s < 0 ? neg(t) : t; }

int dim(const PairPtr& P) { return P->ambient()->dimension(); }

std::vector<int> degrees(const JobSpec& job, int lo, int hi) {
  std::vector<int> out;
  if (job.degrees.empty()) {
    for (int n = lo; n <= std::min(hi, 2); ++n) out.push_back(n);
  } else {
    for (int n : job.degrees)
      if (n >= lo && n <= hi) out.push_back(n);
  }
  return out;
}

// Integral degree-1 cocycles of the unit component spanning H^1.
std::vector<Cochain> unit_generators(const PairPtr& P, const CoeffPtr& L, int k) {
  std::vector<Cochain> out;
  for (const auto& v : integral_cocycle_basis(P, k)) {
    Cochain u = Cochain::zero(P, L, k);
    set_relative_values(u, L->unit(), v);
    if (!integral_primitive(u)) out.push_back(std::move(u));
  }
  return out;
}

struct Planner {
  const JobSpec& job;
  std::vector<Task> tasks;

  void task(std::string claim, const NamedPair& X, int degree, Check check) {
    tasks.push_back({std::move(claim), X.name, degree, std::move(check)});
  }

  void axioms(const NamedPair& X) {
    const PairPtr P = X.pair;
    const CoeffPtr L = job.coeffs;
    const int s = job.samples;
    for (int n : degrees(job, 1, dim(P) + 1))
      task("axioms.exact", X, n, [=](std::mt19937_64& rng) { return from_report(axiom_sequence(P, L, n, rng, s)); });
    const auto gens = unit_generators(P, L, 1);
    if (!gens.empty())
      task("axioms.order-two", X, 2, [=](std::mt19937_64&) {
        const Triple x = a_map(make_rational(1, 2) * whitney(gens.front()));
        const Triple zero = zero_triple(P, L, 2);
        const EquivalenceResult r = equivalent(x, zero);
        if (r.equivalent || !check_certificate(x, zero, *r.certificate))
          return fail({{"reason", "a(z/2) is not detected as nonzero"}, {"triple", triple_to_json(x)}});
        Outcome twice = same_class(add(x, x), zero);
        if (!twice.ok) return twice;
        return pass({{"nonzero", certificate_to_json(*r.certificate, P, L)}, {"doubling", twice.payload["witness"]}});
      });
  }

  void group(const NamedPair& X) {
    const PairPtr P = X.pair;
    const CoeffPtr L = job.coeffs;
    const int s = job.samples;
    for (int n : degrees(job, 0, dim(P))) {
      task("group.zero", X, n, [=](std::mt19937_64& rng) {
        return sampled(s, rng, [&](std::mt19937_64& g) {
          const Triple t = random_triple(P, L, n, g);
          return same_class(add(t, zero_triple(P, L, n)), t);
        });
      });
      task("group.inverse", X, n, [=](std::mt19937_64& rng) {
        return sampled(s, rng, [&](std::mt19937_64& g) {
          const Triple t = random_triple(P, L, n, g);
          return same_class(add(t, neg(t)), zero_triple(P, L, n));
        });
      });
      task("group.commutative", X, n, [=](std::mt19937_64& rng) {
        return sampled(s, rng, [&](std::mt19937_64& g) {
          const Triple t0 = random_triple(P, L, n, g), t1 = random_triple(P, L, n, g);
          return same_class(add(t0, t1), add(t1, t0));
        });
      });
      task("group.associative", X, n, [=](std::mt19937_64& rng) {
        return sampled(s, rng, [&](std::mt19937_64& g) {
          const Triple t0 = random_triple(P, L, n, g), t1 = random_triple(P, L, n, g), t2 = random_triple(P, L, n, g);
          return same_class(add(add(t0, t1), t2), add(t0, add(t1, t2)));
        });
      });
      if (const auto corr = coboundary_perturbation(L, n))
        task("group.corrections", X, n, [=](std::mt19937_64& rng) {
          return sampled(s, rng, [&](std::mt19937_64& g) {
            const Triple t0 = random_triple(P, L, n, g), t1 = random_triple(P, L, n, g), t2 = random_triple(P, L, n, g);
            for (Outcome o : {same_class(add(t0, t1, *corr), add(t0, t1)), same_class(neg(t0, *corr), neg(t0)),
                              same_class(add(t0, neg(t0, *corr), *corr), zero_triple(P, L, n)),
                              same_class(add(add(t0, t1, *corr), t2, *corr), add(t0, add(t1, t2, *corr), *corr))})
              if (!o.ok) return o;
            return pass({{"A", corr->A->to_string()}, {"N", corr->N->to_string()}});
          });
        });
    }
  }

  void ring(const NamedPair& X) {
    const PairPtr P = X.pair;
    const PairPtr M = ambient_pair(P);
    const CoeffPtr L = job.coeffs;
    const int s = job.samples;
    const int top = dim(P);
    for (int n : degrees(job, 0, top)) {
      task("ring.unit", X, n, [=](std::mt19937_64& rng) {
        return sampled(s, rng, [&](std::mt19937_64& g) {
          const Triple x = random_triple(P, L, n, g);
          const Outcome o = same_class(product_full(unit_triple(M, L), x), x);
          return o.ok ? same_class(product_full(x, unit_triple(M, L)), x) : o;
        });
      });
      task("ring.commutative", X, n, [=](std::mt19937_64& rng) {
        return sampled(s, rng, [&](std::mt19937_64& g) {
          Outcome last = pass();
          for (int m = 0; n + m <= top; ++m) {
            const Triple x = random_triple(P, L, n, g), y = random_triple(M, L, m, g);
            last = same_class(product_full(x, y), with_sign((n * m) % 2 ? -1 : 1, rebase(product_full(y, x), P)));
            last.payload["m"] = m;
            if (!last.ok) return last;
          }
          return last;
        });
      });
      task("ring.bilinear", X, n, [=](std::mt19937_64& rng) {
        return sampled(s, rng, [&](std::mt19937_64& g) {
          Outcome last = pass();
          for (int m = 0; n + m <= top; ++m) {
            const Triple x = random_triple(P, L, n, g), x2 = random_triple(P, L, n, g), y = random_triple(M, L, m, g);
            last = same_class(product_full(add(x, x2), y), add(product_full(x, y), product_full(x2, y)));
            if (!last.ok) return last;
          }
          return last;
        });
      });
      task("ring.associative", X, n, [=](std::mt19937_64& rng) {
        return sampled(s, rng, [&](std::mt19937_64& g) {
          Outcome last = pass();
          for (int m = 0; m <= 1; ++m)
            for (int k = 0; k <= 1 && n + m + k <= top; ++k) {
              const Triple x = random_triple(P, L, n, g), y = random_triple(M, L, m, g), z = random_triple(M, L, k, g);
              last = same_class(product_full(product_full(x, y), z), product_full(x, product_full(y, z)));
              if (!last.ok) return last;
            }
          return last;
        });
      });
      if (n >= 1)
        task("ring.a-formula", X, n, [=](std::mt19937_64& rng) {
          return sampled(s, rng, [&](std::mt19937_64& g) {
            Outcome last = pass();
            for (int m = 0; n + m <= top; ++m) {
              const PLForm theta = random_form(P, L, n - 1, g);
              const Triple y = random_triple(M, L, m, g);
              last = same_class(product_full(a_map(theta), y), a_map(wedge(theta, y.omega).rebase(P)));
              if (!last.ok) return last;
            }
            return last;
          });
        });
      if (P->is_absolute()) {
        const CircleBundle& cb = circle_bundle(P);
        task("ring.pullback", X, n, [=, &cb](std::mt19937_64& rng) {
          const Outcome unit = same_class(pullback(cb.pr2, unit_triple(P, L), cb.abs), unit_triple(cb.abs, L));
          if (!unit.ok) return unit;
          return sampled(s, rng, [&](std::mt19937_64& g) {
            Outcome last = pass();
            for (int m = 0; n + m <= top; ++m) {
              const Triple x = random_triple(P, L, n, g), y = random_triple(P, L, m, g);
              last = same_class(pullback(cb.pr2, product_full(x, y), cb.abs),
                                product_full(pullback(cb.pr2, x, cb.abs), pullback(cb.pr2, y, cb.abs)));
              if (!last.ok) return last;
            }
            return last;
          });
        });
        task("ring.integration", X, n, [=, &cb](std::mt19937_64& rng) {
          return sampled(s, rng, [&](std::mt19937_64& g) {
            Outcome last = pass();
            for (int m = 0; n + m <= top; ++m) {
              const Triple x = random_triple(cb.abs, L, n + 1, g);
              const Triple y = random_triple(P, L, m, g);
              last = same_class(integrate_abs(product_full(x, pullback(cb.pr2, y, cb.abs)), cb),
                                product_full(integrate_abs(x, cb), y));
              if (!last.ok) return last;
            }
            return last;
          });
        });
      }
    }
  }

  void integration(const NamedPair& X) {
    const PairPtr P = X.pair;
    const CoeffPtr L = job.coeffs;
    const int s = job.samples;
    const CircleBundle& cb = circle_bundle(P);
    for (int n : degrees(job, 0, dim(P))) {
      const int d = n + 1;
      task("integration.pr2", X, n, [=, &cb](std::mt19937_64& rng) {
        return sampled(s, rng, [&](std::mt19937_64& g) {
          const Triple t = random_triple(P, L, d, g);
          return same_class(integrate_abs(pullback(cb.pr2, t, cb.abs), cb), zero_triple(P, L, n));
        });
      });
      task("integration.j", X, n, [=, &cb](std::mt19937_64& rng) {
        return sampled(s, rng, [&](std::mt19937_64& g) {
          const Triple y = random_triple(cb.rel, L, d, g);
          return same_class(integrate_abs(rebase(y, cb.abs), cb), integrate_rel(y, cb));
        });
      });
      task("integration.linear", X, n, [=, &cb](std::mt19937_64& rng) {
        return sampled(s, rng, [&](std::mt19937_64& g) {
          const Triple t0 = random_triple(cb.abs, L, d, g), t1 = random_triple(cb.abs, L, d, g);
          return same_class(integrate_abs(add(t0, t1), cb), add(integrate_abs(t0, cb), integrate_abs(t1, cb)));
        });
      });
      task("integration.R", X, n, [=, &cb](std::mt19937_64& rng) {
        return sampled(s, rng, [&](std::mt19937_64& g) {
          const Triple y = random_triple(cb.rel, L, d, g);
          return exact(integrate_rel(y, cb).omega == fiber_integrate(cb.product, 0, y.omega, P), "R(int y) = int R(y)");
        });
      });
      task("integration.I", X, n, [=, &cb](std::mt19937_64& rng) {
        return sampled(s, rng, [&](std::mt19937_64& g) {
          const Triple y = random_triple(cb.rel, L, d, g);
          return exact(integrate_rel(y, cb).c == integrate_interval(cb.product, 0, y.c, P), "I(int y) = int I(y)");
        });
      });
      task("integration.a", X, n, [=, &cb](std::mt19937_64& rng) {
        return sampled(s, rng, [&](std::mt19937_64& g) {
          const PLForm theta = random_form(cb.rel, L, n, g);
          return same_class(integrate_rel(a_map(theta), cb), neg(a_map(fiber_integrate(cb.product, 0, theta, P))));
        });
      });
      task("integration.natural", X, n, [=, &cb](std::mt19937_64& rng) {
        const CircleBundle& cb0 = circle_bundle(cb.abs);
        const SimplicialMap F =
            product_map(cb0.product, cb.product, SimplicialMap::identity(builtins::circle()), cb.pr2);
        return sampled(s, rng, [&](std::mt19937_64& g) {
          const Triple t = random_triple(cb.abs, L, d, g);
          return same_class(pullback(cb.pr2, integrate_abs(t, cb), cb.abs), integrate_abs(pullback(F, t, cb0.abs), cb0));
        });
      });
      task("integration.well-defined", X, n, [=, &cb](std::mt19937_64& rng) {
        const Triple t = random_triple(cb.abs, L, d, rng);
        const Triple ref = integrate_abs(t, cb);
        for (int alt = 0; alt < 10; ++alt) {
          Outcome o = same_class(integrate_abs(random_equivalent(t, rng), cb), ref);
          if (!o.ok) {
            o.payload["alternative"] = alt;
            return o;
          }
        }
        return pass({{"alternatives", 10}});
      });
      if (P->is_absolute() && n % 2 == 0)
        task("integration.double", X, n, [=](std::mt19937_64& rng) {
          const DoubleCircle dc = double_circle(P);
          return sampled(s, rng, [&](std::mt19937_64& g) {
            const Triple t = random_triple(dc.outer->abs, L, n + 2, g);
            const AnticommuteReport r = double_integral_anticommute_check(t, dc);
            if (r.ok) return pass({{"witness", witness_to_json(*r.result.witness)}});
            return fail({{"triple", triple_to_json(t)}});
          });
        });
    }
  }

  void pairs(const NamedPair& X) {
    const PairPtr P = X.pair;
    const CoeffPtr L = job.coeffs;
    const int s = job.samples;
    for (int n : degrees(job, 1, 3))
      task("pairs.exact", X, n, [=](std::mt19937_64& rng) { return from_report(pair_sequence(P, L, n, rng, s)); });
  }

  void products_odd(const NamedPair& X) {
    const PairPtr P = X.pair;
    const PairPtr M = ambient_pair(P);
    const CoeffPtr L = job.coeffs;
    const int s = job.samples;
    const int top = dim(P);
    for (int n : degrees(job, 1, top)) {
      if (n % 2 == 0) continue;
      task("products-odd.commutative", X, n, [=](std::mt19937_64& rng) {
        return sampled(s, rng, [&](std::mt19937_64& g) {
          Outcome last = pass();
          for (int m = 1; n + m <= top; m += 2) {
            const Triple x = random_triple(P, L, n, g), y = random_triple(M, L, m, g);
            last = same_class(product_full(x, y), neg(rebase(product_full(y, x), P)));
            if (!last.ok) return last;
          }
          return last;
        });
      });
      task("products-odd.well-defined", X, n, [=](std::mt19937_64& rng) {
        const CircleBundle& cb = circle_bundle(P);
        const Triple x = random_triple(P, L, n, rng);
        const Triple y = random_triple(M, L, std::min(1, top - n), rng);
        const Triple X0 = suspend(x, cb);
        const Triple ref = product_full(x, y);
        const PLForm tau = pullback(cb.product->pr1(), circle_class(L).omega, cb.left);
        for (int alt = 0; alt < 10; ++alt) {
          const PLForm theta = exterior_d(random_form(cb.rel, L, n - 1, rng)) +
                               wedge(tau, pullback(cb.pr2, whitney(random_cocycle(P, L, n - 1, rng)), cb.abs)).rebase(cb.rel);
          const Triple X1 = random_equivalent(add(X0, a_map(theta)), rng);
          Outcome o = same_class(integrate_rel(X1, cb), x);
          if (o.ok) o = same_class(product_with_suspensions(x, y, X1, std::nullopt), ref);
          if (!o.ok) {
            o.payload["alternative"] = alt;
            return o;
          }
        }
        return pass({{"alternatives", 10}});
      });
    }
    const auto gens = unit_generators(M, L, 1);
    if (P->is_absolute() && top >= 2 && gens.size() >= 2)
      task("products-odd.cup-pairing", X, 2, [=](std::mt19937_64&) {
        const Triple x = character_lift(gens[0]), y = character_lift(gens[1]);
        const Cochain oracle = cup(gens[0], gens[1]);
        const Triple xy = product_full(x, y);
        if (!cohomologous(xy.c, oracle))
          return fail({{"product", cochain_to_json(xy.c)}, {"cup", cochain_to_json(oracle)}});
        return pass({{"cup", cochain_to_json(oracle)}, {"primitive", cochain_to_json(*integral_primitive(xy.c - oracle))}});
      });
  }

  void fixtures() {
    for (const auto& f : job.fixtures) {
      const Json triple = f.triple;
      tasks.push_back({"fixture.valid", f.name, triple.value("degree", 0), [triple](std::mt19937_64&) {
                         try {
                           const Triple t = triple_from_json(triple);
                           return pass({{"structure_equation", "dh = R(omega) - c"}, {"degree", t.degree()}});
                         } catch (const TripleError& e) {
                           const std::string what = e.what();
                           Json out = {{"kind", e.kind()}, {"detail", what}};
                           const auto at = what.rfind(" at ");
                           if (at != std::string::npos) {
                             const std::string where = what.substr(at + 4);
                             const auto colon = where.find(':');
                             out["basis"] = where.substr(0, colon);
                             out["simplex"] = colon == std::string::npos ? where : where.substr(colon + 1);
                           }
                           return fail(std::move(out));
                         }
                       }});
    }
  }
};

std::mt19937_64 task_rng(std::uint64_t seed, const Task& t) {
  const std::string key = t.claim + "|" + t.complex + "|" + std::to_string(t.degree);
  const std::uint64_t h = std::stoull(digest(key), nullptr, 16);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

const std::vector<std::pair<std::string, std::string>>& claim_anchors() {
  static const std::vector<std::pair<std::string, std::string>> anchors = {
      {"axioms.exact", "exactness of E^{n-1} -> Omega^{n-1}/im d -> hat E^n -> E^n -> 0"},
      {"axioms.order-two", "a(z/2) is a nonzero element of order two"},
      {"fixture.valid", "structure equation of a differential cocycle"},
      {"group.associative", "addition is associative"},
      {"group.commutative", "addition is commutative"},
      {"group.corrections", "coboundary changes of the corrections preserve the class"},
      {"group.inverse", "negation is inverse to addition"},
      {"group.zero", "the zero triple is neutral"},
      {"integration.I", "integration commutes with I"},
      {"integration.R", "integration commutes with R"},
      {"integration.a", "integration anticommutes with a"},
      {"integration.double", "double integration anticommutes with the flip of the circles"},
      {"integration.j", "absolute integration restricts to relative integration"},
      {"integration.linear", "integration is linear"},
      {"integration.natural", "integration is natural in the base"},
      {"integration.pr2", "integration kills classes pulled back from the base"},
      {"integration.well-defined", "absolute integration does not depend on the representative"},
      {"pairs.exact", "exact sequence of a pair"},
      {"products-odd.commutative", "odd classes anticommute"},
      {"products-odd.cup-pairing", "product of degree-1 classes refines the cup product"},
      {"products-odd.well-defined", "odd products do not depend on the suspension"},
      {"ring.a-formula", "a(Theta) x y = a(Theta wedge R(y))"},
      {"ring.associative", "the product is associative"},
      {"ring.bilinear", "the product is bilinear"},
      {"ring.commutative", "the product is graded commutative"},
      {"ring.integration", "integration is compatible with products"},
      {"ring.pullback", "pullback is a unital ring map"},
      {"ring.unit", "the unit class is neutral"},
  };
  return anchors;
}

std::string anchor_of(const std::string& claim) {
  for (const auto& [id, anchor] : claim_anchors())
    if (id == claim) return anchor;
  throw std::out_of_range("unknown claim " + claim);
}

std::vector<Certificate> run(const JobSpec& job) {
  set_default_form_budget(job.budget);
  Planner plan{job, {}};
  for (const auto& X : job.complexes)
    for (const auto& suite : job.suites) {
      if (suite == "axioms") plan.axioms(X);
      if (suite == "group") plan.group(X);
      if (suite == "ring") plan.ring(X);
      if (suite == "integration") plan.integration(X);
      if (suite == "pairs") plan.pairs(X);
      if (suite == "products-odd") plan.products_odd(X);
    }
  plan.fixtures();

  std::vector<Certificate> certs(plan.tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < plan.tasks.size(); i = next++) {
      const Task& t = plan.tasks[i];
      Certificate& c = certs[i];
      c.claim = t.claim;
      c.complex = t.complex;
      c.degree = t.degree;
      const auto start = std::chrono::steady_clock::now();
      try {
        std::mt19937_64 rng = task_rng(job.seed, t);
        Outcome o = t.check(rng);
        c.verified = o.ok;
        c.payload = std::move(o.payload);
      } catch (const std::exception& e) {
        c.verified = false;
        c.payload = {{"error", e.what()}};
      }
      c.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
  };
  const int n = std::min<int>(job.threads, static_cast<int>(plan.tasks.size()));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::sort(certs.begin(), certs.end(), [](const Certificate& a, const Certificate& b) {
    return std::tie(a.claim, a.complex, a.degree) < std::tie(b.claim, b.complex, b.degree);
  });
  return certs;
}

Json to_json(const Certificate& c) {
  Json out = Json::object();
  out["claim"] = c.claim;
  out["anchor"] = anchor_of(c.claim);
  out["complex"] = c.complex;
  out["degree"] = c.degree;
  out["status"] = c.verified ? "verified" : "failed";
  out[c.verified ? "witness" : "counterexample"] = c.payload;
  return out;
}

Json certificates_to_json(const std::vector<Certificate>& certs) {
  Json out = Json::array();
  for (const auto& c : certs) out.push_back(to_json(c));
  return out;
}

std::string summary(const std::vector<Certificate>& certs) {
  std::ostringstream os;
  int failed = 0;
  double total = 0;
  for (const auto& c : certs) {
    os << (c.verified ? "verified " : "FAILED   ") << c.claim << " " << c.complex << " n=" << c.degree << " ("
       << static_cast<long>(c.millis) << " ms)\n";
    failed += c.verified ? 0 : 1;
    total += c.millis;
  }
  os << certs.size() - failed << "/" << certs.size() << " certificates verified in " << static_cast<long>(total)
     << " ms\n";
  return os.str();
}

}  // namespace diffcoh::verify
