#include <set>

#include "doctest.h"

#include "diffcoh/verify.hpp"

using namespace diffcoh;
using namespace diffcoh::verify;

namespace {

Json circle_job(const std::vector<std::string>& suites) {
  return {{"complexes", {"circle"}}, {"coefficients", "Z"}, {"suites", suites}, {"seed", 5}, {"samples", 1}};
}

Json circle_triple(const Json& c, const Json& h) {
  return {{"pair", to_pair_presentation(*builtins::pair_by_name("circle"))},
          {"coefficients", "Z"},
          {"degree", 1},
          {"c", c},
          {"omega", Json::object()},
          {"h", h}};
}

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("job validation") {
    CHECK_NOTHROW(parse_job(circle_job({"axioms"})));
    auto bad = [](const std::string& key, const Json& value) {
      Json j = circle_job({"axioms"});
      j[key] = value;
      return j;
    };
    CHECK_THROWS_AS(parse_job(bad("suites", {"axioms", "nope"})), JobError);
    CHECK_THROWS_AS(parse_job(bad("samples", 0)), JobError);
    CHECK_THROWS_AS(parse_job(bad("threads", 0)), JobError);
    CHECK_THROWS_AS(parse_job(bad("degrees", {-1})), JobError);
    CHECK_THROWS_AS(parse_job(bad("budgets", {{"cap", 4}, {"limit", 2}})), JobError);
    CHECK_THROWS_AS(parse_job(bad("complexes", Json::array())), JobError);
    CHECK_THROWS_AS(parse_job(bad("complexes", {"dodecahedron"})), JobError);
    CHECK_THROWS_AS(parse_job(bad("coefficients", "Q")), JobError);
    CHECK_THROWS_AS(parse_job(bad("extra", 1)), JobError);
    CHECK_THROWS_AS(parse_job(Json::array()), JobError);
    CHECK_THROWS_AS(load_job("/nonexistent/job.json"), JobError);
  }

  TEST_CASE("complexes by name and by presentation") {
    const PairPtr T = builtins::pair_by_name("torus/circle");
    const NamedPair X = resolve_complex({{"name", "tc"}, {"pair", to_pair_presentation(*T)}});
    CHECK(X.name == "tc");
    CHECK(to_pair_presentation(*X.pair).dump() == to_pair_presentation(*T).dump());
    CHECK(resolve_complex(Json("rp2")).pair->ambient()->dimension() == 2);
    const JobSpec job = parse_job(
        {{"complexes", {"point", {{"name", "tc"}, {"presentation", to_pair_presentation(*T)}}}},
         {"coefficients", "Z[u]/(u^2),|u|=-2"},
         {"suites", {"group", "group"}}});
    CHECK(job.complexes.size() == 2);
    CHECK(job.suites.size() == 1);
    CHECK(job.coeffs->rank() == 2);
  }

  TEST_CASE("claim anchors") {
    std::set<std::string> ids;
    std::string prev;
    for (const auto& [id, anchor] : claim_anchors()) {
      CHECK(!anchor.empty());
      CHECK(id > prev);
      prev = id;
      ids.insert(id);
    }
    CHECK_THROWS(anchor_of("no.such.claim"));
    JobSpec job = parse_job({{"complexes", {"torus", "simplex2/boundary2"}},
                             {"suites", suite_names()},
                             {"samples", 1},
                             {"degrees", {1}},
                             {"threads", 2}});
    for (const auto& c : run(job)) {
      CHECK_MESSAGE(ids.count(c.claim) == 1, c.claim);
      CHECK_MESSAGE(c.verified, std::string(c.claim + " " + c.complex + " " + c.payload.dump()));
    }
  }

  TEST_CASE("circle axioms job") {
    const auto certs = run(parse_job(circle_job({"axioms"})));
    REQUIRE(!certs.empty());
    bool order_two = false;
    for (const auto& c : certs) {
      CHECK(c.verified);
      if (c.claim == "axioms.order-two") {
        order_two = true;
        CHECK(c.payload.contains("nonzero"));
        CHECK(c.payload.contains("doubling"));
      }
    }
    CHECK(order_two);
  }

  TEST_CASE("certificates are deterministic and sorted") {
    Json j = circle_job({"group", "integration", "pairs"});
    j["complexes"] = {"torus/circle", "circle"};
    j["threads"] = 1;
    const std::string serial = certificates_to_json(run(parse_job(j))).dump();
    j["threads"] = 3;
    const auto certs = run(parse_job(j));
    CHECK(certificates_to_json(certs).dump() == serial);
    for (std::size_t i = 1; i < certs.size(); ++i)
      CHECK(std::tie(certs[i - 1].claim, certs[i - 1].complex, certs[i - 1].degree) <
            std::tie(certs[i].claim, certs[i].complex, certs[i].degree));
  }

  TEST_CASE("cache key") {
    Json j = circle_job({"axioms"});
    const std::string key = cache_key(parse_job(j));
    CHECK(key.size() == 16);
    j["threads"] = 4;
    CHECK(cache_key(parse_job(j)) == key);
    j["seed"] = 9;
    CHECK(cache_key(parse_job(j)) != key);
  }

  TEST_CASE("fixtures") {
    Json j = circle_job({});
    j["fixtures"] = {{{"name", "good"}, {"triple", circle_triple(Json::object(), {{"1", {{"v", "1/2"}}}})}},
                     {{"name", "bad"}, {"triple", circle_triple({{"1", {{"e", "1"}}}}, Json::object())}}};
    const auto certs = run(parse_job(j));
    REQUIRE(certs.size() == 2);
    CHECK(certs[0].complex == "bad");
    CHECK(!certs[0].verified);
    CHECK(certs[0].payload["kind"] == "structure-equation-violated");
    CHECK(certs[0].payload["simplex"] == "e");
    CHECK(to_json(certs[0]).contains("counterexample"));
    CHECK(certs[1].complex == "good");
    CHECK(certs[1].verified);
  }

  TEST_CASE("compute reports") {
    auto group = [](const std::string& name, int n) {
      return compute(builtins::pair_by_name(name), GradedCoefficients::integers(), n, "cohomology")["components"][0]["H"]
                    ["group"]
          .get<std::string>();
    };
    CHECK(group("rp2", 2) == "Z/2");
    CHECK(group("rp2", 1) == "0");
    CHECK(group("circle", 1) == "Z");
    CHECK(group("point", 0) == "Z");
    CHECK(group("torus", 1) == "Z^2");
    CHECK(group("simplex2/boundary2", 2) == "Z");
    const Json inv = compute(builtins::pair_by_name("torus"), GradedCoefficients::integers(), 2, "diffcoh-invariants");
    CHECK(inv["components"][0]["flat"]["circle_rank"] == 2);
    CHECK(inv["components"][0]["curvature_period_rank"] == 1);
    CHECK_THROWS_AS(compute(builtins::pair_by_name("torus"), GradedCoefficients::integers(), 2, "plot"), JobError);
  }
}
