// Exercises the shared-library C interface the way an external consumer
// would: through pclass2.h only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <string>

#include "json.hpp"

#include "pclass2.h"

using nlohmann::json;

namespace {

struct Freed {
  char* s = nullptr;
  ~Freed() { pc2_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

struct Held {
  pc2_group* g = nullptr;
  ~Held() { pc2_group_free(g); }
};

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strlen(pc2_version()) > 0);
  CHECK(std::string(pc2_status_name(PC2_OK)) == "ok");
  CHECK(std::string(pc2_status_name(PC2_ERR_BUDGET)) == "budget-exceeded");
}

TEST_CASE("catalog build, fdg round-trip, accessors") {
  Held g;
  REQUIRE(pc2_group_from_catalog("5.3.1", 3, &g.g) == PC2_OK);
  CHECK(pc2_group_prime(g.g) == 3);
  CHECK(pc2_group_generators(g.g) == 3);
  CHECK(pc2_group_derived_rank(g.g) == 2);
  CHECK(pc2_group_is_special(g.g) == 1);

  Freed text;
  REQUIRE(pc2_group_fdg(g.g, "5.3.1", &text.s) == PC2_OK);
  CHECK(text.str() ==
        "group 5.3.1\np 3\nderived 2\ngens 3\nedge 1 2 1 0\nedge 1 3 0 1\n");

  Held back;
  Freed err;
  REQUIRE(pc2_group_from_fdg(text.s, &back.g, &err.s) == PC2_OK);
  Freed again;
  REQUIRE(pc2_group_fdg(back.g, "5.3.1", &again.s) == PC2_OK);
  CHECK(again.str() == text.str());

  Freed dot;
  REQUIRE(pc2_group_dot(g.g, "5.3.1", &dot.s) == PC2_OK);
  CHECK(dot.str().find("x1 -> x2") != std::string::npos);
}

TEST_CASE("error codes") {
  Held g;
  CHECK(pc2_group_from_catalog("no-such-group", 3, &g.g) == PC2_ERR_UNKNOWN_NAME);
  CHECK(pc2_group_from_catalog("5.3.1", 4, &g.g) == PC2_ERR_BAD_ARG);
  CHECK(pc2_group_from_catalog(nullptr, 3, &g.g) == PC2_ERR_BAD_ARG);

  Freed err;
  CHECK(pc2_group_from_fdg("group X\np 9\nderived 1\ngens 2\n", &g.g, &err.s) ==
        PC2_ERR_PARSE);
  CHECK(err.str().find("line 2") != std::string::npos);
}

TEST_CASE("invariants JSON has the stable keys") {
  Held g;
  REQUIRE(pc2_group_from_catalog("A", 3, &g.g) == PC2_OK);
  Freed out;
  REQUIRE(pc2_group_invariants(g.g, &out.s) == PC2_OK);
  json j = json::parse(out.str());
  CHECK(j["p"] == 3);
  CHECK(j["generators"] == 7);
  CHECK(j["special"] == true);
  CHECK(j["frequency"]["counts"] == json::array({0, 1, 3}));
  CHECK(j.contains("rank_signature"));
  CHECK(j["centralizer_flags"].contains("is_subspace"));
  CHECK(j["preimage_profile"].size() == 4);
}

TEST_CASE("isomorphism through the C surface") {
  Held a, b, c;
  REQUIRE(pc2_group_from_catalog("6.4.3", 3, &a.g) == PC2_OK);
  REQUIRE(pc2_group_from_catalog("6.4.4", 3, &b.g) == PC2_OK);
  REQUIRE(pc2_group_from_catalog("6.4.3", 3, &c.g) == PC2_OK);

  int verdict = -1;
  Freed out;
  REQUIRE(pc2_isomorphic(a.g, b.g, 0, &verdict, &out.s) == PC2_OK);
  CHECK(verdict == 0);
  CHECK(json::parse(out.str())["verdict"] == "not-iso");

  Freed out2;
  REQUIRE(pc2_isomorphic(a.g, c.g, 0, &verdict, &out2.s) == PC2_OK);
  CHECK(verdict == 1);
  json j = json::parse(out2.str());
  CHECK(j["witness"]["S"].size() == 4);

  int distinct = -1;
  Freed out3;
  REQUIRE(pc2_distinguish(a.g, b.g, &distinct, &out3.s) == PC2_OK);
  CHECK(distinct == 1);
  CHECK(json::parse(out3.str())["invariant"] == "frequency");
}

TEST_CASE("classification and decomposition through the C surface") {
  Freed out;
  REQUIRE(pc2_classify(3, 3, 0, &out.s) == PC2_OK);
  json j = json::parse(out.str());
  CHECK(j["special_orbit_count"] == 1);
  CHECK(j["structure_count"] == 729);
  CHECK(std::string(j["orbits"][0]["rep_fdg"]).find("group") == 0);

  CHECK(pc2_classify(7, 3, 0, &out.s) == PC2_ERR_BUDGET);

  Held b;
  REQUIRE(pc2_group_from_catalog("B", 3, &b.g) == PC2_OK);
  Freed dec;
  REQUIRE(pc2_group_decompose(b.g, 0, &dec.s) == PC2_OK);
  json dj = json::parse(dec.str());
  CHECK(dj["decomposable"] == true);
  CHECK(dj["part_dims"].size() == 3);
  CHECK(dj["factors"] == json::array({"3.2.1", "3.2.1", "5.3.1"}));

  Freed dec_tiny;
  CHECK(pc2_group_decompose(b.g, 5, &dec_tiny.s) == PC2_ERR_BUDGET);
}

TEST_CASE("verify and the catalog table") {
  Freed out;
  int all_pass = 0;
  REQUIRE(pc2_verify(3, &out.s, &all_pass) == PC2_OK);
  CHECK(all_pass == 1);
  json j = json::parse(out.str());
  CHECK(j["summary"]["fail"] == 0);
  CHECK(j["summary"]["unknown"] == 0);
  CHECK(j["items"].size() > 30);
  for (const auto& item : j["items"]) {
    CHECK(item.contains("name"));
    CHECK(item.contains("computed"));
    CHECK(item.contains("expected"));
    CHECK(item.contains("verdict"));
  }

  Freed table;
  REQUIRE(pc2_catalog_table(5, &table.s) == PC2_OK);
  json t = json::parse(table.str());
  CHECK(t["entries"].size() == 21);
  bool found_a = false;
  for (const auto& entry : t["entries"]) {
    if (entry["name"] == "A") {
      found_a = true;
      CHECK(entry["frequency"] == json::array({0, 1, 5}));
    }
  }
  CHECK(found_a);
}
