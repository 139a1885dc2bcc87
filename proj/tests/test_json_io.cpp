#include <doctest.h>

#include "corpus.hpp"
#include "imml/generators.hpp"
#include "imml/json_io.hpp"
#include "imml/transforms.hpp"
#include "oracles.hpp"

using namespace imml;

TEST_CASE("property: models survive a JSON round trip") {
  Rng rng(61);
  for (int i = 0; i < 100; ++i) {
    std::vector<AnyModel> ms{random_inm(rng, 1 + i % 5, i % 3, 2), random_cnm(rng, 1 + i % 4, 2, 2),
                             star(make_coherent(random_inm(rng, 1 + i % 3, 1, 1))),
                             random_ifom(rng, 1 + i % 3, 1 + i % 3, i % 3, 2), random_classical(rng, 1 + i % 3, 2, 1)};
    for (const auto& m : ms) {
      json doc = model_to_json(m);
      AnyModel back = model_from_json(json::parse(doc.dump()));
      CHECK(model_to_json(back) == doc);
    }
  }
}

TEST_CASE("round trip preserves truth") {
  Rng rng(62);
  for (int i = 0; i < 50; ++i) {
    INModel m = random_inm(rng, 1 + i % 5, 1 + i % 2, 2);
    INModel back = std::get<INModel>(model_from_json(model_to_json(m)));
    for (int j = 0; j < 5; ++j) {
      Formula f = random_formula(rng, Dialect::Modal, 3, 2);
      CHECK(truth_set(m, f) == truth_set(back, f));
    }
  }
}

TEST_CASE("documents are validated on load") {
  json order_cycle = json::parse(R"({"kind":"inm","worlds":["a","b"],"order":[["a","b"],["b","a"]]})");
  CHECK_THROWS_AS(model_from_json(order_cycle), FormatError);
  CHECK_NOTHROW(model_from_json(order_cycle, false));

  json dom = json::parse(R"({"kind":"inm","worlds":["a","b"],"order":[["a","b"]],
                               "neighbourhoods":{"n":{"a":["b"]}}})");
  try {
    model_from_json(dom);
    FAIL("expected a FormatError");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find("upset") != std::string::npos);
  }
  CHECK_THROWS_AS(model_from_json(json::parse(R"({"kind":"inm","worlds":["a"],"valuation":{"p0":["z"]}})")),
                  FormatError);
  CHECK_THROWS_AS(model_from_json(json::parse(R"({"kind":"zzz","worlds":["a"]})")), FormatError);
  CHECK_THROWS_AS(model_from_json(json::parse(R"({"kind":"inm"})")), FormatError);
  CHECK_THROWS_AS(model_from_json(json::parse(R"({"kind":"inm","worlds":["a","a"]})")), FormatError);
  CHECK_THROWS_AS(model_from_json(json::parse(R"({"kind":"inm","worlds":["a"],"valuation":{"q":["a"]}})")),
                  FormatError);
  auto ok = model_from_json(json::parse(R"({"kind":"inm","worlds":["a"],"valuation":{"3":["a"]}})"));
  CHECK(std::get<INModel>(ok).val.size() == 4);
  CHECK_THROWS_AS(load_model(data_path("models/missing.json")), FormatError);
}

TEST_CASE("derivations survive a JSON round trip") {
  auto im = builtin_calculus("IM_Calc");
  for (const auto& [name, d] : corpus::im_derivations()) {
    INFO(name);
    json doc = derivation_to_json(d);
    Derivation back = derivation_from_json(json::parse(doc.dump()), Dialect::Modal);
    CHECK(derivation_to_json(back) == doc);
    CHECK(check_derivation(im, back));
    auto c = compile_proof(d);
    Derivation cb = derivation_from_json(derivation_to_json(c), Dialect::Bimodal);
    CHECK(check_derivation(builtin_calculus("IK2"), cb));
  }
  CHECK_THROWS_AS(derivation_from_json(json::parse(R"({"rule":"Cut","conclusion":{"formula":"p0"}})"), Dialect::Modal),
                  FormatError);
  CHECK_THROWS_AS(derivation_from_json(json::parse(R"({"rule":"El","conclusion":{"formula":"p0 &"}})"), Dialect::Modal),
                  FormatError);
}
