#include <doctest.h>

#include <cmath>
#include <cstring>

#include "basket/io.hpp"
#include "fixtures.hpp"

using namespace basket;

TEST_CASE("model JSON round-trips doubles bit-faithfully") {
  const std::vector<double> tricky = {0.1,
                                      -1.0 / 3.0,
                                      5e-324,                   // smallest denormal
                                      1.7976931348623157e308,   // largest finite
                                      2.2250738585072014e-308,  // smallest normal
                                      123456.78901234567,
                                      -0.0};
  std::vector<double> theta(9, 0.0);
  theta[0] = tricky[0];
  theta[4] = tricky[1];
  theta[8] = tricky[2];
  theta[1] = theta[3] = tricky[5];
  const IsingModel m(3, theta, Domain::Binary);
  const std::vector<double> profits = {tricky[3], tricky[4], tricky[6]};

  const json doc = json::parse(model_to_json(m, &profits).dump());
  const ModelFile back = model_from_json(doc);
  REQUIRE(back.profits.has_value());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double a = m.theta(i, j), b = back.model.theta(i, j);
      CHECK(std::memcmp(&a, &b, sizeof a) == 0);
    }
  for (int i = 0; i < 3; ++i) {
    const double a = profits[static_cast<std::size_t>(i)];
    const double b = (*back.profits)[static_cast<std::size_t>(i)];
    CHECK(std::memcmp(&a, &b, sizeof a) == 0);
  }
  CHECK(back.model.domain() == Domain::Binary);
}

TEST_CASE("model JSON validates its fields") {
  CHECK_THROWS_AS(model_from_json(json::parse(R"({"n": 1, "theta": [0.0]})")), ParseError);
  CHECK_THROWS_AS(model_from_json(json::parse(R"({"n": 1, "domain": "bits", "theta": [0.0]})")),
                  ParseError);
  CHECK_THROWS_AS(model_from_json(json::parse(R"({"n": 2, "domain": "spin", "theta": [0.0]})")),
                  DimensionMismatch);
}

TEST_CASE("format_double emits the shortest faithful decimal") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(-1.0 / 3.0) == "-0.3333333333333333");
  const double v = 123456.78901234567;
  CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
}

TEST_CASE("sample batch CSV round trip") {
  SampleBatch batch;
  batch.assortment = Assortment({1, 3, 4});
  batch.n_samples = 3;
  batch.data = {1, 0, 1, 0, 0, 0, 1, 1, 1};
  const std::string csv = batch_to_csv(batch);
  CHECK(csv == "1,3,4\n1,0,1\n0,0,0\n1,1,1\n");

  const TransactionSample sample = parse_transactions_csv(csv);
  CHECK(sample.m == 3);
  CHECK(sample.n == 5);  // indices up to 4
  CHECK(sample.at(0, 1) == 1);
  CHECK(sample.at(0, 3) == -1);
  CHECK(sample.at(0, 4) == 1);
  CHECK(sample.at(1, 1) == -1);
  CHECK(sample.at(2, 3) == 1);
  CHECK(sample.at(0, 0) == -1);  // never offered -> never bought
}

TEST_CASE("token transactions build an id map in first-appearance order") {
  const std::string text = "milk bread\nbread\n\nmilk eggs bread\n";
  const TransactionFile tf = parse_transactions_tokens(text);
  CHECK(tf.ids == std::vector<std::string>{"milk", "bread", "eggs"});
  CHECK(tf.sample.m == 3);  // the blank line is skipped
  CHECK(tf.sample.n == 3);
  CHECK(tf.sample.at(0, 0) == 1);
  CHECK(tf.sample.at(0, 2) == -1);
  CHECK(tf.sample.at(1, 0) == -1);
  CHECK(tf.sample.at(2, 2) == 1);
}

TEST_CASE("malformed transaction lines are reported with their line number") {
  try {
    parse_transactions_tokens("a b\nc c\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }

  try {
    parse_transactions_csv("0,1\n0,1\n0,2\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }

  try {
    parse_transactions_csv("0,1\n0\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("format sniffing picks CSV only for comma headers") {
  CHECK(looks_like_csv("0,1,2\n1,0,1\n"));
  CHECK(!looks_like_csv("apple banana\ncherry\n"));
}

TEST_CASE("digests are stable and content-sensitive") {
  const std::string a = "hello\n";
  CHECK(fnv1a64_hex(a) == fnv1a64_hex("hello\n"));
  CHECK(fnv1a64_hex(a) != fnv1a64_hex("hello"));
  CHECK(fnv1a64_hex(a).size() == 16);
}

TEST_CASE("manifests round trip through JSON") {
  RunManifest m;
  m.command = "simulate";
  m.config = json{{"samples", 100}, {"seed", 7}};
  m.inputs = {{"in.json", "0011223344556677"}};
  m.outputs = {{"out.csv", "8899aabbccddeeff"}};
  m.wall_seconds = 1.25;
  const RunManifest back = manifest_from_json(manifest_to_json(m));
  CHECK(back.command == "simulate");
  CHECK(back.config.at("samples").get<int>() == 100);
  CHECK(back.inputs == m.inputs);
  CHECK(back.outputs == m.outputs);
}

TEST_CASE("graph and decomposition exports carry the expected cells") {
  const Instance shop = fixtures::three_product_shop();
  const ProductGraph g = build_graph(shop.model);
  const std::string edges = graph_edges_csv(g);
  CHECK(edges.find("0,1,5\n") != std::string::npos);
  CHECK(edges.find("1,2,-5\n") != std::string::npos);
  const std::string nodes = graph_nodes_csv(g, &shop.profits);
  CHECK(nodes.find("2,5,100\n") != std::string::npos);

  const Decomposition d = preprocess(shop);
  const json doc = decomposition_to_json(d);
  CHECK(doc.at("forced_in").empty());
  CHECK(doc.at("subproblems")[0].at("size").get<int>() == 3);
}
