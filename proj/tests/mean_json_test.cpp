#include <gtest/gtest.h>

#include "meanmap/meanmap.hpp"
#include "property.hpp"

using namespace meanmap;

namespace {

Error error_of(const std::string& text) {
  try {
    parse_mean_expr(text);
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "accepted: " << text;
  return Error(ErrorCode::SchemaError, "", "");
}

}  // namespace

TEST(MeanJson, ParsesEveryOp) {
  const std::vector<std::string> docs = {
      R"({"op":"power","r":"-inf","weights":["1/2","1/2"]})",
      R"({"op":"power","r":"1/2","weights":[1,0]})",
      R"({"op":"quasi","generator":{"name":"power","r":3},"weights":["1/3","2/3"]})",
      R"({"op":"quasi","generator":"log","weights":["1/3","2/3"]})",
      R"({"op":"min","p":3})",
      R"({"op":"max","p":2})",
      R"({"op":"proj","p":3,"index":2})",
      R"({"op":"blend","s":{"kind":"const","value":"1/4"},"left":{"op":"min","p":2},"right":{"op":"max","p":2}})",
      R"({"op":"piecewise","region":"first_le_second","then":{"op":"min","p":2},"else":{"op":"max","p":2}})",
      R"({"op":"state_weighted","side":"n","lambda":{"b":1,"c":"4/3","d":4,"kappa":"1/2"},"functional":{"a0":0,"a1":1,"d":2}})",
  };
  for (const auto& doc : docs) EXPECT_NO_THROW(parse_mean_expr(doc)) << doc;
}

TEST(MeanJson, RoundTripIsStable) {
  prop::for_all(100, [](prop::Gen& g) {
    const auto expr = MeanExpr::blend(BlendCoefficient::constant(Rational(g.integer(0, 5), 5)),
                                      MeanExpr::power(static_cast<double>(g.integer(-2, 2)), g.weights(3)),
                                      MeanExpr::quasi(Generator::exp(), g.weights(3)));
    const std::string text = serialize(expr);
    const auto back = parse_mean_expr(text);
    EXPECT_EQ(serialize(back), text);
    const auto v = g.vector(3, 0.5, 4.0);
    EXPECT_EQ(eval_mean(back, v), eval_mean(expr, v));
  });
}

TEST(MeanJson, ErrorsCarryAPointer) {
  auto e = error_of(R"({"op":"powr"})");
  EXPECT_EQ(e.code(), ErrorCode::SchemaError);
  EXPECT_EQ(e.detail(), "/op");

  e = error_of(R"({"op":"blend","s":{"kind":"const","value":"1/2"},"left":{"op":"min","p":2},"right":{"op":"power","r":1}})");
  EXPECT_EQ(e.code(), ErrorCode::SchemaError);
  EXPECT_EQ(e.detail(), "/right/weights");

  e = error_of(R"({"op":"power","r":1,"weights":["1/2","1/3"]})");
  EXPECT_EQ(e.code(), ErrorCode::WeightSumError);
  EXPECT_EQ(e.detail(), "/weights");

  e = error_of(R"({"op":"state_weighted","side":"m","lambda":{"b":1,"c":1,"d":4,"kappa":"1/2"}})");
  EXPECT_EQ(e.code(), ErrorCode::InvalidParams);
  EXPECT_EQ(e.detail(), "c>1");

  e = error_of("[1,2]");
  EXPECT_EQ(e.code(), ErrorCode::SchemaError);
  e = error_of("{not json");
  EXPECT_EQ(e.code(), ErrorCode::SchemaError);
}
