#include <gtest/gtest.h>

#include "sparsemult/io.hpp"

using namespace sparsemult;

namespace {

const char* kCubic = R"({
  "points": [0, 1, 2, 3],
  "C": [["-1", "3", "-3", "1"]]
})";

}  // namespace

TEST(ParseInput, CubicExample) {
    auto in = parse_input_text(kCubic);
    EXPECT_EQ(in.config.n, 1);
    EXPECT_EQ(in.config.m, 2);
    ASSERT_TRUE(in.C);
    EXPECT_EQ(*in.C, (RationalMatrix{{-1, 3, -3, 1}}));
    EXPECT_FALSE(in.B);
}

TEST(ParseInput, OptionalMatricesAndRationals) {
    auto in = parse_input_text(R"({"points": [[0,0],[1,0],[0,1]],
        "C": [["1/2", "-1/2", "0"], [1, 0, -1]],
        "B": [], "D": [["1"], ["1"], ["1"]]})");
    EXPECT_EQ((*in.C)(0, 0), Rational(1, 2));
    EXPECT_EQ((*in.C)(1, 0), 1);
    ASSERT_TRUE(in.D);
    EXPECT_EQ(in.D->cols(), 1u);
}

TEST(ParseInput, MalformedJsonReportsPosition) {
    try {
        parse_input_text("{\n  \"points\": [0, 1,,]\n}");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        std::string msg = e.what();
        EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
        EXPECT_NE(msg.find("column"), std::string::npos) << msg;
    }
    EXPECT_THROW(parse_input_text("[1, 2]"), ParseError);
    EXPECT_THROW(parse_input_text(R"({"C": [[1]]})"), ParseError);
    EXPECT_THROW(parse_input_text(R"({"points": [0, 1], "C": [["x"]]})"), ParseError);
}

TEST(ParseInput, Validation) {
    EXPECT_THROW(parse_input_text(R"({"points": [0, 1, 2], "C": [["1", "-1"]]})"), ValidationError);
    EXPECT_THROW(parse_input_text(R"({"points": [[0,0],[1,0],[0,1],[1,1]], "C": [[1,-1,0,0],[2,-2,0,0]]})"),
                 ValidationError);
    EXPECT_THROW(parse_input_text(R"({"points": [0, 1, 1]})"), DuplicatePoint);
}

TEST(Json, RationalsAsStrings) {
    EXPECT_EQ(to_json(Rational(1, 2)).dump(), "\"1/2\"");
    EXPECT_EQ(to_json(Rational(-4, 2)).dump(), "\"-2\"");
    EXPECT_EQ(emit_json(Json{{"covolume", to_json(Rational(1, 2))}}), "{\n  \"covolume\": \"1/2\"\n}\n");
}

TEST(Json, RoundTripIsByteIdentical) {
    for (const char* text : {kCubic, R"({"points": [[0,0],[1,1],[2,4],[3,9]],
                                         "C": [["1","-2","1","0"],["1","-3","3","-1"]],
                                         "D": [["1","0"],["1","1/2"],["1","1"],["1","3/2"]]})"}) {
        std::string first = emit_json(input_json(parse_input_text(text)));
        std::string second = emit_json(input_json(parse_input_text(first)));
        EXPECT_EQ(first, second);
    }
}

TEST(Json, KeysAreSorted) {
    Json j;
    j["zeta"] = 1;
    j["alpha"] = 2;
    EXPECT_EQ(j.dump(), "{\"alpha\":2,\"zeta\":1}");
}

TEST(Inline, Parsing) {
    EXPECT_EQ(parse_points_inline("0,1,2,3"), (std::vector<Exponent>{{0}, {1}, {2}, {3}}));
    EXPECT_EQ(parse_points_inline("0,0;1,0;0,1"), (std::vector<Exponent>{{0, 0}, {1, 0}, {0, 1}}));
    EXPECT_THROW(parse_points_inline("0,1/2"), ParseError);
    EXPECT_EQ(parse_matrix_inline("1,-2,1;0,1/3,-1/3"), (RationalMatrix{{1, -2, 1}, {0, Rational(1, 3), Rational(-1, 3)}}));
    EXPECT_THROW(parse_matrix_inline("1,2;3"), ShapeError);
    EXPECT_EQ(parse_vector_inline("1,-1/2"), (std::vector<Rational>{1, Rational(-1, 2)}));
}

TEST(Render, Table) {
    Json r;
    r["multiplicity"] = 3;
    EXPECT_EQ(render_table(r), "multiplicity: 3\n");
    Json nested;
    nested["a"] = Json{{"b", "1/2"}, {"c", true}};
    nested["list"] = Json::array({Json{{"x", 1}}});
    nested["row"] = Json::array({1, 2});
    EXPECT_EQ(render_table(nested), "a:\n  b: 1/2\n  c: yes\nlist:\n  -\n    x: 1\nrow: [1, 2]\n");
}
