#include <gtest/gtest.h>

#include "treepack/documents.hpp"

using namespace treepack;

namespace {

ErrorKind kind_of(const std::string& text) {
  try {
    parse_family(text);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "parsed: " << text;
  return ErrorKind::ValidationError;
}

}  // namespace

TEST(FamilyDocument, FourVertexFamily) {
  const auto f = parse_family(R"({"n":4,"trees":[[0],[0,0],[0,0,1],[0,0,1,1]]})");
  EXPECT_EQ(f.n(), 4u);
  EXPECT_EQ(f.tree(3).map(), Mapping(std::vector<Vertex>{0, 0, 1, 1}));
}

TEST(FamilyDocument, Singleton) {
  EXPECT_EQ(parse_family(R"({"n":1,"trees":[[0]]})"), star_family(1));
}

TEST(FamilyDocument, Errors) {
  EXPECT_EQ(kind_of(R"({"n":3,"trees":[[0],[0,0]]})"), ErrorKind::ValidationError);
  EXPECT_EQ(kind_of(R"({"n":2,"trees":[[0],[0,1]]})"), ErrorKind::ValidationError);
  EXPECT_EQ(kind_of(R"({"n":2,"trees":[[0],[0]]})"), ErrorKind::ValidationError);
  EXPECT_EQ(kind_of(R"({"n":2,"trees":[[0],[0,"a"]]})"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of(R"({"n":2})"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of("{\"n\":2,\n\"trees\": [[0],\n[0,0]"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of("[]"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of(R"({"n":-1,"trees":[]})"), ErrorKind::ValidationError);
}

TEST(FamilyDocument, DiagnosticsNameLineAndField) {
  try {
    parse_family("{\"n\":2,\n\"trees\": [[0],\n[0,0]");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  try {
    parse_family(R"({"n":2,"trees":[[0],[0,true]]})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("trees[1][1]"), std::string::npos) << e.what();
  }
  try {
    parse_family(R"({"n":3,"trees":[[0],[0,0],[0,0,2]]})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("parent must be below child"), std::string::npos);
  }
}

TEST(FamilyDocument, RoundTripEveryFamilyAtFive) {
  for (const auto& f : FamilyEnumerator(5)) ASSERT_EQ(parse_family(emit_family(f)), f);
}

TEST(LabelingDocument, RoundTripAndErrors) {
  const Labeling l({Mapping(std::vector<Vertex>{2, 0, 1}), Mapping::identity(3),
                    Mapping(std::vector<Vertex>{1, 0, 2})});
  EXPECT_EQ(parse_labeling(emit_labeling(l)), l);
  EXPECT_EQ(emit_labeling(l), "{\"n\": 3, \"sigma\": [[2, 0, 1], [0, 1, 2], [1, 0, 2]]}\n");
  EXPECT_THROW(parse_labeling(R"({"n":2,"sigma":[[0,0],[0,1]]})"), Error);
  EXPECT_THROW(parse_labeling(R"({"n":2,"sigma":[[0,1]]})"), Error);
  EXPECT_THROW(parse_labeling(R"({"n":2,"sigma":[[0,1],[0,2]]})"), Error);
}

TEST(Orientation, JsonAndDot) {
  const auto o = orientation(star_family(4), Labeling::identity(4));
  const auto json = emit_orientation(o, OrientationFormat::Json);
  EXPECT_EQ(json,
            "{\"n\": 4, \"arcs\": [[0, 0], [0, 1], [0, 2], [0, 3], [1, 1], [1, 2], [1, 3], [2, 2], "
            "[2, 3], [3, 3]]}\n");
  EXPECT_EQ(json, emit_orientation(o, OrientationFormat::Json));
  EXPECT_EQ(parse_orientation(json), o);
  const auto dot = emit_orientation(o, OrientationFormat::Dot);
  EXPECT_NE(dot.find("3 -> 3;"), std::string::npos);
  EXPECT_NE(dot.find("0 -> 2;"), std::string::npos);
  EXPECT_EQ(dot, emit_orientation(o, OrientationFormat::Dot));

  const auto one = orientation(star_family(1), Labeling::identity(1));
  EXPECT_EQ(emit_orientation(one, OrientationFormat::Json), "{\"n\": 1, \"arcs\": [[0, 0]]}\n");

  const EdgeOrientation partial(2, {{0, 0}, {1, 1}});
  EXPECT_THROW(emit_orientation(partial, OrientationFormat::Dot), Error);
}

TEST(SweepCsv, Columns) {
  const auto r = sweep(3, {});
  const auto csv = sweep_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "family-index,status,nodes,millis");
  EXPECT_NE(csv.find("\n1,Packed,"), std::string::npos);
}
