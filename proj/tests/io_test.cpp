#include <gtest/gtest.h>

#include <string>

#include "fixtures.hpp"
#include "mrta/error.hpp"
#include "mrta/io.hpp"
#include "mrta/scheduler.hpp"

namespace {

using namespace mrta;

const char* kMinimal =
    "NAME : tiny\n"
    "TYPE : HFMDVRP-DV\n"
    "PICKING : 1\n"
    "STATIONS : 1\n"
    "ROBOTS : 1\n"
    "EDGE_WEIGHT_TYPE : MAN_2D\n"
    "NODE_COORD_SECTION\n"
    "1 3 0\n"
    "2 5 0\n"
    "DEMAND_SECTION\n"
    "1 5\n"
    "STATION_SECTION\n"
    "2\n"
    "-1\n"
    "ROBOT_SECTION\n"
    "1 0 0 10 1.0\n"
    "EOF\n";

ParseError parse_error_of(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no ParseError for:\n" << text;
  return ParseError(0, 0, "none");
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto at = text.find(from);
  EXPECT_NE(at, std::string::npos) << from;
  return text.replace(at, from.size(), to);
}

TEST(ParseInstance, MinimalExtendedFile) {
  Instance expected = fixtures::single_pick();
  expected.name = "tiny";
  EXPECT_EQ(parse_instance(kMinimal), expected);
}

TEST(ParseInstance, QuotedModelNameAndCrlf) {
  std::string text = replace(kMinimal, "1 0 0 10 1.0\n", "1 0 0 10 1.5 \"Fetch Freight 100\"\n");
  std::string crlf;
  for (char c : text) crlf += c == '\n' ? std::string("\r\n") : std::string(1, c);
  const Instance inst = parse_instance(crlf);
  EXPECT_EQ(inst.robots[0].model_name, "Fetch Freight 100");
  EXPECT_EQ(inst.robots[0].speed, 1.5);
}

TEST(ParseInstance, ClassicCvrpWithDepotSection) {
  const char* text =
      "NAME : X-n4-k2\n"
      "COMMENT : tiny\n"
      "TYPE : CVRP\n"
      "DIMENSION : 4\n"
      "EDGE_WEIGHT_TYPE : EUC_2D\n"
      "CAPACITY : 30\n"
      "NODE_COORD_SECTION\n"
      "1 10 10\n"
      "2 0 0\n"
      "3 5 5\n"
      "4 20 20\n"
      "DEMAND_SECTION\n"
      "1 0\n"
      "2 7\n"
      "3 8\n"
      "4 9\n"
      "DEPOT_SECTION\n"
      "1\n"
      "-1\n"
      "EOF\n";
  const Instance inst = parse_instance(text);
  EXPECT_EQ(inst.family, Family::XMT);
  ASSERT_EQ(inst.tasks.size(), 3u);
  EXPECT_EQ(inst.tasks[0].pos, (Point{0, 0}));
  EXPECT_EQ(inst.tasks[2].demand, 9);
  ASSERT_EQ(inst.stations.size(), 1u);
  EXPECT_EQ(inst.stations[0].pos, (Point{10, 10}));
  ASSERT_EQ(inst.robots.size(), 2u);
  for (const Robot& r : inst.robots) {
    EXPECT_EQ(r.start, (Point{10, 10}));
    EXPECT_EQ(r.max_capacity, 30);
    EXPECT_EQ(r.speed, 1.0);
  }
}

TEST(ParseInstance, RobotCountMismatch) {
  const ParseError e = parse_error_of(replace(kMinimal, "ROBOTS : 1", "ROBOTS : 3"));
  EXPECT_NE(std::string(e.what()).find("robot count mismatch"), std::string::npos) << e.what();
}

TEST(ParseInstance, ReportsLineAndColumn) {
  const ParseError e = parse_error_of(replace(kMinimal, "1 3 0\n", "1 3 zero\n"));
  EXPECT_EQ(e.line(), 8u);
  EXPECT_EQ(e.column(), 5u);
}

TEST(ParseInstance, Rejections) {
  parse_error_of(replace(kMinimal, "EOF\n", ""));
  parse_error_of(replace(kMinimal, "EOF\n", "EOF\n1 2 3\n"));
  parse_error_of(replace(kMinimal, "MAN_2D", "EUC_2D"));
  parse_error_of(replace(kMinimal, "NAME : tiny\n", "NAME : tiny\nNAME : again\n"));
  parse_error_of(replace(kMinimal, "DEMAND_SECTION", "WEIRD_SECTION"));
  parse_error_of(replace(kMinimal, "1 5\n", "1 50\n"));  // exceeds every capacity
  parse_error_of(replace(kMinimal, "1 0 0 10 1.0", "1 0 0 10 -1"));
  parse_error_of(replace(kMinimal, "2\n-1\n", "1\n-1\n"));
  parse_error_of("");
}

TEST(WriteInstance, RoundTrips) {
  Rng rng(4);
  for (int round = 0; round < 50; ++round) {
    Instance inst = fixtures::random_instance(rng, rng.below(30), 1 + rng.below(5), 1 + rng.below(4), 1000);
    inst.name = "round trip " + std::to_string(round);
    if (round % 2) inst.robots[0].model_name = "MiR 200";
    const std::string text = write_instance(inst);
    const Instance back = parse_instance(text);
    ASSERT_EQ(back, inst);
    ASSERT_EQ(write_instance(back), text);
  }
}

TEST(WriteInstance, RefusesUnrepresentableNames) {
  Instance inst = fixtures::single_pick();
  inst.robots[0].model_name = "say \"hi\"";
  EXPECT_THROW(write_instance(inst), Error);
  inst = fixtures::single_pick();
  inst.name = "two\nlines";
  EXPECT_THROW(write_instance(inst), Error);
}

TEST(Solution, RoundTrips) {
  const Instance inst = fixtures::split_pair();
  Solution sol = solve(inst);
  sol.seed = 0xfeedfacecafebeefULL;
  const std::string text = write_solution(sol);
  EXPECT_NE(text.find("\"P1\""), std::string::npos);
  EXPECT_EQ(parse_solution(text), sol);
}

TEST(Solution, EmptyRoutes) {
  Solution sol;
  sol.routes.resize(3);
  sol.algorithm = "done-cpta";
  EXPECT_EQ(parse_solution(write_solution(sol)), sol);
}

TEST(Solution, Rejections) {
  EXPECT_THROW(parse_solution("{"), ParseError);
  EXPECT_THROW(parse_solution("[]"), ParseError);
  Solution sol;
  sol.routes = {{RouteStep::pick(TaskId(1))}};
  const std::string good = write_solution(sol);
  EXPECT_THROW(parse_solution(replace(good, "\"P1\"", "\"Q1\"")), ParseError);
  EXPECT_THROW(parse_solution(replace(good, "\"P1\"", "\"P0\"")), ParseError);
  EXPECT_THROW(parse_solution(replace(good, "mrta-solution", "other")), ParseError);
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(5.0), "5.0");
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(ParseCatalog, ReadsEntries) {
  const auto cat = parse_catalog("model_name,capacity,speed\n# comment\nA,17,1.2\nB B,1500,2\n");
  ASSERT_EQ(cat.size(), 2u);
  EXPECT_EQ(cat[1], (RobotCatalogEntry{"B B", 1500, 2.0}));
  EXPECT_THROW(parse_catalog("model_name,capacity,speed\nA,0,1\n"), ParseError);
  EXPECT_THROW(parse_catalog("model_name,capacity,speed\n"), ParseError);
  EXPECT_THROW(parse_catalog("name,cap\nA,1\n"), ParseError);
}

TEST(ParseInstance, ArbitraryBytesNeverCrash) {
  Rng rng(77);
  const std::string seed_text = kMinimal;
  for (int round = 0; round < 3000; ++round) {
    std::string text = seed_text;
    const int edits = 1 + static_cast<int>(rng.below(6));
    for (int e = 0; e < edits; ++e) {
      const std::size_t at = rng.below(text.size() + 1);
      switch (rng.below(3)) {
        case 0: text.insert(at, 1, static_cast<char>(rng.below(256))); break;
        case 1: if (at < text.size()) text.erase(at, 1); break;
        default: if (at < text.size()) text[at] = static_cast<char>(rng.below(256)); break;
      }
    }
    try {
      const Instance inst = parse_instance(text);
      ASSERT_TRUE(validate_instance(inst).ok());
    } catch (const ParseError&) {
    }
  }
  for (int round = 0; round < 500; ++round) {
    std::string text(rng.below(200), '\0');
    for (char& c : text) c = static_cast<char>(rng.below(256));
    EXPECT_THROW(parse_instance(text), ParseError);
    EXPECT_THROW(parse_solution(text), ParseError);
  }
}

}  // namespace
