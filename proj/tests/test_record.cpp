#include <comprun/record.hpp>

#include <gtest/gtest.h>

#include <random>
#include <string>

namespace comprun {
namespace {

OutputRecord sample_record() {
  OutputRecord r;
  r.command = "exact";
  r.params = {{"n", "10"}, {"k_max", "11"}};
  r.meta = {{"version", "1.0.0"}, {"timestamp", "none"}};
  r.columns = {"n", "k", "count"};
  r.add_row({"10", "2", "124"});
  r.add_row({"10", "3", "380"});
  return r;
}

TEST(Record, CsvLayout) {
  const std::string text = emit_csv(sample_record());
  EXPECT_EQ(text,
            "# schema=composition-runs/v1\n"
            "# command=exact\n"
            "# param.k_max=11\n"
            "# param.n=10\n"
            "# meta.timestamp=none\n"
            "# meta.version=1.0.0\n"
            "n,k,count\n"
            "10,2,124\n"
            "10,3,380\n");
}

TEST(Record, JsonLayout) {
  const auto j = to_json(sample_record());
  EXPECT_EQ(j["schema"], "composition-runs/v1");
  EXPECT_EQ(j["rows"][0][2], "124");
  EXPECT_EQ(j["params"]["n"], "10");
}

TEST(Record, QuotingRoundTrip) {
  OutputRecord r = sample_record();
  r.add_row({"a,b", "say \"hi\"", "two\nlines"});
  r.add_row({"#not-meta", "", "\r"});
  EXPECT_EQ(parse_csv(emit_csv(r)), r);
  EXPECT_EQ(parse_json(emit_json(r)), r);
}

TEST(Record, RoundTripProperty) {
  std::mt19937_64 rng(77);
  const std::string alphabet = "abc019.,-\"# \n=e";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::uniform_int_distribution<std::size_t> len(0, 8);
  auto random_cell = [&] {
    std::string s;
    for (std::size_t i = len(rng); i > 0; --i) s += alphabet[pick(rng)];
    return s;
  };
  auto random_token = [&] {
    std::string s = "k";
    for (std::size_t i = len(rng); i > 0; --i) s += "abc019"[pick(rng) % 6];
    return s;
  };
  for (int trial = 0; trial < 300; ++trial) {
    OutputRecord r;
    r.command = random_token();
    for (int i = 0; i < 3; ++i) r.params[random_token()] = random_token();
    r.meta["version"] = random_token();
    const std::size_t width = 1 + len(rng) % 5;
    for (std::size_t c = 0; c < width; ++c) r.columns.push_back(random_token());
    for (std::size_t row = len(rng); row > 0; --row) {
      std::vector<std::string> cells;
      for (std::size_t c = 0; c < width; ++c) cells.push_back(random_cell());
      r.add_row(cells);
    }
    ASSERT_EQ(parse_csv(emit_csv(r)), r) << emit_csv(r);
    ASSERT_EQ(parse_json(emit_json(r)), r);
  }
}

TEST(Record, RejectsRaggedRows) {
  OutputRecord r = sample_record();
  EXPECT_THROW(r.add_row({"1"}), Error);
  EXPECT_THROW(parse_csv("# schema=composition-runs/v1\na,b\n1\n"), Error);
}

TEST(Record, ParseErrors) {
  auto code_of = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::numeric;
  };
  EXPECT_EQ(code_of([] { parse_csv("a,b\n1,2\n"); }), ErrorCode::parse_error);
  EXPECT_EQ(code_of([] { parse_csv("# schema=other/v9\na\n"); }), ErrorCode::parse_error);
  EXPECT_EQ(code_of([] { parse_csv("# schema=composition-runs/v1\n\"open\n"); }), ErrorCode::parse_error);
  EXPECT_EQ(code_of([] { parse_json("{not json"); }), ErrorCode::parse_error);
  EXPECT_EQ(code_of([] { parse_json(R"({"schema":"composition-runs/v1"})"); }), ErrorCode::parse_error);
  EXPECT_EQ(code_of([] { parse_json(R"({"schema":"x"})"); }), ErrorCode::parse_error);
}

TEST(Record, EmitDispatch) {
  const auto r = sample_record();
  EXPECT_EQ(emit(r, OutputFormat::csv), emit_csv(r));
  EXPECT_EQ(emit(r, OutputFormat::json), emit_json(r));
}

}  // namespace
}  // namespace comprun
