#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <fstream>
#include <limits>

#include "kdvlab/config.hpp"
#include "kdvlab/csv.hpp"
#include "kdvlab/error.hpp"

using namespace kdvlab;
using config::Config;

namespace {

std::string temp_path(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "kdvlab_test_config_csv";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("config grammar") {
  const auto cfg = Config::parse(
      "# survey\n"
      "\n"
      "scheme = sbdf2   # trailing comment\n"
      "dt = 0.00324, 0.00609\n"
      "  n=256\n"
      "track_error = yes\n"
      "out.dir = results\n");
  CHECK(cfg.get("scheme") == "sbdf2");
  CHECK(cfg.get_doubles("dt") == std::vector<double>{0.00324, 0.00609});
  CHECK(cfg.get_int("n", 0) == 256);
  CHECK(cfg.get_bool("track_error", false));
  CHECK(cfg.get("out.dir") == "results");
  CHECK(cfg.get_list("scheme") == std::vector<std::string>{"sbdf2"});
  CHECK(cfg.get_ints("n", {}) == std::vector<int>{256});
  CHECK(cfg.entries().size() == 5);
}

TEST_CASE("config fallbacks") {
  const auto cfg = Config::parse("a = 1\n");
  CHECK(cfg.get("b", "x") == "x");
  CHECK(cfg.get_double("b", 2.5) == 2.5);
  CHECK(cfg.get_int("b", 7) == 7);
  CHECK_FALSE(cfg.get_bool("b", false));
  CHECK(cfg.get_doubles("b", {1.0}) == std::vector<double>{1.0});
  CHECK(kind_of([&] { cfg.get("b"); }) == ErrorKind::Config);
}

TEST_CASE("config errors carry the line") {
  auto message = [](const std::string& text) {
    try {
      Config::parse(text, "run.cfg");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Config);
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK_THAT(message("a = 1\nno equals sign\n"), Catch::Matchers::ContainsSubstring("run.cfg:2"));
  CHECK_THAT(message("a = 1\n\nBad-Key = 2\n"), Catch::Matchers::ContainsSubstring("run.cfg:3"));
  const auto dup = message("dt = 1\n# x\ndt = 2\n");
  CHECK_THAT(dup, Catch::Matchers::ContainsSubstring("run.cfg:3"));
  CHECK_THAT(dup, Catch::Matchers::ContainsSubstring("run.cfg:1"));

  const auto cfg = Config::parse("dt = 0.1, abc\nn = 2.5\nflag = maybe\nempty = 1,,2\nblank =\ntrail = 1,\n", "run.cfg");
  try {
    cfg.get_doubles("dt");
    FAIL("expected a number error");
  } catch (const Error& e) {
    CHECK_THAT(std::string(e.what()), Catch::Matchers::ContainsSubstring("run.cfg:1"));
  }
  CHECK(kind_of([&] { cfg.get_int("n", 0); }) == ErrorKind::Config);
  CHECK(kind_of([&] { cfg.get_bool("flag", false); }) == ErrorKind::Config);
  CHECK(kind_of([&] { cfg.get_list("empty"); }) == ErrorKind::Config);
  CHECK(kind_of([&] { cfg.get_list("blank"); }) == ErrorKind::Config);
  CHECK(kind_of([&] { cfg.get_list("trail"); }) == ErrorKind::Config);
}

TEST_CASE("overrides") {
  auto cfg = Config::parse("dt = 0.1\n");
  cfg.set("dt", " 0.2 ");
  cfg.set_assignment("scheme=rk222");
  CHECK(cfg.get_double("dt") == 0.2);
  CHECK(cfg.get("scheme") == "rk222");
  CHECK(kind_of([&] { cfg.set_assignment("novalue"); }) == ErrorKind::Config);
  CHECK(kind_of([&] { cfg.set("Upper", "1"); }) == ErrorKind::Config);
  cfg.set("n", "x");
  try {
    cfg.get_int("n", 0);
  } catch (const Error& e) {
    CHECK_THAT(std::string(e.what()), Catch::Matchers::ContainsSubstring("override"));
  }
}

TEST_CASE("canonical form ignores order, spacing and comments") {
  const auto a = Config::parse("b = 2\na = 1 # one\n");
  const auto b = Config::parse("a=1\n\n   b=2\n");
  CHECK(a.canonical() == "a=1\nb=2\n");
  CHECK(a.canonical() == b.canonical());
  CHECK(csv::fnv1a(a.canonical()) == csv::fnv1a(b.canonical()));
}

TEST_CASE("config files") {
  const auto path = temp_path("run.cfg");
  {
    std::ofstream f(path);
    f << "scheme = sbdf1\nbad line\n";
  }
  try {
    Config::load(path);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
    CHECK_THAT(std::string(e.what()), Catch::Matchers::ContainsSubstring(path + ":2"));
  }
  CHECK(kind_of([] { Config::load("/nonexistent/dir/x.cfg"); }) == ErrorKind::Io);
}

TEST_CASE("fnv1a and number formatting") {
  // reference values of the 64-bit FNV-1a hash
  CHECK(csv::fnv1a("") == 0xcbf29ce484222325ull);
  CHECK(csv::fnv1a("a") == 0xaf63dc4c8601ec8cull);
  CHECK(csv::fnv1a("foobar") == 0x85944171f73967e8ull);
  CHECK(csv::hex(0xabcull) == "0000000000000abc");

  CHECK(csv::format(0.1) == "0.10000000000000001");
  CHECK(csv::format(1.0) == "1");
  CHECK(csv::format(-2.0 / 3.0) == "-0.66666666666666663");
  CHECK(csv::format(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(csv::format(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(csv::format(42) == "42");
  CHECK(csv::format(12345678901234ll) == "12345678901234");
  for (double v : {0.1, 1.0 / 3.0, 5471.084, 6.02214076e23, 1e-310}) {
    CHECK(std::strtod(csv::format(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("csv writer layout") {
  const auto path = temp_path("trace.csv");
  csv::Writer w(path, "trace", "00000000000000ff", {"t", "l2_norm"});
  w.meta("scheme", "sbdf2");
  w.row({csv::format(0.0), csv::format(0.1)});
  CHECK(kind_of([&] { w.meta("late", "x"); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([&] { w.row({"1"}); }) == ErrorKind::InvalidArgument);
  w.row({csv::format(1.0), "nan"});
  w.close();
  CHECK(slurp(path) ==
        "# kdvlab 1.0.0 schema=trace config=00000000000000ff\n"
        "# scheme=sbdf2\n"
        "t,l2_norm\n"
        "0,0.10000000000000001\n"
        "1,nan\n");
}

TEST_CASE("csv round trip") {
  const auto path = temp_path("round.csv");
  {
    csv::Writer w(path, "demo", "0", {"a", "b", "c"});
    w.row({"1", "", "x"});
    w.row({"2", "3", ""});
    w.close();
  }
  const auto t = csv::read(path);
  CHECK(t.meta.size() == 1);
  CHECK(t.meta[0] == "kdvlab 1.0.0 schema=demo config=0");
  CHECK(t.columns == std::vector<std::string>{"a", "b", "c"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0] == std::vector<std::string>{"1", "", "x"});
  CHECK(t.rows[1] == std::vector<std::string>{"2", "3", ""});
  CHECK(t.column("c") == 2);
  CHECK_THROWS_AS(t.column("d"), Error);

  const auto empty = temp_path("empty.csv");
  {
    csv::Writer w(empty, "demo", "0", {"a"});
    w.close();
  }
  CHECK(csv::read(empty).rows.empty());
  CHECK(csv::read(empty).columns == std::vector<std::string>{"a"});

  const auto ragged = temp_path("ragged.csv");
  {
    std::ofstream f(ragged);
    f << "a,b\n1,2,3\n";
  }
  CHECK(kind_of([&] { csv::read(ragged); }) == ErrorKind::Io);
  CHECK(kind_of([] { csv::read("/nonexistent/file.csv"); }) == ErrorKind::Io);
  CHECK(kind_of([] { csv::Writer("/nonexistent/dir/out.csv", "x", "0", {"a"}); }) == ErrorKind::Io);
}
