#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "augsimp/construct.hpp"
#include "augsimp/io.hpp"
#include "augsimp/rank2.hpp"
#include "json.hpp"

using namespace augsimp;
using nlohmann::json;

namespace {

Transformation t(std::vector<int> img) { return Transformation(std::move(img)); }

MonoidFile parse_monoid(const std::string& text) {
  std::istringstream in(text);
  return read_monoid_file(in);
}

SystemFile parse_system(const std::string& text) {
  std::istringstream in(text);
  return read_system_file(in);
}

struct Diag {
  std::string message;
  int line = 0;
  int column = 0;
};

template <typename F>
Diag capture(F&& f) {
  try {
    f();
  } catch (const parse_error& e) {
    return {e.what(), e.line, e.column};
  }
  return {"no error", -1, -1};
}

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const char* cli = std::getenv("AUGSIMP_CLI");
  REQUIRE_MESSAGE(cli != nullptr, "AUGSIMP_CLI must point at the binary");
  return [&] {
    std::string cmd = std::string(cli) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult res;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
    int status = pclose(pipe);
    res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
  }();
}

std::string data_file(const std::string& name) {
  const char* dir = std::getenv("AUGSIMP_DATA");
  REQUIRE_MESSAGE(dir != nullptr, "AUGSIMP_DATA must point at the fixtures");
  return std::string(dir) + "/" + name;
}

}  // namespace

TEST_CASE("monoid text: degree line, generators, comments") {
  auto mf = parse_monoid("# header\n3\n\n2 3 1  # a cycle\n1 1 3\n");
  CHECK(mf.n == 3);
  REQUIRE(mf.generators.size() == 2);
  CHECK(mf.generators[0] == t({2, 3, 1}));
  CHECK(mf.generators[1] == t({1, 1, 3}));

  CHECK(parse_monoid("2\n").generators.empty());
}

TEST_CASE("monoid text: diagnostics carry line and column") {
  auto d = capture([] { parse_monoid("3\n1 4 2\n"); });
  CHECK(d.message == "point 4 out of range 1..3");
  CHECK(d.line == 2);
  CHECK(d.column == 3);

  d = capture([] { parse_monoid("3\n2 3\n"); });
  CHECK(d.message == "generator line has 2 entries, expected 3");
  CHECK(d.line == 2);
  CHECK(d.column == 4);

  d = capture([] { parse_monoid("x\n"); });
  CHECK(d.message == "expected an integer, got \"x\"");
  CHECK(d.line == 1);
  CHECK(d.column == 1);

  d = capture([] { parse_monoid("# nothing\n\n"); });
  CHECK(d.line == 1);

  d = capture([] { parse_monoid("0\n"); });
  CHECK(d.message == "the degree must be at least 1");
}

TEST_CASE("system text: golden render and exact round-trip") {
  auto images = make_image_system(6, 3, {{1, 2, 3}, {3, 4, 5}, {5, 6, 1}});
  std::vector<SetPartition> parts = {make_partition(6, {{1, 2, 3}, {4, 6}, {5}})};
  std::ostringstream out;
  write_system_file(out, images, parts);
  CHECK(out.str() ==
        "n 6 r 3\n"
        "images:\n"
        "1 2 3\n"
        "3 4 5\n"
        "1 5 6\n"
        "partitions:\n"
        "1 2 3 | 4 6 | 5\n");

  auto sf = parse_system(out.str());
  CHECK(sf.images.sets == images.sets);
  REQUIRE(sf.partitions.size() == 1);
  CHECK(sf.partitions[0] == parts[0]);
}

TEST_CASE("system text: every built family round-trips") {
  for (const auto& sys : {build_r3({1, 2, 4}), build_r4("nonsimple"), build_family(6, "B")}) {
    std::ostringstream out;
    write_system_file(out, sys.images, sys.partitions);
    auto sf = parse_system(out.str());
    CHECK(sf.images.sets == sys.images.sets);
    REQUIRE(sf.partitions.size() == sys.partitions.size());
    for (std::size_t i = 0; i < sf.partitions.size(); ++i)
      CHECK(sf.partitions[i] == sys.partitions[i]);
  }
}

TEST_CASE("system text: diagnostics carry line and column") {
  auto d = capture([] { parse_system("m 6 r 3\n"); });
  CHECK(d.message == "expected header \"n <n> r <r>\"");
  CHECK(d.line == 1);

  d = capture([] { parse_system("n 6 r 3\n1 2 3\n"); });
  CHECK(d.message == "expected \"images:\" section");
  CHECK(d.line == 2);

  d = capture([] {
    parse_system("n 6 r 3\nimages:\n1 2 3\n3 4 5\n5 6 1\npartitions:\n1 2 3 | 4 6\n");
  });
  CHECK(d.message == "partition has 2 blocks, expected 3");
  CHECK(d.line == 7);

  d = capture([] {
    parse_system("n 6 r 3\nimages:\n1 2 3\n3 4 5\n5 6 1\npartitions:\n1 2 3 | | 4 5 6\n");
  });
  CHECK(d.message == "empty block");
  CHECK(d.line == 7);
  CHECK(d.column == 8);

  d = capture([] {
    parse_system("n 6 r 3\nimages:\n1 2 3\n3 4 5\n5 6 1\npartitions:\n1 2 3 | 4 6 | 5 9\n");
  });
  CHECK(d.message == "point 9 out of range 1..6");
  CHECK(d.line == 7);
  CHECK(d.column == 17);

  d = capture([] { parse_system("n 6 r 3\nimages:\n1 2 3\n3 4 5\n5 6 1\n"); });
  CHECK(d.message == "expected \"partitions:\" section");
}

TEST_CASE("file kind detection") {
  CHECK(detect_file_kind("3\n2 3 1\n") == FileKind::monoid);
  CHECK(detect_file_kind("# c\nn 6 r 3\nimages:\n") == FileKind::system);
  CHECK_THROWS_AS(detect_file_kind("hello\n"), parse_error);
  CHECK_THROWS_AS(detect_file_kind("# only comments\n"), parse_error);
}

TEST_CASE("structure matrix dump golden") {
  auto m = generate_closure({t({2, 3, 1}), t({2, 1, 3}), t({1, 1, 2})}, 100);
  auto zm = zero_minimal_jclass(m);
  REQUIRE(zm.jclass.has_value());
  auto d = sandwich_data(m, *zm.jclass);
  CHECK(sandwich_dump(d) ==
        "%\t{1,2}\t{1,3}\t{1}\n"
        "%(1,2)\t0\t1\t1\n"
        "%(1,3)\t1\t0\t1\n"
        "%(2,3)\t1\tg\t0\n");
}

TEST_CASE("report JSON shape") {
  auto m = generate_closure({t({2, 3, 1}), t({2, 1, 3}), t({1, 1, 2})}, 100);
  auto j = report_json(simplicity_report(m));
  CHECK(j["verdict"] == "simple");
  CHECK(j["conditions"]["1"]["status"] == "pass");
  CHECK(j["conditions"]["5"]["status"] == "pass");
  CHECK(j["incidence_rank"] == 3);
  CHECK(j["wperp_dim"] == 0);
  CHECK(j["jclass"]["rank"] == 2);
  CHECK(j["graph"]["edges"].size() == 3);
  CHECK(j.dump().rfind("{\"verdict\":", 0) == 0);  // canonical key order

  auto dm = generate_closure({t({1, 2, 1, 2}), t({3, 4, 3, 4}), t({1, 1, 1, 1})}, 100);
  auto dj = report_json(simplicity_report(dm));
  CHECK(dj["verdict"] == "not-simple");
  CHECK(dj["conditions"]["5"]["status"] == "fail");
}

TEST_CASE("rank2 JSON shape") {
  auto m = generate_closure({t({2, 3, 1}), t({2, 1, 3}), t({1, 1, 2})}, 100);
  auto j = rank2_json(rank2_verdict(m));
  CHECK(j["rank2"]["rank"] == 2);
  CHECK(j["rank2"]["verdict"] == "simple");
  auto p = j["rank2"]["P"].get<std::string>();
  CHECK(p.rfind("%\t{1,2}", 0) == 0);
  auto pp = j["rank2"]["Pprime"].get<std::string>();
  CHECK(pp.find("-1") != std::string::npos);
}

TEST_CASE("error JSON shape") {
  auto j = error_json("parse", "boom", 3, 7);
  CHECK(j["error"]["kind"] == "parse");
  CHECK(j["error"]["message"] == "boom");
  CHECK(j["error"]["line"] == 3);
  CHECK(j["error"]["column"] == 7);

  auto plain = error_json("cli", "bad flag");
  CHECK(plain["error"].contains("line") == false);
}

TEST_CASE("cli: analyze a monoid file") {
  auto res = run_cli("analyze " + data_file("t3.monoid"));
  CHECK(res.code == 0);
  auto j = json::parse(res.out);
  CHECK(j["verdict"] == "simple");
  CHECK(j["incidence_rank"] == 3);

  auto again = run_cli("analyze " + data_file("t3.monoid"));
  CHECK(again.out == res.out);  // byte-identical across runs
}

TEST_CASE("cli: analyze rejects groups with a structured error") {
  auto res = run_cli("analyze " + data_file("group.monoid"));
  CHECK(res.code == 1);
  auto j = json::parse(res.out);
  CHECK(j["error"]["kind"] == "group-input");
}

TEST_CASE("cli: malformed files exit 2 with line and column") {
  auto res = run_cli("analyze " + data_file("bad.monoid"));
  CHECK(res.code == 2);
  auto j = json::parse(res.out);
  CHECK(j["error"]["kind"] == "parse");
  CHECK(j["error"]["line"] == 2);
  CHECK(j["error"]["column"] == 3);

  res = run_cli("analyze " + data_file("bad.system"));
  CHECK(res.code == 2);
  j = json::parse(res.out);
  CHECK(j["error"]["message"] == "partition has 2 blocks, expected 3");
  CHECK(j["error"]["line"] == 7);

  res = run_cli("analyze no_such_file.monoid");
  CHECK(res.code == 2);

  res = run_cli("analyze --bogus " + data_file("t3.monoid"));
  CHECK(res.code == 2);
  j = json::parse(res.out);
  CHECK(j["error"]["kind"] == "cli");
}

TEST_CASE("cli: not-simple verdicts still exit 0") {
  auto res = run_cli("analyze " + data_file("disconnected.monoid"));
  CHECK(res.code == 0);
  auto j = json::parse(res.out);
  CHECK(j["verdict"] == "not-simple");

  auto r2 = run_cli("rank2 " + data_file("disconnected.monoid"));
  CHECK(r2.code == 0);
  auto k = json::parse(r2.out);
  CHECK(k["rank2"]["rank"] == 1);
  CHECK(k["rank2"]["verdict"] == "not-simple");
}

TEST_CASE("cli: rank2 wants a monoid file") {
  auto res = run_cli("rank2 " + data_file("bad.system"));
  CHECK(res.code == 2);
}

TEST_CASE("cli: incompatible systems are analysis failures, not parse failures") {
  auto res = run_cli("analyze " + data_file("incompatible.system"));
  CHECK(res.code == 1);
  auto j = json::parse(res.out);
  CHECK(j["error"]["kind"] == "invalid-system");

  auto enu = run_cli("analyze --enumerate " + data_file("incompatible.system"));
  CHECK(enu.code == 1);
  auto k = json::parse(enu.out);
  CHECK(k["error"]["kind"] == "closure-violation");
}

TEST_CASE("cli: closure cap from flag and environment") {
  auto res = run_cli("analyze --cap 5 " + data_file("t3.monoid"));
  CHECK(res.code == 1);
  auto j = json::parse(res.out);
  CHECK(j["error"]["kind"] == "cap-overflow");

  const char* cli = std::getenv("AUGSIMP_CLI");
  REQUIRE(cli != nullptr);
  {
    std::string cmd = "AUGSIMP_CAP=5 " + std::string(cli) + " analyze " +
                      data_file("t3.monoid") + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int code = WEXITSTATUS(pclose(pipe));
    CHECK(code == 1);
    CHECK(json::parse(out)["error"]["kind"] == "cap-overflow");
  }
  // explicit flag beats the environment
  {
    std::string cmd = "AUGSIMP_CAP=5 " + std::string(cli) + " analyze --cap 100 " +
                      data_file("t3.monoid") + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    CHECK(WEXITSTATUS(pclose(pipe)) == 0);
  }
}

TEST_CASE("cli: construct without --out prints the system file") {
  auto res = run_cli("construct --family r3");
  CHECK(res.code == 0);
  CHECK(res.out.rfind("# family r3", 0) == 0);
  CHECK(detect_file_kind(res.out) == FileKind::system);
  auto sf = parse_system(res.out);
  CHECK(sf.images.n == 6);
  CHECK(sf.partitions.size() == 4);

  auto sel = run_cli("construct --family r3 --selection 1,2,4");
  auto sf2 = parse_system(sel.out);
  CHECK(sf2.partitions.size() == 3);
}

TEST_CASE("cli: construct with --out round-trips through analyze verbatim") {
  std::string path = "io_roundtrip.system";
  auto made = run_cli("construct --family general --r 5 --variant Bprime --out " + path);
  CHECK(made.code == 0);
  auto j = json::parse(made.out);
  CHECK(j["verdict"] == "not-simple");
  CHECK(j["wperp_dim"].get<int>() >= 1);

  auto reread = run_cli("analyze " + path);
  CHECK(reread.code == 0);
  CHECK(reread.out == made.out);  // construct -> file -> analyze, byte for byte
  std::remove(path.c_str());
}

TEST_CASE("cli: construct twelve-point examples") {
  auto simple = run_cli("construct --family r4 --example simple --out io_r4.system");
  CHECK(simple.code == 0);
  CHECK(json::parse(simple.out)["incidence_rank"] == 12);

  auto nons = run_cli("construct --family r4 --example nonsimple --out io_r4.system");
  CHECK(json::parse(nons.out)["incidence_rank"] == 10);
  CHECK(json::parse(nons.out)["verdict"] == "not-simple");
  std::remove("io_r4.system");
}

TEST_CASE("cli: construct --enumerate analyzes the materialized monoid") {
  auto res = run_cli("construct --family r3 --selection 1,2,3 --enumerate --out io_enum.system");
  CHECK(res.code == 0);
  auto j = json::parse(res.out);
  CHECK(j["verdict"] == "simple");
  CHECK(j["incidence_rank"] == 6);
  CHECK(j["jclass"]["rank"] == 3);
  std::remove("io_enum.system");
}

TEST_CASE("cli: construct flag validation") {
  CHECK(run_cli("construct --family general --r 4").code == 2);
  CHECK(run_cli("construct --family nope").code == 2);
  CHECK(run_cli("construct --family r3 --selection 7").code == 2);
}

TEST_CASE("cli: oracle falsifier") {
  auto res = run_cli("oracle --falsify " + data_file("disconnected.monoid"));
  CHECK(res.code == 0);
  auto j = json::parse(res.out);
  CHECK(j["falsifier"]["found"] == true);
  CHECK(j["falsifier"]["vector"].size() == 4);
  CHECK(j["falsifier"]["span_dim"].get<int>() >= 1);

  auto none = run_cli("oracle --falsify " + data_file("t3.monoid"));
  CHECK(none.code == 0);
  CHECK(json::parse(none.out)["falsifier"]["found"] == false);

  CHECK(run_cli("oracle").code == 2);
}

TEST_CASE("cli: oracle admissible enumeration") {
  auto made = run_cli("construct --family r3 --out io_adm.system");
  CHECK(made.code == 0);
  auto res = run_cli("oracle --enumerate-admissible io_adm.system");
  CHECK(res.code == 0);
  auto j = json::parse(res.out);
  CHECK(j["admissible"]["count"] == 4);
  CHECK(j["admissible"]["partitions"].size() == 4);
  std::remove("io_adm.system");
}
