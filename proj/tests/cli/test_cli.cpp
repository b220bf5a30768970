#include <doctest.h>

#include "gshift_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using gshift::cli::Json;

namespace {

namespace fs = std::filesystem;

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "gshift");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = gshift::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name)
{
    const auto p = fs::temp_directory_path() / ("gshift_cli_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string write(const fs::path& p, const std::string& text)
{
    std::ofstream(p) << text;
    return p.string();
}

std::string slurp(const fs::path& p)
{
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
}

} // namespace

TEST_CASE("check-fep on full:2 at radius 2")
{
    const auto r = run({"check-fep", "--spec", "full:2", "--radius", "2"});
    CHECK(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j["ok"] == true);
    CHECK(j["checked"].get<long>() > 0);
}

TEST_CASE("schema errors exit 2 and name the key")
{
    const auto dir = scratch("schema");
    SUBCASE("malformed JSON")
    {
        const auto r = run({"tile", "--config", write(dir / "a.json", "{\"hom\": {\"n0\": 6,}}")});
        CHECK(r.code == 2);
        CHECK(r.err.find("/hom") != std::string::npos);
    }
    SUBCASE("wrong type")
    {
        const auto r = run({"tile", "--config", write(dir / "b.json", "{\"hom\": {\"n0\": \"six\"}}")});
        CHECK(r.code == 2);
        CHECK(r.err.find("/hom/n0") != std::string::npos);
    }
    SUBCASE("unknown key")
    {
        const auto r = run({"tile", "--config", write(dir / "c.json", "{\"sample\": {\"windw\": 5}}")});
        CHECK(r.code == 2);
        CHECK(r.err.find("/sample/windw") != std::string::npos);
    }
    SUBCASE("unknown spec")
    {
        const auto r = run({"hom", "--config", write(dir / "d.json", "{\"target\": \"nope\"}")});
        CHECK(r.code == 2);
        CHECK(r.err.find("/target") != std::string::npos);
    }
    SUBCASE("bad flag")
    {
        CHECK(run({"tile", "--n0", "zero"}).code == 2);
        CHECK(run({}).code == 2);
        CHECK(run({"--help"}).code == 0);
    }
}

TEST_CASE("resource caps exit 3")
{
    const auto dir = scratch("caps");
    const auto r = run({"tile", "--config", write(dir / "c.json", "{\"caps\": {\"max_cells\": 1000}}"), "--out",
                        (dir / "out").string()});
    CHECK(r.code == 3);
}

TEST_CASE("entropy command JSON")
{
    const auto r = run({"entropy", "--spec", "hardsquare-safe", "--method", "transfer", "--width", "8"});
    REQUIRE(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j["bound_kind"] == "estimate");
    CHECK(j["shape"] == "cylinder width 8");
    CHECK(j["value"].get<double>() == doctest::Approx(0.4075405).epsilon(1e-7));
    CHECK(j["lower"].get<double>() <= j["value"].get<double>());
    CHECK(j["upper"].get<double>() >= j["value"].get<double>());

    const auto c = Json::parse(run({"entropy", "--spec", "full:3", "--method", "count", "--n", "2"}).out);
    CHECK(c["value"].get<double>() == doctest::Approx(std::log(3.0)));
    CHECK(c["bound_kind"] == "upper");
}

TEST_CASE("outputs are byte-identical across thread counts")
{
    const auto a = scratch("threads1"), b = scratch("threads3");
    for (const auto& [dir, t] : {std::pair{a, "1"}, std::pair{b, "3"}}) {
        const auto r = run({"hom", "--window", "160", "--threads", t, "--out", dir.string()});
        CHECK(r.code == 1); // n0 = 6 is below the AllOfG scale
        CHECK(r.err.empty());
        CHECK(run({"tile", "--window", "160", "--threads", t, "--out", dir.string()}).code == 0);
    }
    for (const char* f : {"hom.json", "output.json", "tiling.json", "tiling.svg", "output.pgm"}) {
        CAPTURE(f);
        CHECK(!slurp(a / f).empty());
        CHECK(slurp(a / f) == slurp(b / f));
    }
}

TEST_CASE("tile writes centers that match the summary")
{
    const auto dir = scratch("tile");
    const auto r = run({"tile", "--group", "zd:2", "--sample", "rotation2d", "--window", "120", "--n0", "6", "--out",
                        dir.string()});
    REQUIRE(r.code == 0);
    const auto j = Json::parse(slurp(dir / "tiling.json"));
    CHECK(j["disjoint"]["ok"] == true);
    CHECK(j["covering"]["ok"] == true);
    CHECK(j["centers"].size() == j["summary"]["centers"].get<std::size_t>());
    CHECK(slurp(dir / "tiling.svg").rfind("<svg", 0) == 0);
}

TEST_CASE("lemmas on a torus: every lemma passes")
{
    const auto dir = scratch("lemmas");
    const auto r =
        run({"lemmas", "--group", "torus:96x96", "--sample", "random", "--n0", "24", "--out", dir.string()});
    CHECK(r.code == 0);
    const auto j = Json::parse(slurp(dir / "lemmas.json"));
    CHECK(j["pass"] == true);
    std::vector<std::string> names;
    for (const auto& l : j["lemmas"]) {
        names.push_back(l["name"]);
        CHECK(l["status"] == "pass");
    }
    for (const char* want : {"quasi_tiling.disjoint", "quasi_tiling.covering", "bounded_degree", "stage.disjoint",
                             "stage.contains_u", "stage.contains_v", "all_of_g", "si_k4", "extender", "fep"})
        CHECK(std::find(names.begin(), names.end(), want) != names.end());
    CHECK(slurp(dir / "lemmas.json") == Json::parse(slurp(dir / "lemmas.json")).dump(2) + "\n");
}

TEST_CASE("group descriptor objects")
{
    const auto dir = scratch("groups");
    const auto zd = run({"check-fep", "--config", write(dir / "zd.json", R"({"group": {"kind": "Zd", "d": 2}})"),
                         "--spec", "full:2", "--radius", "1"});
    CHECK(zd.code == 0);
    const auto table = write(dir / "t.json", R"({"group": {"kind": "FiniteTable", "table": [[0, 1], [1, 0]]},
                                                 "target": "full:2"})");
    CHECK(run({"check-fep", "--config", table, "--radius", "1"}).code == 0);
    const auto bad = run({"check-fep", "--config",
                          write(dir / "b.json", R"({"group": {"kind": "FiniteTable", "table": [[0, 1], [0, 0]]}})")});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("/group") != std::string::npos);
    const auto kind = run({"check-fep", "--config", write(dir / "k.json", R"({"group": {"kind": "Free"}})")});
    CHECK(kind.code == 2);
    CHECK(kind.err.find("/group/kind") != std::string::npos);

    const auto cfg = gshift::cli::parse_config(R"({"group": {"kind": "Torus", "moduli": [8, 6]}})");
    CHECK(cfg.group == "torus:8x6");
    CHECK(gshift::cli::to_json(cfg)["group"] == Json::parse(R"({"kind": "Torus", "moduli": [8, 6]})"));
    CHECK(gshift::cli::parse_config(gshift::cli::to_json(cfg).dump()).group == "torus:8x6");
}
