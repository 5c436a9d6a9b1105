#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "kitaev/config.hpp"
#include "kitaev/io.hpp"

using namespace kitaev;

TEST_SUITE("config_io") {

TEST_CASE("set, get and validate") {
    RunConfig c;
    c.set("nx", "3");
    c.set("ny", "3");
    c.set("D", " 0.05 ");
    c.set("literal_t0", "true");
    CHECK(c.nx == 3);
    CHECK(c.D == 0.05);
    CHECK(c.literal_t0);
    CHECK(c.get("engine") == "label");
    CHECK_THROWS_AS(c.set("bogus", "1"), ConfigError);
    CHECK_THROWS_AS(c.set("nx", "two"), ConfigError);
    CHECK_NOTHROW(c.validate());
    c.initial = "0x1ff";
    CHECK_NOTHROW(c.validate());
    c.initial = "0x200";
    CHECK_THROWS_AS(c.validate(), ConfigError);
    RunConfig d;
    d.kT = -1;
    CHECK_THROWS_AS(d.validate(), ConfigError);
    d.kT = std::numeric_limits<double>::infinity();
    CHECK_NOTHROW(d.validate());
}

TEST_CASE("hash ignores jobs and output") {
    RunConfig a, b;
    b.jobs = 4;
    b.output = "elsewhere";
    CHECK(a.hash() == b.hash());
    b.omega = 0.5;
    CHECK(a.hash() != b.hash());
    CHECK(a.lines().size() == RunConfig::keys().size());
}

TEST_CASE("config file") {
    const auto path = std::filesystem::temp_directory_path() / "kitaev_cfg_test.cfg";
    {
        std::ofstream f(path);
        f << "# run\nnx = 3\n\nomega = 1.25  # detuned\n";
    }
    const auto c = load_config(path.string());
    CHECK(c.nx == 3);
    CHECK(c.omega == 1.25);
    {
        std::ofstream f(path);
        f << "nx 3\n";
    }
    CHECK_THROWS_AS(load_config(path.string()), ConfigError);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_config("/nonexistent/x.cfg"), ConfigError);
}

TEST_CASE("double formatting round-trips") {
    for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) CHECK(std::stod(format_double(x)) == x);
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("csv rendering") {
    RunConfig cfg;
    OutputHeader h{"phase", "label", &cfg, {"note one"}};
    CsvTable t{{"a", "b"}, {}};
    t.add({cell(1), cell(std::string("x,y"))});
    CHECK_THROWS(t.add({"1"}));
    const auto text = render_csv(h, t);
    CHECK(text.rfind("# kitaev-sgp ", 0) == 0);
    CHECK(text.find("# config_hash = " + hex64(cfg.hash())) != std::string::npos);
    CHECK(text.find("# note: note one") != std::string::npos);
    CHECK(text.find("\na,b\n1,\"x,y\"\n") != std::string::npos);
    CHECK(hex64(255) == "0x00000000000000ff");
}

TEST_CASE("json rendering puts the header first") {
    OutputHeader h{"entropy", "hilbert", nullptr, {}};
    nlohmann::ordered_json payload;
    payload["S"] = 0.5;
    const auto j = nlohmann::ordered_json::parse(render_json(h, payload));
    CHECK(j.begin().key() == "header");
    CHECK(j["header"]["hbar"] == 1);
    CHECK(j["S"] == 0.5);
}

TEST_CASE("tables") {
    SubGeometricPhaseSeries s = decompose({0.0, 1.0}, {cplx{0.0}, cplx{0.0, 1.0}});
    const auto t = phase_table(s);
    CHECK(t.columns.size() == 5);
    CHECK(t.rows.size() == 2);
    CHECK(t.rows[0][4] == "1");
    const auto iv = interval_table({{0.0, 1.0, Stability::growing}});
    CHECK(iv.rows[0][2] == "GROWING");
}

TEST_CASE("write_text creates directories") {
    const auto dir = std::filesystem::temp_directory_path() / "kitaev_io_test";
    std::filesystem::remove_all(dir);
    write_text((dir / "a" / "b.txt").string(), "hi\n");
    CHECK(std::filesystem::file_size(dir / "a" / "b.txt") == 3);
    std::filesystem::remove_all(dir);
}

}
