#include <doctest.h>

#include "cnb/fixtures.hpp"
#include "cnb/io.hpp"

#include <sstream>

using namespace cnb;

TEST_CASE("configurations round trip through JSON exactly") {
    for (const auto& f : fixtures::all()) {
        auto back = io::parse_config(io::config_json(f.config).dump());
        REQUIRE(back.config.size() == f.config.size());
        CHECK(back.config.space == f.config.space);
        for (std::size_t i = 0; i < f.config.size(); ++i) {
            CHECK(back.config.mass(i) == f.config.mass(i));
            CHECK(back.config.pos(i) == f.config.pos(i));
        }
        CHECK(!back.lambda);
    }
}

TEST_CASE("reports carry the documented fields") {
    auto f = fixtures::example1_s3();
    auto j = io::report_json(make_report(f.config));
    for (const char* k : {"space", "masses", "points", "lambda", "residual_max", "is_special", "class", "orth", "I", "U"})
        CHECK(j.contains(k));
    CHECK(j["orth"].size() == 4);
    auto back = io::parse_config(j.dump());
    REQUIRE(back.lambda);
    CHECK(*back.lambda == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("decimal strings are accepted") {
    auto in = io::parse_config(R"({"space": "H3", "masses": ["1.5", 2],
        "points": [[0, 0, 0, 1], ["1", "0", "0", "1.4142135623730951"]], "lambda": "-0.25"})");
    CHECK(in.config.mass(0) == 1.5);
    CHECK(in.config.pos(1)[3] == 1.4142135623730951);
    CHECK(*in.lambda == -0.25);
}

TEST_CASE("malformed input is reported") {
    auto code_of = [](const std::string& text) {
        try {
            io::parse_config(text);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::SingularPair; // sentinel, nothing thrown
    };
    CHECK(code_of("{\"space\": \"S3\",\n \"masses\": [1,\n") == ErrorCode::InvalidInput);
    CHECK(code_of(R"({"space": "S3", "masses": [1]})") == ErrorCode::InvalidInput);
    CHECK(code_of(R"({"space": "R3", "masses": [1], "points": [[1,0,0,0]]})") == ErrorCode::InvalidInput);
    CHECK(code_of(R"({"space": "S3", "masses": [1, 2], "points": [[1,0,0,0]]})") == ErrorCode::InvalidInput);
    CHECK(code_of(R"({"space": "S3", "masses": ["abc"], "points": [[1,0,0,0]]})") == ErrorCode::InvalidInput);
    CHECK(code_of(R"({"space": "S3", "masses": [1], "points": [[1,0,0]]})") == ErrorCode::InvalidInput);
    CHECK(code_of("[1, 2]") == ErrorCode::InvalidInput);
    try {
        io::parse_config("{\n\"space\": \"S3\",\n\"masses\": [1,,2]\n}");
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("invalid points are rejected on read") {
    auto code_of = [](const std::string& text) {
        try {
            io::parse_config(text);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::NoConvergence; // sentinel, nothing thrown
    };
    CHECK(code_of(R"({"space": "S3", "masses": [1, 1], "points": [[2,0,0,0], [0,1,0,0]]})") == ErrorCode::OffShell);
    CHECK(code_of(R"({"space": "S3", "masses": [0, 1], "points": [[1,0,0,0], [0,1,0,0]]})") == ErrorCode::InvalidInput);
    CHECK(code_of(R"({"space": "S3", "masses": [1, 1], "points": [[1,0,0,0], [-1,0,0,0]]})") == ErrorCode::SingularPair);
}

TEST_CASE("shortest decimal formatting round trips") {
    for (double v : {0.1, -3.1530, 1e-300, 2.0 / 3, 123456789.0}) CHECK(std::stod(io::fmt(v)) == v);
    CHECK(io::fmt(0.5) == "0.5");
}

TEST_CASE("moulton CSV layout") {
    auto cat = moulton_catalog_h({1, 2, 3}, 1.0);
    std::ostringstream os;
    io::write_moulton_csv(os, cat);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "ordering,theta_1,theta_2,theta_3,lambda,I,U,min_hessian_eig");
    int rows = 0;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 3);
}

TEST_CASE("trajectory CSV has a row per body per sample") {
    auto f = fixtures::example1_s3();
    PhaseState s{f.config, std::vector<Vec4>(3, Vec4::Zero())};
    auto tr = integrate(s, 1e-2, 10, 5);
    std::ostringstream os;
    io::write_trajectory_csv(os, tr);
    std::istringstream is(os.str());
    std::string line;
    int rows = -1;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == static_cast<int>(tr.states.size() * 3));
}
