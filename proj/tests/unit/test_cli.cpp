#include "doctest.h"

#include <cstdlib>
#include <sstream>

#include "gmlab/commands.hpp"
#include "json.hpp"

using namespace gmlab;

TEST_SUITE("cli") {

TEST_CASE("seed parsing and precedence") {
    CHECK(parse_seed("42") == 42u);
    CHECK(parse_seed("18446744073709551615") == UINT64_MAX);
    CHECK_THROWS_AS(parse_seed("-1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_seed("12x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_seed("18446744073709551616"), std::invalid_argument);

    ::unsetenv("GMLAB_SEED");
    CHECK(resolve_seed(std::nullopt) == kDefaultSeed);
    ::setenv("GMLAB_SEED", "9", 1);
    CHECK(resolve_seed(std::nullopt) == 9u);
    CHECK(resolve_seed(std::string("5")) == 5u);
    ::unsetenv("GMLAB_SEED");
}

TEST_CASE("formats") {
    CHECK(parse_format("csv") == OutputFormat::Csv);
    CHECK(parse_format("json") == OutputFormat::Json);
    CHECK(parse_format("text") == OutputFormat::Text);
    CHECK_THROWS(parse_format("xml"));
}

TEST_CASE("built-in shapes resolve by name") {
    for (const auto& name : builtin_shape_names()) CHECK(load_shape(name).name == name);
    CHECK_THROWS(load_shape("definitely_not_a_shape"));
}

TEST_CASE("estimate CSV layout") {
    SweepRequest req;
    req.shape = load_shape("adjacency");
    req.n_list = {8, 16};
    req.samples = 2;
    req.seed = 1;
    const std::string csv = cmd_estimate(req, OutputFormat::Csv);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "shape,n,p,sample_index,seed,norm,elapsed_ms");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(line.rfind("adjacency,", 0) == 0);
        CHECK(line.substr(line.size() - 2) == ",0");
    }
    CHECK(rows == 4);
    CHECK(cmd_estimate(req, OutputFormat::Csv) == csv);
}

TEST_CASE("scaling adds a fit row") {
    SweepRequest req;
    req.shape = load_shape("adjacency");
    req.n_list = {16, 32, 64};
    req.samples = 2;
    req.seed = 3;
    const std::string csv = cmd_scaling(req, OutputFormat::Csv);
    const auto last = csv.substr(csv.rfind('\n', csv.size() - 2) + 1);
    CHECK(last.rfind("adjacency,fit,fixed:0.5,exponent,3,", 0) == 0);
}

TEST_CASE("bound JSON carries the separator and the flagged constant") {
    BoundRequest req;
    req.shape = load_shape("triangle");
    req.n = 1e4;
    req.eps = 0.01;
    const auto j = nlohmann::json::parse(cmd_bound(req, OutputFormat::Json));
    CHECK(j["dominant_exponent"].get<double>() == doctest::Approx(1.0));
    CHECK(j["separator"] == nlohmann::json::array({"u1"}));
    CHECK_THROWS(cmd_bound(req, OutputFormat::Csv));
}

}
