#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>
#include <sstream>

#include "polygas/report.hpp"

using namespace polygas::report;

namespace {

std::vector<CheckReport> sample_reports() {
    return {
        make_check("alpha.check", "z=1;seed=7", 1.4999999, 1.5, "PAPER", 1e-2),
        make_check("beta.check", "n=3", 6.0, 6.0, "TRIVIAL", 1e-9),
        make_check("gamma.mc", "samples=1000", 0.126, 0.125, "DERIVED:oracle", 0.0, 0.002),
    };
}

}  // namespace

TEST_CASE("pass rule: tolerance for deterministic, three sigma for stochastic") {
    const CheckReport det = make_check("a", "", 1.0, 1.001, "TRIVIAL", 1e-6);
    CHECK_FALSE(det.pass);
    const CheckReport det_ok = make_check("a", "", 1.0, 1.0 + 1e-7, "TRIVIAL", 1e-6);
    CHECK(det_ok.pass);
    const CheckReport mc_ok = make_check("m", "", 1.0, 1.005, "TRIVIAL", 0.0, 0.002);
    CHECK(mc_ok.pass);  // 0.005 <= 3 * 0.002
    const CheckReport mc_bad = make_check("m", "", 1.0, 1.01, "TRIVIAL", 0.0, 0.002);
    CHECK_FALSE(mc_bad.pass);
}

TEST_CASE("json output parses and round-trips all fields") {
    const auto reports = sample_reports();
    std::ostringstream os;
    write_json(reports, os);

    const auto parsed = nlohmann::json::parse(os.str());
    REQUIRE(parsed.is_array());
    REQUIRE(parsed.size() == reports.size());
    for (std::size_t i = 0; i < reports.size(); ++i) {
        CHECK(parsed[i]["check"] == reports[i].check);
        CHECK(parsed[i]["input"] == reports[i].input);
        CHECK(parsed[i]["value"].get<double>() == reports[i].value);
        CHECK(parsed[i]["reference"].get<double>() == reports[i].reference);
        CHECK(parsed[i]["provenance"] == reports[i].provenance);
        CHECK(parsed[i]["abs_error"].get<double>() == reports[i].abs_error);
        CHECK(parsed[i]["pass"].get<bool>() == reports[i].pass);
        if (reports[i].stderr_ >= 0.0)
            CHECK(parsed[i]["stderr"].get<double>() == reports[i].stderr_);
        else
            CHECK(parsed[i]["stderr"].is_null());
    }
}

TEST_CASE("empty report lists serialize to valid containers") {
    std::ostringstream js, cs;
    write_json({}, js);
    write_csv({}, cs);
    CHECK(nlohmann::json::parse(js.str()).empty());
    CHECK(cs.str() == "check,input,value,reference,error,stderr,tol,pass\n");
}

TEST_CASE("csv has a constant field count") {
    const auto reports = sample_reports();
    std::ostringstream os;
    write_csv(reports, os);
    std::istringstream is(os.str());
    std::string line;
    std::size_t lines = 0;
    while (std::getline(is, line)) {
        ++lines;
        CHECK(std::count(line.begin(), line.end(), ',') == 7);
    }
    CHECK(lines == reports.size() + 1);
}

TEST_CASE("serialization is byte-stable") {
    const auto reports = sample_reports();
    std::ostringstream a, b;
    write_json(reports, a);
    write_json(reports, b);
    CHECK(a.str() == b.str());
}

TEST_CASE("floats print with full round-trip precision") {
    CHECK(format17(0.5) == "0.5");
    CHECK(format17(1.0 / 3.0) == "0.33333333333333331");
    const double x = 0.1 + 0.2;
    CHECK(std::stod(format17(x)) == x);
}
