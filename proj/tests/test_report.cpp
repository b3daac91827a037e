#include "pcf/report.hpp"
#include "pcf/suites.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <sstream>
#include <string>

using namespace pcf;

TEST_CASE("pass flag follows the tolerance")
{
    CHECK(make_row("a", {}, 1.0, 1.0, 1e-9, 1e-8).pass);
    CHECK_FALSE(make_row("a", {}, 1.0, 1.0, 1e-7, 1e-8).pass);
    const ReportRow err = error_row("a", {{"x", 1.0}}, 1e-8, "did not converge");
    CHECK_FALSE(err.pass);
    CHECK(err.note == "did not converge");
}

TEST_CASE("CSV schema")
{
    VerificationReport r;
    r.suite = "demo";
    r.rows.push_back(make_row("B", {{"v", -0.5}, {"x", 1.0}}, 0.25, 0.25, 0.0, 1e-8));
    r.rows.push_back(make_row("A", {{"s", 2.0}}, 1.0 / 3.0, 0.3, 0.1, 1e-3));
    r.sort_rows();
    std::ostringstream out;
    write_csv(out, r);
    const std::string expected = "case_id,params,computed,reference,residual,pass\n"
                                 "A,s=2,3.3333333333333331e-01,2.9999999999999999e-01,1.0000000000000001e-01,false\n"
                                 "B,v=-0.5;x=1,2.5000000000000000e-01,2.5000000000000000e-01,0.0000000000000000e+00,true\n";
    CHECK(out.str() == expected);
}

TEST_CASE("JSON layout")
{
    VerificationReport r;
    r.suite = "demo";
    r.rows.push_back(make_row("A", {{"s", 2.0}}, 1.0, 1.0, 0.0, 1e-3));
    r.rows.push_back(error_row("B", {}, 1e-3, "boom"));
    std::ostringstream out;
    write_json(out, r);
    const auto j = nlohmann::json::parse(out.str());
    CHECK(j["suite"] == "demo");
    CHECK(j["rows"].size() == 2);
    CHECK(j["rows"][0]["params"]["s"] == 2.0);
    CHECK(j["rows"][1]["computed"].is_null());
    CHECK(j["rows"][1]["note"] == "boom");
    CHECK(j["summary"]["passed"] == 1);
    CHECK(j["summary"]["failed"] == 1);
}

TEST_CASE("rows sort by case id then parameters")
{
    VerificationReport r;
    r.rows.push_back(make_row("K", {{"x", 2.0}}, 0, 0, 0, 1));
    r.rows.push_back(make_row("K", {{"x", 1.0}}, 0, 0, 0, 1));
    r.rows.push_back(make_row("C", {{"x", 9.0}}, 0, 0, 0, 1));
    r.sort_rows();
    CHECK(r.rows[0].case_id == "C");
    CHECK(r.rows[1].params[0].second == 1.0);
}

TEST_CASE("suites are deterministic and honour filters")
{
    LimitsOptions o;
    o.entry = "ratio-golden";
    const VerificationReport a = verify_limits(o);
    REQUIRE(a.rows.size() == 1);
    CHECK(a.rows[0].pass);
    CHECK(std::abs(a.rows[0].computed - 0.6180339887) < 1e-3);

    LaplaceOptions l;
    l.entry = "2";
    l.seed = 7;
    std::ostringstream first;
    std::ostringstream second;
    write_csv(first, verify_laplace(l));
    write_csv(second, verify_laplace(l));
    CHECK(first.str() == second.str());
    CHECK(first.str().find("pair_2") != std::string::npos);
    CHECK(first.str().find("pair_1") == std::string::npos);

    // A different seed moves the off-boundary points.
    l.seed = 8;
    std::ostringstream third;
    write_csv(third, verify_laplace(l));
    CHECK(third.str() != first.str());
}

TEST_CASE("tolerance override applies to every row")
{
    RepsOptions o;
    o.entry = "PCF_AT_ZERO";
    o.tol = 1e-30;
    const VerificationReport r = verify_reps(o);
    REQUIRE(r.rows.size() == 4);
    for (const ReportRow& row : r.rows) {
        CHECK(row.tolerance == 1e-30);
    }
}
