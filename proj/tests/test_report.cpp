#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <btcert/certificate.hpp>
#include <btcert/report.hpp>
#include <btcert/tables.hpp>

using namespace btcert;

TEST_CASE("status combination") {
    CHECK(combine(Status::verified, Status::verified) == Status::verified);
    CHECK(combine(Status::verified, Status::inconclusive) == Status::inconclusive);
    CHECK(combine(Status::inconclusive, Status::failed) == Status::failed);
    CHECK(parse_status("failed") == Status::failed);
    CHECK_THROWS(parse_status("maybe"));
}

TEST_CASE("reports aggregate children") {
    VerificationReport root("root");
    VerificationReport a("a"), b("b");
    b.demote(Status::inconclusive);
    root.add(a);
    CHECK(root.verified());
    root.add(b);
    CHECK(root.status == Status::inconclusive);
    root.fail("boom");
    CHECK(root.status == Status::failed);
    auto j = root.to_json(false);
    CHECK(j["subreports"].size() == 2);
    CHECK_FALSE(j.contains("runtime_seconds"));
}

TEST_CASE("certificates serialise deterministically") {
    VerificationReport r("task");
    r.parameters = {{"zeta", 1}, {"alpha", "x"}};
    r.mode_flags["mode"] = "paper";
    r.runtime_seconds = 1.5;
    VerificationReport child("child");
    child.fail("bad");
    r.add(child);
    auto doc = CertificateDocument::from_report(r, 42);
    CHECK(doc.status == Status::failed);
    CHECK(doc.seed == 42u);
    std::string one = doc.dump_json(false), two = CertificateDocument::from_report(r, 42).dump_json(false);
    CHECK(one == two);
    CHECK(one.find("\"alpha\"") < one.find("\"zeta\""));
    CHECK(one.find("runtime") == std::string::npos);
    auto csv = doc.to_csv(false);
    CHECK(csv.rfind("path,task,status,runtime_seconds,parameters,notes\n", 0) == 0);
    CHECK(csv.find("0/0,child,failed") != std::string::npos);
}

TEST_CASE("shipped tables load") {
    auto t = load_tables();
    CHECK(t.xi.size() == 12);
    CHECK(t.delta.size() == 12);
    CHECK(t.sieve_ranges.size() == 45);
    CHECK(t.extremal.size() == 64);
    CHECK(t.remainder.size() == 12);
    CHECK(t.xi_for(1)->xi == Rational::parse("0.8601"));
    CHECK_FALSE(t.xi_for(2));
    auto rows = t.sieve_ranges_for(1);
    REQUIRE(rows.size() == 4);
    CHECK(rows.front().y1 == 14);
    CHECK(rows.back().y2 == 669671);
    for (const auto& [k, table] : t.remainder) CHECK_NOTHROW(table.validate());
}

TEST_CASE("malformed tables are rejected") {
    auto dir = std::filesystem::temp_directory_path() / "btcert_bad_tables";
    std::filesystem::create_directories(dir);
    {
        std::ofstream(dir / "bad1.csv") << "k,zeta\n1,0.8\n";
        std::ofstream(dir / "bad2.csv") << "k,xi\n1,abc\n";
    }
    CHECK_THROWS(load_table1(dir / "bad1.csv"));
    CHECK_THROWS(load_table1(dir / "bad2.csv"));
    CHECK_THROWS(load_table1(dir / "missing.csv"));
    std::filesystem::remove_all(dir);
}
