#include "doctest.h"
#include "whtor/runner.hpp"

using namespace whtor;

namespace {
const char* kLensDoc = R"(
group cyclic 5
element u = t + t^4 - 1
complex C lo 0 ranks 1 1
d 1 = [t + t^4 - 1]
map f C C
at 0 = [1]
at 1 = [1]
pair L = lens(5;1,1)
task torsion f expect trivial
task rho L
task glue 5 u
task s1 f
task transfer f 0
)";
}  // namespace

TEST_CASE("element literal grammar") {
    auto z5 = GroupSpec::cyclic(5);
    std::vector<std::string> names{"t"};
    GRElement e = parse_element(z5, names, "3*t^2 - 1*t^-1 + 1");
    CHECK(e.coeff(z5->normalize({{2}})) == 3);
    CHECK(e.coeff(z5->normalize({{4}})) == -1);
    CHECK(e.coeff(z5->identity()) == 1);
    CHECK(parse_element(z5, names, "t*t*t") == parse_element(z5, names, "t^3"));
    CHECK(parse_element(z5, names, "2*3") == GRElement::integer(z5, 6));
    CHECK_THROWS_AS(parse_element(z5, names, "t + q"), ParseError);
    CHECK_THROWS_AS(parse_element(z5, names, ""), ParseError);
    CHECK_THROWS_AS(parse_element(z5, names, "t^"), ParseError);
}

TEST_CASE("matrix literal grammar") {
    auto z5 = GroupSpec::cyclic(5);
    std::vector<std::string> names{"t"};
    GRMatrix m = parse_matrix(z5, names, "[1, t; 0, t^2 - 1]");
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 2);
    CHECK(m.at(1, 0).is_zero());
    CHECK(m.at(1, 1) == parse_element(z5, names, "t^2 - 1"));
    CHECK(parse_matrix(z5, names, "[]").rows() == 0);
    CHECK_THROWS_AS(parse_matrix(z5, names, "[1, t; 0]"), ParseError);
    CHECK_THROWS_AS(parse_matrix(z5, names, "1, t"), ParseError);
}

TEST_CASE("document parsing") {
    ModelDocument doc = parse_document(kLensDoc);
    CHECK(doc.group->cyclic_order() == 5);
    CHECK(doc.elements.count("u") == 1);
    CHECK(doc.complexes.at("C").total_rank() == 2);
    CHECK(doc.maps.count("f") == 1);
    CHECK(doc.pairs.at("L").n == 3);
    CHECK(doc.tasks.size() == 5);
    CHECK(doc.tasks[0].kind == "torsion");
    CHECK(doc.tasks[0].args == std::vector<std::string>{"f", "expect", "trivial"});
}

TEST_CASE("parse errors carry positions") {
    try {
        parse_document("group cyclic 5\nbogus directive");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
    CHECK_THROWS_AS(parse_document("element u = 1"), ParseError);  // no group yet
    CHECK_THROWS_AS(parse_document("group cyclic 5\ntask torsion nosuch"), ParseError);
    CHECK_THROWS_AS(parse_document("group cyclic 5\ngroup cyclic 5"), ParseError);
}

TEST_CASE("invariant violations are distinguished from syntax errors") {
    const char* bad =
        "group cyclic 5\ncomplex C lo 0 ranks 1 1 1\nd 1 = [t]\nd 2 = [t]\n";
    try {
        parse_document(bad);
        FAIL("expected InvariantViolation");
    } catch (const InvariantViolation& e) {
        CHECK(e.line == 2);
    }
    // non-chain map
    CHECK_THROWS_AS(parse_document("group cyclic 5\n"
                                   "complex C lo 0 ranks 1 1\nd 1 = [t - 1]\n"
                                   "map f C C\nat 0 = [t]\nat 1 = [1]\n"),
                    InvariantViolation);
}

TEST_CASE("multi-line matrices and orientation") {
    ModelDocument doc = parse_document(
        "group infinite_cyclic\norientation -1\n"
        "complex C lo 0 ranks 2 2\nd 1 = [0, 0;\n 0, 0]\n");
    CHECK(doc.group->orientation() == std::vector<int>{-1});
    CHECK(doc.complexes.at("C").rank(1) == 2);
}

TEST_CASE("runner statuses") {
    ModelDocument doc = parse_document(kLensDoc);
    VerdictReport r = run_command(doc, "torsion", 42);
    CHECK(r.status == ExitStatus::Ok);
    CHECK(r.tasks.size() == 1);
    CHECK(r.tasks[0].pass);

    // expectation mismatch -> verification failure
    ModelDocument lying = parse_document(
        "group cyclic 5\ncomplex C lo 0 ranks 1 1\nd 1 = [t + t^4 - 1]\n"
        "map f C C\nat 0 = [1]\nat 1 = [1]\ntask torsion f expect nontrivial\n");
    CHECK(run_command(lying, "torsion", 42).status == ExitStatus::VerificationFailure);

    // non-acyclic cone -> stuck
    ModelDocument stuck = parse_document(
        "group trivial\ncomplex P lo 0 ranks 1\nmap z P P\nat 0 = [0]\n"
        "task torsion z\n");
    CHECK(run_command(stuck, "torsion", 42).status == ExitStatus::StuckResult);

    // no matching task: valid no-op run
    VerdictReport noop = run_command(doc, "invariants", 42);
    CHECK(noop.status == ExitStatus::Ok);
    CHECK(noop.tasks.empty());
}

TEST_CASE("verify is deterministic per seed") {
    ModelDocument doc = parse_document("group cyclic 5\n");
    VerdictReport a = run_command(doc, "verify", 42);
    VerdictReport b = run_command(doc, "verify", 42);
    CHECK(a.status == ExitStatus::Ok);
    CHECK(a.json() == b.json());
    CHECK(a.text() == b.text());
    VerdictReport c = run_command(doc, "verify", 7);
    CHECK(c.status == ExitStatus::Ok);
}
