#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "cavsim/network.hpp"
#include "cavsim/protocol.hpp"

using namespace cavsim;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream file(path);
    REQUIRE(file.good());
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

const std::string kMinimal = R"(PATHS 3
INJECT photon 1 AT 0 STEP 0
PBS 0 1 2
)";

}  // namespace

TEST_CASE("bundled cphase.net matches the builtin program") {
    const NetworkProgram parsed = parse_network(read_file(CAVSIM_DATA_DIR "/cphase.net"));
    CHECK(parsed == cphase_program());
}

TEST_CASE("bundled ccphase.net matches the builtin program") {
    const NetworkProgram parsed = parse_network(read_file(CAVSIM_DATA_DIR "/ccphase.net"));
    CHECK(parsed == ccphase_program());
}

TEST_CASE("parsed program runs identically to the builtin") {
    const NetworkProgram parsed = parse_network(read_file(CAVSIM_DATA_DIR "/cphase.net"));
    const std::vector<PhotonInput> photons = {{0.6, 0.8}, {Complex(0.0, 0.8), 0.6}};
    const NetworkRun a = run_program(parsed, photons, 0.8);
    const NetworkRun b = run_program(cphase_program(), photons, 0.8);
    CHECK(a.joint == b.joint);
    CHECK(a.measured_nvs == b.measured_nvs);
}

TEST_CASE("comments and blank lines are ignored") {
    const NetworkProgram program = parse_network(
        "# heading\n\nPATHS 3   # trailing comment\nINJECT photon 1 AT 0 STEP 0\n\nPBS 0 1 2\n");
    CHECK(program.n_paths == 3);
    CHECK(program.elements.size() == 1);
}

TEST_CASE("empty input is a parse error") {
    CHECK_THROWS_WITH_AS(parse_network(""), doctest::Contains("ParseError"), Error);
    CHECK_THROWS_AS(parse_network("# only a comment\n"), Error);
}

TEST_CASE("unknown command reports line and column") {
    try {
        parse_network("PATHS 2\nINJECT photon 1 AT 0 STEP 0\nBEAMSPLIT 0 1\n");
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK(e.line() == 3);
        CHECK(e.column() == 1);
    }
}

TEST_CASE("malformed integers report their column") {
    try {
        parse_network("PATHS x\n");
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK(e.line() == 1);
        CHECK(e.column() == 7);
    }
}

TEST_CASE("unsupported HWP angle is rejected at validation") {
    CHECK_THROWS_WITH_AS(
        parse_network("PATHS 5\nINJECT photon 1 AT 0 STEP 0\nHWP 4 30\n"),
        doctest::Contains("UnsupportedAngle"), Error);
}

TEST_CASE("undeclared paths are validation errors") {
    CHECK_THROWS_WITH_AS(
        parse_network("PATHS 2\nINJECT photon 1 AT 0 STEP 0\nPBS 0 1 5\n"),
        doctest::Contains("ValidationError"), Error);
    CHECK_THROWS_AS(parse_network("PATHS 2\nINJECT photon 1 AT 9 STEP 0\nPBS 0 1 0\n"), Error);
}

TEST_CASE("each photon must be injected exactly once") {
    CHECK_THROWS_AS(
        parse_network("PATHS 3\nINJECT photon 1 AT 0 STEP 0\nINJECT photon 1 AT 1 STEP 1\nPBS 0 1 2\n"),
        Error);
    // photon 2 never injected
    CHECK_THROWS_AS(
        parse_network("PATHS 3\nINJECT photon 2 AT 0 STEP 0\nPBS 0 1 2\n"), Error);
}

TEST_CASE("injection steps must stay inside the element sequence") {
    CHECK_THROWS_AS(parse_network("PATHS 3\nINJECT photon 1 AT 0 STEP 7\nPBS 0 1 2\n"), Error);
}

TEST_CASE("runner needs one amplitude pair per photon") {
    const NetworkProgram program = parse_network(kMinimal);
    CHECK_THROWS_AS(run_program(program, {}, 1.0), Error);
    CHECK_THROWS_AS(run_program(program, {{1, 0}, {1, 0}}, 1.0), Error);
}

TEST_CASE("trace records one state per element") {
    const NetworkRun run =
        run_program(cphase_program(), {{0.6, 0.8}, {0.8, 0.6}}, 1.0, true);
    CHECK(run.trace.size() == cphase_program().elements.size());
    CHECK(run.measured_nvs == std::vector<int>{0});
}
