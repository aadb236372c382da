#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "rootcert/cli.hpp"

using nlohmann::json;
using rootcert::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args, const std::string& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    const int code = run(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
    const std::string path = std::string(P_tmpdir) + "/rootcert_test_" + name;
    std::ofstream(path, std::ios::binary) << text;
    return path;
}

const char* kA2 = R"({"kind": "A2", "subspace": [["1", "-1"]]})";

}  // namespace

TEST_CASE("rootsys show") {
    auto r = call({"rootsys", "show", "--kind", "B2"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["weyl_order"] == "8");
    CHECK(j["positive_roots"].size() == 4);
    CHECK(j["cartan"] == json::parse(R"([["2","-2"],["-1","2"]])"));
    auto c = call({"rootsys", "show", "-i", "-"}, R"({"kind": {"cartan": [[2, -1], [-3, 2]]}})");
    REQUIRE(c.code == 0);
    CHECK(json::parse(c.out)["weyl_order"] == "12");
}

TEST_CASE("weyl subcommands") {
    auto o = call({"weyl", "orbit", "--kind", "A2", "--weight", "1,0"});
    REQUIRE(o.code == 0);
    CHECK(json::parse(o.out)["size"] == 3);
    auto d = call({"weyl", "dominate", "--kind", "A2", "--weight", "-1,0"});
    REQUIRE(d.code == 0);
    CHECK(json::parse(d.out)["dominant"] == json::parse(R"(["0","1"])"));
    auto s = call({"weyl", "onestep", "--kind", "A2", "--chi", "1,1", "--t", "1,-1"});
    REQUIRE(s.code == 0);
    const json j = json::parse(s.out);
    CHECK(j["zero"] == false);
    CHECK(j["word"].size() == 1);
    auto bad = call({"weyl", "orbit", "--kind", "A2", "--weight", "1"});
    CHECK(bad.code == 1);
}

TEST_CASE("torus subcommands") {
    const char* in = R"({"ambient": {"kind": "A2"}, "split_basis": [["1","1"]], "subspace": [["1","-1"]]})";
    auto d = call({"torus", "decompose", "-i", "-"}, in);
    REQUIRE(d.code == 0);
    CHECK(json::parse(d.out)["ani"].size() == 1);
    auto s = call({"torus", "splitify", "-i", "-"}, in);
    REQUIRE(s.code == 0);
    const json j = json::parse(s.out);
    REQUIRE(j["trace"].size() == 1);
    CHECK(j["trace"][0]["new_split_dim"] == 1);
    CHECK(j["trace"][0].contains("chi"));
    CHECK(j["trace"][0].contains("beta"));
    // float input is snapped
    auto f = call({"torus", "splitify", "-i", "-"},
                  R"({"ambient": {"kind": "A2"}, "split_basis": [[1,1]], "subspace": [[0.5, -0.5]]})");
    REQUIRE(f.code == 0);
    CHECK(json::parse(f.out)["snapped"] == true);
}

TEST_CASE("dio and rep") {
    auto d = call({"dio", "approx", "--x", "1/3,2/3", "--Q", "4"});
    REQUIRE(d.code == 0);
    CHECK(json::parse(d.out)["q"] == "3");
    auto r = call({"rep", "saturate", "--kind", "A2", "--highest", "1,1"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["count"] == 7);
    auto e = call({"rep", "dexp", "--kind", "A2"});
    REQUIRE(e.code == 0);
    CHECK(json::parse(e.out)["d"][0] == "1/3");
    CHECK(call({"dio", "approx", "--x", "1/2", "--Q", "1"}).code == 1);
}

TEST_CASE("certify pipeline exit codes") {
    auto b = call({"certify", "build", "-i", "-", "--trials", "30"}, kA2);
    REQUIRE(b.code == 0);
    const std::string cert = temp_file("cert.json", b.out);
    auto v = call({"certify", "verify", "--cert", cert, "--trials", "30"});
    CHECK(v.code == 0);
    CHECK(json::parse(v.out)["passed"] == true);

    json bad = json::parse(b.out);
    bad["psi"].erase(bad["psi"].size() - 1);
    const std::string tampered = temp_file("tampered.json", bad.dump());
    auto t = call({"certify", "verify", "--cert", tampered});
    CHECK(t.code == 2);
    const json tj = json::parse(t.out);
    CHECK(tj["first_failure"]["name"] == "psi");
    CHECK(tj["witness"].contains("beta"));

    CHECK(call({"certify", "build", "-i", "-"}, "{not json").code == 1);
    CHECK(call({"certify", "build", "-i", "-"}, R"({"kind": "Z9"})").code == 1);
    CHECK(call({"certify", "verify"}).code == 1);
    CHECK(call({"nonsense"}).code == 1);
    CHECK(call({"--help"}).code == 0);

    auto p = call({"probe", "run", "--n", "3", "--cert", cert, "--tmax", "3", "--steps", "7"});
    CHECK(p.code == 0);
    CHECK(p.out.find("systole_2") != std::string::npos);
    std::remove(cert.c_str());
    std::remove(tampered.c_str());
}

TEST_CASE("certify decide") {
    auto d = call({"certify", "decide", "-i", "-"}, R"({"kind": "A1xA2", "subspace": [["1","1","0"],["0","1","-1"]]})");
    REQUIRE(d.code == 0);
    const json j = json::parse(d.out);
    CHECK(j["verdict"] == "NON_OBVIOUS_EXISTS");
    CHECK(j["ambiguous"] == true);
}

TEST_CASE("identical inputs and seed give identical bytes") {
    const auto a = call({"certify", "build", "-i", "-", "--seed", "42", "--trials", "40"}, kA2);
    const auto b = call({"certify", "build", "-i", "-", "--seed", "42", "--trials", "40"}, kA2);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    // keys are sorted
    const json j = json::parse(a.out);
    std::string prev;
    for (auto it = j.begin(); it != j.end(); ++it) {
        CHECK(prev < it.key());
        prev = it.key();
    }
}

TEST_CASE("output file") {
    const std::string path = std::string(P_tmpdir) + "/rootcert_test_out.json";
    auto r = call({"rootsys", "show", "--kind", "A1", "-o", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(json::parse(ss.str())["rank"] == 1);
    std::remove(path.c_str());
}
