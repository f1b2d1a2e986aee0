#include "../tools/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    int code = cq::cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::vector<nlohmann::json> json_lines(const std::string& text) {
    std::vector<nlohmann::json> v;
    std::istringstream s(text);
    for (std::string line; std::getline(s, line);)
        if (!line.empty()) v.push_back(nlohmann::json::parse(line));
    return v;
}

std::size_t occurrences(const std::string& text, const std::string& needle) {
    std::size_t count = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++count;
    return count;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("cantorquant_test_" + name);
}

}  // namespace

TEST_CASE("optimal") {
    Result r = run({"optimal", "9"});
    REQUIRE(r.code == 0);
    auto lines = json_lines(r.out);
    REQUIRE(lines.size() == 1);
    CHECK(lines[0]["n"] == 9);
    CHECK(lines[0]["points"].size() == 9);
    CHECK(lines[0]["error"] == "1/72");
    CHECK(lines[0]["variant"] == "0");

    r = run({"optimal", "5", "--all"});
    REQUIRE(r.code == 0);
    CHECK(json_lines(r.out).size() == 8);

    r = run({"optimal", "2", "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(r.out == "variant,x,y\n0,1/6,1/2\n0,5/6,1/2\n");

    r = run({"optimal", "1"});
    REQUIRE(r.code == 0);
    CHECK(json_lines(r.out)[0]["points"][0] == nlohmann::json{{"x", "1/2"}, {"y", "1/2"}});
}

TEST_CASE("optimal errors") {
    CHECK(run({"optimal", "0"}).code == 1);
    Result r = run({"optimal", "5", "--variant", "8"});
    CHECK(r.code == 1);
    CHECK(r.err.find("has 8 variant") != std::string::npos);
    CHECK(run({"optimal", "5", "--variant", "abc"}).code == 1);
    CHECK(run({"optimal", "5", "--variant", "1", "--all"}).code == 1);
    CHECK(run({"optimal", "5", "--format", "xml"}).code == 1);
    CHECK(run({"optimal"}).code == 1);
    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
}

TEST_CASE("error") {
    Result r = run({"error", "2"});
    REQUIRE(r.code == 0);
    CHECK(r.out == "V_2 = 5/36 (approx 0.1388888889)\n");
    r = run({"error", "16", "--format", "json"});
    REQUIRE(r.code == 0);
    auto j = json_lines(r.out).at(0);
    CHECK(j["error"] == "1/324");
    CHECK(run({"error", "0"}).code == 1);
}

TEST_CASE("count") {
    CHECK(run({"count", "5"}).out == "8\n");
    CHECK(run({"count", "9"}).out == "128\n");
    CHECK(run({"count", "13"}).out == "256\n");
    CHECK(run({"count", "1"}).code == 1);
}

TEST_CASE("optimal piped into distortion") {
    Result opt = run({"optimal", "6", "--all"});
    REQUIRE(opt.code == 0);
    Result d = run({"distortion", "--codebook", "-"}, opt.out);
    REQUIRE(d.code == 0);
    auto lines = json_lines(d.out);
    CHECK(lines.size() == json_lines(opt.out).size());
    for (const auto& j : lines) {
        CHECK(j["exact"] == true);
        CHECK(j["lower"] == j["upper"]);
        CHECK(j["lower"] == json_lines(opt.out)[0]["error"]);
    }
}

TEST_CASE("distortion input formats and errors") {
    std::string obj = R"({"n": 2, "points": [{"x": "1/6", "y": "1/2"}, {"x": "5/6", "y": "1/2"}]})";
    Result r = run({"distortion", "--codebook", "-"}, obj);
    REQUIRE(r.code == 0);
    CHECK(json_lines(r.out).at(0)["lower"] == "5/36");

    r = run({"distortion", "--codebook", "-"}, "[" + obj + "," + obj + "]");
    REQUIRE(r.code == 0);
    CHECK(json_lines(r.out).size() == 2);

    // Pairs and integer coordinates are accepted too.
    r = run({"distortion", "--codebook", "-"}, R"({"points": [["1/6", "1/2"], ["5/6", "1/2"], [0, 7]]})");
    REQUIRE(r.code == 0);
    CHECK(json_lines(r.out).at(0)["n"] == 3);
    CHECK(run({"distortion", "--codebook", "-"}, R"({"points": [[0.5, 0.5]]})").code == 3);
    CHECK(run({"distortion", "--codebook", "-"}, R"({"n": 3, "points": [[0, 0]]})").code == 3);
    CHECK(run({"distortion", "--codebook", "-"}, R"({"points": [[0, 0], [0, 0]]})").code == 3);

    auto path = temp_file("book.json");
    {
        std::ofstream f(path);
        f << obj;
    }
    r = run({"distortion", "--codebook", path.string(), "--depth", "3"});
    CHECK(r.code == 0);
    std::filesystem::remove(path);

    CHECK(run({"distortion", "--codebook", "/nonexistent/dir/x.json"}).code == 3);
    r = run({"distortion", "--codebook", "-"}, obj + "\n{\"points\": [[1, \n");
    CHECK(r.code == 3);
    CHECK(r.err.find("line 2") != std::string::npos);
    CHECK(run({"distortion", "--codebook", "-"}, R"({"points": []})").code == 3);
    CHECK(run({"distortion", "--codebook", "-"}, "").code == 3);
    CHECK(run({"distortion", "--codebook", "-", "--tol", "0"}, obj).code == 1);
    CHECK(run({"distortion", "--codebook", "-", "--depth", "0"}, obj).code == 1);
    CHECK(run({"distortion", "--codebook", "-", "--depth", "81"}, obj).code == 1);
}

TEST_CASE("unwritable output path") {
    CHECK(run({"count", "5", "--out", "/nonexistent/dir/out.txt"}).code == 1);  // count has no --out
    CHECK(run({"optimal", "5", "--out", "/nonexistent/dir/out.json"}).code == 3);
}

TEST_CASE("output is deterministic") {
    CHECK(run({"optimal", "20", "--all"}).out == run({"optimal", "20", "--all"}).out);
    CHECK(run({"verify", "3", "--seeds", "5"}).out == run({"verify", "3", "--seeds", "5"}).out);
}

TEST_CASE("verify") {
    Result r = run({"verify", "4", "--seeds", "8", "--depth", "12"});
    CHECK(r.code == 0);
    CHECK(r.out.find("result: PASS") != std::string::npos);
    CHECK(r.out.find("variants: 1 total, 1 checked") != std::string::npos);
    CHECK(run({"verify", "0"}).code == 1);
    CHECK(run({"verify", "4", "--seeds", "0"}).code == 1);
}

TEST_CASE("plot") {
    Result r = run({"plot", "4"});
    REQUIRE(r.code == 0);
    CHECK(occurrences(r.out, "<rect") == 64);
    CHECK(occurrences(r.out, "<circle") == 4);
    r = run({"plot", "2", "--depth", "1"});
    CHECK(occurrences(r.out, "<rect") == 4);
    CHECK(occurrences(r.out, "<circle") == 2);
    CHECK(run({"plot", "4", "--depth", "9"}).code == 1);

    std::ifstream golden(std::string(CQ_TEST_DATA_DIR) + "/plot_7_depth2.svg", std::ios::binary);
    REQUIRE(golden);
    std::ostringstream buf;
    buf << golden.rdbuf();
    CHECK(run({"plot", "7", "--depth", "2"}).out == buf.str());
}
