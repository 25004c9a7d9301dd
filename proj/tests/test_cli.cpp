#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(RSOM_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) result.out.append(buf.data(), n);
    const int status = pclose(pipe);
    result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class Scratch {
public:
    Scratch() : dir_(fs::temp_directory_path() / ("rsom_cli_" + std::to_string(::getpid()))) {
        fs::create_directories(dir_);
    }
    ~Scratch() { fs::remove_all(dir_); }
    fs::path file(const std::string& name, const std::string& contents = {}) const {
        const auto p = dir_ / name;
        if (!contents.empty()) std::ofstream(p) << contents;
        return p;
    }

private:
    fs::path dir_;
};

const char* kSpec = R"({"blobs": [{"mean": [0.2, 0.2], "stddev": 0.03, "count": 60},
                                  {"mean": [0.8, 0.8], "stddev": 0.03, "count": 60}],
                       "outliers": {"count": 12, "min": [0, 0], "max": [1, 1]}, "seed": 3})";

}  // namespace

TEST_CASE("cli: synth, rectify, eval pipeline") {
    Scratch tmp;
    const auto spec = tmp.file("spec.json", kSpec);
    const auto csv = tmp.file("data.csv");
    const auto report = tmp.file("report.json");
    REQUIRE(run("synth --spec " + spec.string() + " --out " + csv.string()).code == 0);

    const std::string flags = " --rows 3 --cols 3 --epochs 10 --eps 0.5:0.01 --sigma 1.5:0.5 --theta 0.3 --tau 0.4 --seed 7";
    REQUIRE(run("rectify --in " + csv.string() + " --label-col last" + flags + " --report " + report.string()).code == 0);
    const auto doc = nlohmann::json::parse(slurp(report));
    CHECK(doc["assignment"].size() == 132);
    CHECK(doc["weights"].size() == 9);
    CHECK(doc["config"]["theta"] == 0.3);
    CHECK(doc.contains("eval"));

    const auto eval = run("eval --report " + report.string() + " --labels " + csv.string());
    REQUIRE(eval.code == 0);
    const auto scores = nlohmann::json::parse(eval.out);
    CHECK(scores["retained_count"].get<int>() + scores["discarded_count"].get<int>() == 132);
    CHECK(scores["ari"] == doc["eval"]["ari"]);

    const auto again = tmp.file("again.json");
    REQUIRE(run("rectify --in " + csv.string() + " --label-col last" + flags + " --report " + again.string()).code == 0);
    CHECK(slurp(report) == slurp(again));

    const auto stdout_run = run("rectify --in " + csv.string() + " --label-col last" + flags);
    CHECK(stdout_run.out == slurp(report));
}

TEST_CASE("cli: train is rectify with nothing discarded") {
    Scratch tmp;
    const auto csv = tmp.file("data.csv");
    REQUIRE(run("synth --spec " + tmp.file("spec.json", kSpec).string() + " --out " + csv.string()).code == 0);
    const auto out = run("train --in " + csv.string() + " --label-col last --rows 2 --cols 3 --epochs 5 --seed 2");
    REQUIRE(out.code == 0);
    const auto doc = nlohmann::json::parse(out.out);
    CHECK(doc["outlier_units"].empty());
    CHECK(doc["element_outliers"].empty());
    CHECK(doc["config"]["theta"] == 0.0);
}

TEST_CASE("cli: auto-k, estimate-k and kmeans") {
    Scratch tmp;
    // Points on a line in 3-D: one principal component.
    const auto line = tmp.file("line.csv", "0,0,0\n1,2,3\n2,4,6\n3,6,9\n4,8,12\n");
    const auto est = run("estimate-k --in " + line.string() + " --nu 0.9");
    REQUIRE(est.code == 0);
    const auto k = nlohmann::json::parse(est.out);
    CHECK(k["k"] == 1);
    CHECK(k["rows"] == 1);
    CHECK(k["cols"] == 1);

    const auto csv = tmp.file("data.csv");
    REQUIRE(run("synth --spec " + tmp.file("spec.json", kSpec).string() + " --out " + csv.string()).code == 0);
    const auto autok = run("rectify --in " + csv.string() + " --label-col last --auto-k --nu 0.99 --epochs 3");
    REQUIRE(autok.code == 0);
    const auto doc = nlohmann::json::parse(autok.out);
    CHECK(doc["config"]["rows"].get<int>() * doc["config"]["cols"].get<int>() >= 2);

    const auto km = run("kmeans --in " + csv.string() + " --label-col last --k 2 --seed 4");
    REQUIRE(km.code == 0);
    const auto kmdoc = nlohmann::json::parse(km.out);
    CHECK(kmdoc["centroids"].size() == 2);
    CHECK(kmdoc["assignment"].size() == 132);
}

TEST_CASE("cli: fuse") {
    Scratch tmp;
    const auto pyramid = tmp.file("p.json", R"({"levels": [
        {"level": 1, "grids": [{"center": [0.5, 0.5], "conf": [1.0, 0.0]}]},
        {"level": 2, "grids": []},
        {"level": 3, "grids": [{"center": [0.5, 0.5], "conf": [0.0, 0.3]}]}]})");
    const auto out = run("fuse --pyramid " + pyramid.string() + " --sigma-s 0.25");
    REQUIRE(out.code == 0);
    const auto doc = nlohmann::json::parse(out.out);
    CHECK(doc["scores"][0].get<double>() == doctest::Approx(0.25));
    CHECK(doc["scores"][1].get<double>() == doctest::Approx(0.3));
    CHECK(doc["label"] == 1);
}

TEST_CASE("cli: exit codes") {
    Scratch tmp;
    const auto good = tmp.file("good.csv", "0,0\n1,1\n2,2\n");
    const auto ragged = tmp.file("ragged.csv", "1,2\n3\n");
    CHECK(run("").code == 1);
    CHECK(run("rectify --in " + good.string()).code == 1);
    CHECK(run("rectify --in " + good.string() + " --rows 2 --cols 2 --theta 2").code == 1);
    CHECK(run("rectify --in " + good.string() + " --rows 2 --cols 2 --eps oops").code == 1);
    CHECK(run("kmeans --in " + good.string() + " --k 5").code == 1);
    CHECK(run("rectify --in " + ragged.string() + " --rows 2 --cols 2").code == 2);
    CHECK(run("rectify --in /nonexistent.csv --rows 2 --cols 2").code == 2);
    CHECK(run("fuse --pyramid " + tmp.file("bad.json", "{\"levels\": []}").string()).code == 2);
    CHECK(run("rectify --in " + good.string() + " --rows 2 --cols 2 --epochs 2").code == 0);
}
