#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using motzkin::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("motzkin_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

std::map<std::string, std::string> read_dir(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    std::ifstream f(e.path(), std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    files[e.path().filename().string()] = ss.str();
  }
  return files;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("exact norms table") {
  const auto r = call({"norms", "--t", "1/2", "--kmax", "2", "--mode", "exact"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "k,p,q,N\n1,0,0,1\n1,0,1,t\n1,1,0,t\n2,0,0,1+t^2\n2,0,1,t+t^3\n2,0,2,t^4\n2,1,0,t+t^3\n2,1,1,t^2\n2,2,0,t^4\n");
}

TEST_CASE("float norms use 17 significant digits") {
  const auto r = call({"norms", "--t", "0.5", "--kmax", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("1,0,1,5.0000000000000000e-01\n") != std::string::npos);
  const auto two = call({"norms", "--t", "0.3,0.6", "--kmax", "1"});
  CHECK(two.out.find("# t=0.3\n") != std::string::npos);
  CHECK(two.out.find("# t=0.6\n") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(call({}).code == 2);
  CHECK(call({"norms", "--kmax", "3"}).code == 2);
  CHECK(call({"norms", "--t", "", "--kmax", "3"}).code == 2);
  CHECK(call({"norms", "--t", "abc", "--kmax", "3"}).code == 2);
  CHECK(call({"norms", "--t", "0.5"}).code == 2);
  CHECK(call({"norms", "--t", "0.5", "--kmax", "3", "--format", "xml"}).code == 2);
  CHECK(call({"certify", "--t", "1.2", "--k", "2"}).code == 2);
  CHECK(call({"criterion", "--t", "0.5", "--k", "9"}).code == 2);
  CHECK(call({"overlaps", "--t", "0.5", "--n", "7"}).code == 2);
  CHECK(call({"bogus"}).code == 2);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("certify writes certificates and signals inconclusive ones") {
  const auto dir = scratch("certify");
  const auto ok = call({"certify", "--t", "0.3", "--k", "2", "--out", dir.string()});
  CHECK(ok.code == 0);
  const auto files = read_dir(dir);
  REQUIRE(files.count("certificate_t0.3_k2.json") == 1);
  const auto j = nlohmann::json::parse(files.at("certificate_t0.3_k2.json"));
  CHECK(j["conclusive"] == true);
  CHECK(j["c2_kind"] == "empirical");
  CHECK(j["final_bound"].get<double>() > 0.0);
  CHECK(j["z_k"].get<double>() < 0.5);
  CHECK(files.count("certificates.csv") == 1);

  const auto bad = call({"certify", "--t", "0.3,0.99", "--k", "2"});
  CHECK(bad.code == 4);
  CHECK(bad.out.find("certificates") == std::string::npos);  // table printed without heading
  CHECK(bad.out.find(",0\n") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("ratios record fit errors for degenerate ranges") {
  const auto dir = scratch("ratios");
  const auto r = call({"ratios", "--t", "0.7", "--kmax", "5", "--out", dir.string()});
  CHECK(r.code == 0);
  const auto files = read_dir(dir);
  REQUIRE(files.count("fit_t0.7_p2_q2.json") == 1);
  const auto j = nlohmann::json::parse(files.at("fit_t0.7_p2_q2.json"));
  CHECK(j.contains("error"));
  // the message contains a comma, so the field is quoted
  CHECK(files.at("fits.csv").find(",\"fit_rate needs at least 4 defects") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("penalty and overlaps tables") {
  const auto p = call({"penalty", "--t", "0.5", "--n", "4,6", "--format", "json"});
  CHECK(p.code == 0);
  const auto pj = nlohmann::json::parse(p.out);
  REQUIRE(pj.size() == 2);
  CHECK(pj[0]["n"] == 4);
  CHECK(pj[1]["exact_minimum"].get<double>() > 0.0);

  const auto o = call({"overlaps", "--t", "0.5", "--n", "8"});
  CHECK(o.code == 0);
  CHECK(o.out.rfind("kind,t,n,p,q,segments,cutoff,defect,at_noise_floor,split_identity\n", 0) == 0);
  CHECK(o.out.find("atgs,") != std::string::npos);
  CHECK(o.out.find("pgs-right,") != std::string::npos);
}

TEST_CASE("outputs are byte-identical across runs and thread counts") {
  const auto a = scratch("det_a"), b = scratch("det_b");
  const std::vector<std::string> base{"criterion", "--t", "0.3,0.5", "--k", "1,2"};
  auto with = [&](const fs::path& d, const char* threads) {
    auto args = base;
    args.insert(args.end(), {"--out", d.string(), "--threads", threads});
    return call(args).code;
  };
  CHECK(with(a, "1") == 0);
  CHECK(with(b, "2") == 0);
  const auto fa = read_dir(a), fb = read_dir(b);
  CHECK(fa.size() == 5);
  CHECK(fa == fb);
  for (const auto& sub : {std::vector<std::string>{"ratios", "--t", "0.7", "--kmax", "30"},
                          std::vector<std::string>{"penalty", "--t", "0.4"},
                          std::vector<std::string>{"overlaps", "--t", "0.6", "--n", "8,10"}}) {
    CHECK(call(sub).out == call(sub).out);
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

}
