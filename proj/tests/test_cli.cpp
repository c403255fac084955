#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

fs::path work_dir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("satake_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args, const std::string& log = "log.txt") {
  const std::string cmd = std::string("\"") + SATAKE_CLI_PATH + "\" " + args + " > \"" +
                          (work_dir() / log).string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string cache_flag() { return " --cache-dir \"" + (work_dir() / "cache").string() + "\""; }
std::string out_flag(const std::string& name) { return " --out \"" + (work_dir() / name).string() + "\""; }

}  // namespace

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("expand --form delta --X 0") == 2);
  CHECK(run("expand --form nope --X 10") == 2);
  CHECK(run("expand --form delta --X 2000000") == 2);
  CHECK(run("sign-density --form delta --m 0 --X 100") == 2);
  CHECK(run("asymptotics --form lvl11 --kind sym --X 1000") == 2);
  CHECK(run("expand --recipe 1^3 --X 10") == 2);
  CHECK(run("") == 2);
}

TEST_CASE("expand prints the leading coefficients and reuses the cache byte for byte") {
  REQUIRE(run("expand --form delta --X 2000" + cache_flag(), "expand1.txt") == 0);
  const auto text = slurp(work_dir() / "expand1.txt");
  CHECK(text.find("a(2) = -24") != std::string::npos);
  CHECK(text.find("a(3) = 252") != std::string::npos);
  CHECK(text.find("(written)") != std::string::npos);
  const auto file = work_dir() / "cache" / "delta_X2000.coef";
  const auto bytes = slurp(file);
  const auto stamp = fs::last_write_time(file);
  REQUIRE(run("expand --form delta --X 2000" + cache_flag(), "expand2.txt") == 0);
  CHECK(slurp(work_dir() / "expand2.txt").find("(reused)") != std::string::npos);
  CHECK(slurp(file) == bytes);
  CHECK(fs::last_write_time(file) == stamp);
}

TEST_CASE("custom recipe matches the registry form") {
  REQUIRE(run("expand --recipe 1^2,11^2 --level 11 --X 50" + cache_flag(), "custom.txt") == 0);
  CHECK(slurp(work_dir() / "custom.txt").find("a(2) = -2") != std::string::npos);
}

TEST_CASE("sign-density auto-expands and honours --check") {
  REQUIRE(run("sign-density --form lvl32 --m 2 --X 20000 --check" + cache_flag() + out_flag("sd"), "sd.txt") == 0);
  CHECK(slurp(work_dir() / "sd.txt").find("notice:") != std::string::npos);
  const auto csv = slurp(work_dir() / "sd" / "sign_density.csv");
  CHECK(csv.find("lvl32,1,2,20000,") != std::string::npos);
  const auto json = nlohmann::json::parse(slurp(work_dir() / "sd" / "sign_density.json"));
  CHECK(json["metadata"]["schema_version"] == 1);
  CHECK(run("sign-density --form lvl32 --m 2 --X 20000 --check --tolerance 0" + cache_flag() + out_flag("sd")) ==
        1);
}

TEST_CASE("reports do not depend on the thread count") {
  for (const std::string cmd : {"sign-density --m 1,2,3,4", "distribution", "asymptotics --m 1,2 --blocks 8-12"}) {
    const std::string base = cmd + " --form delta --X 20000" + cache_flag();
    REQUIRE(run(base + " --threads 1" + out_flag("t1")) == 0);
    REQUIRE(run(base + " --threads 4" + out_flag("t4")) == 0);
  }
  for (const auto& entry : fs::directory_iterator(work_dir() / "t1")) {
    const auto name = entry.path().filename();
    const auto a = slurp(entry.path());
    const auto b = slurp(work_dir() / "t4" / name);
    if (name.extension() == ".json") {
      auto ja = nlohmann::json::parse(a), jb = nlohmann::json::parse(b);
      ja["metadata"].erase("generated_at");
      jb["metadata"].erase("generated_at");
      CHECK_MESSAGE(ja == jb, name.string());
    } else {
      CHECK_MESSAGE(a == b, name.string());
    }
  }
}

TEST_CASE("distribution writes the histogram and respects --max-ks") {
  REQUIRE(run("distribution --form delta --X 20000 --bins 20 --check" + cache_flag() + out_flag("dist")) == 0);
  const auto hist = slurp(work_dir() / "dist" / "histogram_delta.csv");
  CHECK(std::count(hist.begin(), hist.end(), '\n') == 21);
  CHECK(run("distribution --form delta --X 20000 --check --max-ks 0" + cache_flag() + out_flag("dist")) == 1);
}

TEST_CASE("selftest passes at reduced scale") {
  CHECK(run("selftest --X 3000", "selftest.txt") == 0);
  CHECK(slurp(work_dir() / "selftest.txt").find("FAIL") == std::string::npos);
}
