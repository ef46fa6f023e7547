#pragma once

// Runs the comprun binary through the shell and captures exit code, stdout
// and stderr. Shared by the CLI tests and the acceptance driver.

#include <sys/wait.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

namespace comprun::testing {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::filesystem::path scratch_dir() {
  static const std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() / ("comprun-test-" + std::to_string(::getpid()));
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

inline std::filesystem::path scratch_file(const std::string& stem) {
  static std::atomic<int> counter{0};
  return scratch_dir() / (stem + "-" + std::to_string(counter++));
}

// env is a prefix such as "COMPRUN_ENUM_CAP=5 " (may be empty).
inline RunResult run_cli(const std::string& args, const std::string& env = "") {
  const auto out = scratch_file("out");
  const auto err = scratch_file("err");
  const std::string cmd = "env -u SOURCE_DATE_EPOCH -u COMPRUN_PRECISION " + env + " '" COMPRUN_CLI_PATH "' " +
                          args + " >'" + out.string() + "' 2>'" + err.string() + "'";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  std::filesystem::remove(out);
  std::filesystem::remove(err);
  return r;
}

// Exit code of the schema validator over the given JSON text.
inline int validate_json(const std::string& json_text) {
  const auto file = scratch_file("record");
  {
    std::ofstream f(file.string() + ".json", std::ios::binary);
    f << json_text;
  }
  const std::string cmd = "'" COMPRUN_PYTHON "' '" COMPRUN_SOURCE_DIR "/tests/validate_schema.py' '" COMPRUN_SOURCE_DIR
                          "/schemas/composition-runs-v1.schema.json' '" +
                          file.string() + ".json'";
  const int status = std::system(cmd.c_str());
  std::filesystem::remove(file.string() + ".json");
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace comprun::testing
