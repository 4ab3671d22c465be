#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "sqrteuler/cli/interpreter.hpp"
#include "sqrteuler/io/serialize.hpp"
#include "sqrteuler/ktheory/kclass.hpp"

namespace fs = std::filesystem;
using se::cli::Report;

namespace {

bool read_file(const fs::path& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

void print_diagnostic(const std::string& file, const Report& r) {
  if (!r.error) return;
  std::cerr << file << ":" << r.error->pos.line << ":" << r.error->pos.column << ": error: " << r.error->message
            << "\n";
}

int run_command(const std::string& file, const std::string& format, int cap, bool quiet) {
  std::string text;
  if (!read_file(file, text)) {
    std::cerr << file << ": error: cannot read file\n";
    return 2;
  }
  const Report report = se::cli::run_text(text, {cap});
  if (format == "json") {
    std::cout << se::cli::render_json(report);
  } else if (!quiet) {
    std::cout << se::cli::render_text(report);
  }
  print_diagnostic(file, report);
  return report.exit_code();
}

int check_command(const std::string& dir, const std::string& format, int cap, bool quiet) {
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".se") files.push_back(entry.path());
  }
  if (ec) {
    std::cerr << dir << ": error: " << ec.message() << "\n";
    return 2;
  }
  std::sort(files.begin(), files.end());

  using se::io::Json;
  Json scripts = Json::array();
  int ok = 0, failed = 0, errors = 0;
  for (const auto& path : files) {
    std::string text;
    Report report;
    if (!read_file(path, text)) {
      report.error = se::cli::Diagnostic{{0, 0}, "cannot read file"};
    } else {
      report = se::cli::run_text(text, {cap});
    }
    const int code = report.exit_code();
    (code == 0 ? ok : code == 1 ? failed : errors) += 1;
    const std::string name = path.filename().string();
    if (format == "json") {
      Json j;
      j["file"] = name;
      j["exit"] = code;
      j["report"] = Json::parse(se::cli::render_json(report));
      scripts.push_back(std::move(j));
    } else if (!quiet || code != 0) {
      std::cout << (code == 0 ? "ok    " : code == 1 ? "FAIL  " : "ERROR ") << name << "  (" << report.passed
                << " passed, " << report.failed << " failed)\n";
    }
    print_diagnostic(path.string(), report);
  }
  if (format == "json") {
    Json out;
    out["scripts"] = std::move(scripts);
    out["summary"] = Json{{"ok", ok}, {"failed", failed}, {"errors", errors}};
    std::cout << se::io::dump(out);
  } else if (!quiet) {
    std::cout << files.size() << " scripts: " << ok << " ok, " << failed << " failed, " << errors << " errors\n";
  }
  return errors > 0 ? 2 : failed > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Square-root Euler class calculator"};
  app.require_subcommand(1);

  std::string format = "text";
  int cap = se::fgl::kDefaultCap;
  bool quiet = false;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--cap", cap, "Truncation degree for K-theory and formal group law series")
        ->check(CLI::Range(1, 64));
    sub->add_flag("--quiet", quiet, "Only report failures and errors");
  };

  std::string file;
  auto* run = app.add_subcommand("run", "Evaluate a script");
  run->add_option("file", file, "Script file")->required();
  add_common(run);

  std::string dir;
  auto* check = app.add_subcommand("check", "Run every .se script in a directory");
  check->add_option("dir", dir, "Directory of scripts")->required();
  add_common(check);

  std::string which;
  long index = 0;
  auto* coeff = app.add_subcommand("coeff", "Print a coefficient of the square-root line series");
  coeff->add_option("name", which, "Coefficient family")->required()->check(CLI::IsMember({"a_i"}));
  coeff->add_option("i", index, "Index")->required()->check(CLI::Range(1L, 100000L));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*run) return run_command(file, format, cap, quiet);
  if (*check) return check_command(dir, format, cap, quiet);
  std::cout << se::ktheory::sqrt_line_coefficient(index).str() << "\n";
  return 0;
}
