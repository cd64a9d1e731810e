#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "diffalg/session.hpp"

namespace {

enum Exit { kOk = 0, kParse = 2, kSemantic = 3, kVerdict = 4 };

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with parameterized linear differential systems"};
  app.require_subcommand(1);
  std::string file, out_path;
  bool quiet = false;
  diffalg::SessionOptions options;
  CLI::App* run = app.add_subcommand("run", "Run a session file and emit a certificate");
  run->add_option("file", file, "Session file (YAML)")->required();
  run->add_option("--out", out_path, "Write the certificate here instead of stdout");
  run->add_option("--degree-bound", options.degree_bound, "Default degree bound for horizontal");
  run->add_option("--depth", options.depth, "Default prolongation depth for closure");
  run->add_option("--rank-cap", options.rank_cap, "Default rank cap for closure");
  run->add_flag("--quiet", quiet, "No per-command summary on stderr");
  CLI11_PARSE(app, argc, argv);

  std::ifstream in(file, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << file << "\n";
    return kParse;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  diffalg::SessionResult result;
  try {
    diffalg::Session session(buf.str());
    result = session.run(options);
  } catch (const diffalg::SessionError& e) {
    std::cerr << (e.kind() == diffalg::SessionError::Kind::Parse ? "parse error: " : "semantic error: ") << e.what()
              << "\n";
    return e.kind() == diffalg::SessionError::Kind::Parse ? kParse : kSemantic;
  }

  const std::string text = diffalg::certificate_text(result.certificate);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return kSemantic;
    }
    out << text;
  }
  if (!quiet)
    for (const auto& r : result.certificate["results"])
      std::cerr << r["command"]["op"].get<std::string>() << ": " << r["verdict"].get<std::string>() << "\n";
  return result.verdicts_ok ? kOk : kVerdict;
}
