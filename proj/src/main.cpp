#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "jetcc/report.hpp"

namespace {

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "jetcc: exact analysis of linear PDE systems over Q(x1..xn) — jet "
      "dimensions, Janet tabulars, compatibility conditions, syzygies and "
      "free resolutions"};
  app.require_subcommand(1);

  jetcc::ReportOptions opt;
  std::string input_path;
  std::string out_path;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"dims", "jet, solution and symbol dimensions level by level"},
      {"tabular", "delta-regularized Janet tabular with involutivity verdicts"},
      {"cc", "generating compatibility conditions"},
      {"syzygies", "relations among the generating compatibility conditions"},
      {"resolution", "free resolution ranks, orders and Euler characteristic"},
      {"full", "all analyses plus invariant cross-checks"},
  };
  for (const auto& [name, desc] : commands) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("input", input_path,
                    "system file ('-' or omitted reads standard input)");
    sub->add_option("--max-order", opt.max_order,
                    "scan cap for compatibility orders")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--depth", opt.depth, "extra jet levels shown by dims")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", opt.seed, "regularization seed");
    sub->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"text", "structured"}));
    sub->add_option("--out", out_path, "write the report to this file");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    std::string text = read_input(input_path);
    jetcc::SystemFile file = jetcc::parse_system(text);
    jetcc::Report rep = jetcc::run_command(file, command, opt);
    std::string payload = opt.format == "structured"
                              ? rep.structured.dump(2) + "\n"
                              : rep.text;
    if (out_path.empty()) {
      std::cout << payload;
    } else {
      std::ofstream out(out_path, std::ios::trunc);
      if (!out) {
        std::cerr << "error: cannot write to " << out_path << "\n";
        return 1;
      }
      out << payload;
    }
    return rep.exit_code;
  } catch (const jetcc::ParseError& e) {
    std::cerr << "parse error at " << e.line << ":" << e.col << ": "
              << e.what() << "\n";
    return 1;
  } catch (const jetcc::InternalError& e) {
    std::cerr << "internal invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
