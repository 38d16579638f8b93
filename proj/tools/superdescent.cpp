#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "superdescent/cli.hpp"
#include "superdescent/errors.hpp"

using namespace superdescent;

namespace {

std::vector<int> parse_levels(const std::string& text) {
  std::vector<int> levels;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item.empty() || v < 1) throw InputError("bad level list \"" + text + "\"");
    levels.push_back(v);
  }
  if (levels.empty()) throw InputError("empty level list");
  return levels;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Supercharacters of algebra groups over finite field towers"};
  app.require_subcommand(1);

  std::string spec_path, levels_text = "1", format = "tsv";
  int level = 1, from = 0, to = 1;
  std::uint64_t size_bound = std::uint64_t{1} << 24;
  bool slow_oracle = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--spec", spec_path, "algebra spec file (JSON)")->required();
    sub->add_option("--levels", levels_text, "comma separated levels, closed under divisors");
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"tsv", "json"}));
    sub->add_option("--size-bound", size_bound, "largest enumerable set");
    sub->add_flag("--slow-oracle", slow_oracle, "also run the quadratic induction oracle");
  };
  CLI::App* info = app.add_subcommand("info", "dimensions, group orders, class counts");
  CLI::App* table = app.add_subcommand("table", "supercharacter table at one level");
  CLI::App* shintani = app.add_subcommand("shintani", "norm map and descent between two levels");
  CLI::App* verify = app.add_subcommand("verify", "run the invariant battery");
  CLI::App* superdual = app.add_subcommand("superdual", "superdual and Serre dual classes");
  for (CLI::App* sub : {info, table, shintani, verify, superdual}) add_common(sub);
  table->add_option("--level", level, "level n");
  shintani->add_option("--from", from, "upper level n (default: largest of --levels)");
  shintani->add_option("--to", to, "lower level m");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  CommandResult result;
  try {
    const AlgebraSpec spec = load_spec_file(spec_path);
    RunConfig config;
    config.levels = parse_levels(levels_text);
    config.size_bound = size_bound;
    config.format = format == "json" ? OutputFormat::json : OutputFormat::tsv;
    config.slow_oracle = slow_oracle;

    if (info->parsed()) {
      result = cmd_info(spec, config);
    } else if (table->parsed()) {
      result = cmd_table(spec, config, level);
    } else if (shintani->parsed()) {
      const int n = from > 0 ? from : *std::max_element(config.levels.begin(), config.levels.end());
      result = cmd_shintani(spec, config, n, to);
    } else if (verify->parsed()) {
      result = cmd_verify(spec, config);
    } else {
      result = cmd_superdual(spec, config);
    }
  } catch (const InputError& e) {
    result = CommandResult{kInputError, "", e.what()};
  }

  std::cout << result.output;
  if (!result.error.empty()) std::cerr << "error: " << result.error << "\n";
  return result.exit_code;
}
