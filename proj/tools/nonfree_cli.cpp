// Command-line front end: resolves inputs to canonical JSON, runs one
// command and writes a deterministic report.
//
// Exit codes: 0 success, 1 input/parse error, 2 resource bound,
// 3 mathematical precondition violated, 4 internal consistency failure,
// 5 replay produced a different report.

#include <nonfree/commands.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using nonfree::io::json;

int emit(const json &report, const std::string &out) {
  const auto text = report.dump(2) + "\n";
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f)
      throw nonfree::InputError("cannot write '" + out + "'");
    f << text;
  }
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Nonfree actions of finite groups: lattices, measures, characters"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out, format = "json";
  app.add_option("--out", out, "Output file (default stdout)");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json"}));

  std::string group, action, measure, params, report_path;
  std::optional<std::uint64_t> trials, seed;

  auto *lattice = app.add_subcommand("lattice", "Subgroup lattice report");
  lattice->add_option("--group", group, "Registry name, JSON file or inline JSON")->required();

  auto *act = app.add_subcommand("action", "Classify a measured action and verify its character");
  act->add_option("--action", action, "<group>:<kind>, JSON file or inline JSON")->required();

  auto *meas = app.add_subcommand("measure", "Analyse an invariant measure on the subgroup lattice");
  meas->add_option("--measure", measure, "JSON file or inline JSON")->required();

  auto *thoma = app.add_subcommand("thoma", "Fixed-point probability of a Bernoulli coloring");
  thoma->add_option("--params", params, "JSON file or inline JSON")->required();
  thoma->add_option("--trials", trials, "Monte-Carlo trials");
  thoma->add_option("--seed", seed, "RNG seed");

  auto *rep = app.add_subcommand("replay", "Re-run a report from its echoed inputs");
  rep->add_option("report", report_path, "Report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    auto code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    using namespace nonfree;
    if (*lattice)
      return emit(cmd_lattice({{"group", io::to_json(io::resolve_group(group))}}), out);
    if (*act)
      return emit(cmd_action(io::resolve_action(action)), out);
    if (*meas)
      return emit(cmd_measure(io::resolve_measure(measure)), out);
    if (*thoma) {
      auto j = io::looks_like_json(params) ? io::parse_json(params, "params")
                                           : io::parse_json(io::read_file(params), params);
      return emit(cmd_thoma(io::thoma_input(j, trials, seed)), out);
    }
    if (*rep) {
      auto original = io::read_file(report_path);
      auto again = replay(io::parse_json(original, report_path));
      emit(again, out);
      if (again.dump(2) + "\n" != original) {
        std::cerr << "replay: regenerated report differs from " << report_path << "\n";
        return 5;
      }
      return 0;
    }
  } catch (const nonfree::InputError &e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const nonfree::BoundError &e) {
    std::cerr << "bound exceeded: " << e.what() << "\n";
    return 2;
  } catch (const nonfree::PreconditionError &e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return 3;
  } catch (const std::logic_error &e) {
    std::cerr << "internal check failed: " << e.what() << "\n";
    return 4;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
