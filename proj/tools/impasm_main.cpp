#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "impasm/commands.hpp"

using namespace impasm;

int main(int argc, char** argv) {
  CLI::App app{"impasm: finite implicative algebras, assemblies and their completions"};
  app.require_subcommand(1);
  app.fallthrough();

  std::vector<std::string> ws_paths;
  bool no_validate = false;
  std::string json_path;
  long seed = 0;
  app.add_option("-w,--workspace", ws_paths, "workspace file(s)");
  app.add_flag("--no-validate", no_validate, "skip validation at load");
  app.add_option("--json", json_path, "write the JSON report to this path");
  app.add_option("--seed", seed,
                 "recorded in the report; all choices are lexicographic");

  std::map<std::string, std::string> flags;
  std::string command;
  auto sub = [&](const std::string& name, const std::string& desc) {
    auto* s = app.add_subcommand(name, desc);
    s->callback([&command, name] { command = name; });
    return s;
  };

  sub("check", "validate every loaded object");
  auto* c_interp = sub("interp", "interpret a term into an algebra");
  c_interp->add_option("-t,--term", flags["term"], "term text or workspace term name")
      ->required();
  c_interp->add_option("-a,--algebra", flags["algebra"], "algebra name");
  auto* c_tracked = sub("tracked", "decide trackedness of a morphism");
  c_tracked->add_option("-f,--morphism", flags["morphism"], "morphism name")
      ->required();
  auto* c_image = sub("image", "image factorization of a morphism");
  c_image->add_option("-f,--morphism", flags["morphism"], "morphism name")->required();
  sub("limits", "verify finite limits of the loaded assemblies");
  auto* c_density = sub("density", "is M dense in the separator?");
  c_density->add_option("-M,--subset", flags["subset"], "subset name")->required();
  c_density->add_option("--strategy", flags["strategy"], "canonical | exhaustive");
  c_density->add_option("--with", flags["with"],
                        "user valuation, e.g. 's1: m1 m2; s2: m1'");
  auto* c_compact = sub("compactness", "bounded compactness of M");
  c_compact->add_option("-M,--subset", flags["subset"], "subset name")->required();
  c_compact->add_option("--bound", flags["bound"], "index-set bound");
  auto* c_gen = sub("generator", "algebraic + dense + compact");
  c_gen->add_option("-M,--subset", flags["subset"], "subset name")->required();
  c_gen->add_option("--bound", flags["bound"], "index-set bound");
  auto* c_reglex = sub("reglex", "U-equivalence report for the reg/lex completion");
  c_reglex->add_option("-M,--subset", flags["subset"], "subset name")->required();
  c_reglex->add_option("--bound", flags["bound"], "carrier bound");
  sub("exlex", "pseudo-groupoid validation and hom counts");
  auto* c_kcheck = sub("kcheck", "K-functor suite");
  c_kcheck->add_option("-M,--subset", flags["subset"],
                       "subset used for the hat construction");
  sub("report", "validate everything and emit the JSON report");

  CLI11_PARSE(app, argc, argv);

  // drop empty flags so defaults apply
  for (auto it = flags.begin(); it != flags.end();)
    it = it->second.empty() ? flags.erase(it) : std::next(it);

  Report rep;
  try {
    Workspace ws = parse_workspace(ws_paths, !no_validate);
    rep = execute(ws, command, flags);
  } catch (const Error& e) {
    rep.command = command;
    rep.verdict = "error";
    rep.violations.push_back(e.what());
  }
  rep.details["seed"] = seed;
  std::cout << rep.text();
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    out << rep.to_json().dump(2) << "\n";
  }
  return rep.exit_code();
}
