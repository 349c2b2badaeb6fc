#include <iostream>

#include <CLI11.hpp>

#include "wbrst/cli/commands.hpp"

using wbrst::cli::RunConfig;

namespace {

void common_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_flag("--json", cfg.json, "Print the report as JSON");
}

void binding_options(CLI::App* sub, RunConfig& cfg, std::vector<std::string>& sets) {
  sub->add_option("--set", sets, "Bind a parameter, name=value (repeatable)");
  common_options(sub, cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact OPE, BRST and quantum Lie algebra checks"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::vector<std::string> sets;
  std::string file, family;

  auto* qla = app.add_subcommand("qla", "Quantum Lie algebra checks")->require_subcommand(1);
  for (const char* name : {"check", "brst"}) {
    auto* s = qla->add_subcommand(name, name == std::string("check") ? "Run every axiom and identity check"
                                                                     : "Build Q and verify Q*Q = 0");
    s->add_option("file", cfg.inputs, "QLA definition file")->required()->expected(1);
    common_options(s, cfg);
  }

  auto* cft = app.add_subcommand("cft", "OPE algebra and BRST checks")->require_subcommand(1);
  auto* validate = cft->add_subcommand("validate", "Grading, exchange symmetry and Jacobi identities of a table");
  validate->add_option("file", cfg.inputs, "Algebra definition file")->required()->expected(1);
  validate->add_option("--a2", cfg.a2, "Override a2 with a preset")->check(CLI::IsMember({"printed", "consistent"}));
  binding_options(validate, cfg, sets);

  auto* ope = cft->add_subcommand("ope", "Singular part of A(z)B(w)");
  ope->add_option("args", cfg.inputs, "FILE EXPR EXPR")->required()->expected(3);
  binding_options(ope, cfg, sets);

  auto* jacobi = cft->add_subcommand("jacobi", "Jacobi identities for three fields");
  jacobi->add_option("args", cfg.inputs, "FILE A B C")->required()->expected(4);
  binding_options(jacobi, cfg, sets);

  auto* brst = cft->add_subcommand("brst", "Nilpotency of the W3 or W3^(2) BRST current");
  brst->add_option("family", cfg.inputs, "w3 or w32")->required()->expected(1);
  brst->add_option("--g1", cfg.g1, "Ghost deformation parameter g1");
  brst->add_option("--g2", cfg.g2, "Ghost deformation parameter g2");
  auto* c_opt = brst->add_option("--c", cfg.c, "Central charge");
  brst->add_flag("--symbolic-c", cfg.symbolic_c, "Keep c symbolic (the default)")->excludes(c_opt);
  brst->add_option("--a2", cfg.a2, "a2 preset for W3")->check(CLI::IsMember({"printed", "consistent"}));
  common_options(brst, cfg);

  auto* critical = cft->add_subcommand("critical", "Central charges at which the current is nilpotent");
  critical->add_option("family", cfg.inputs, "w3 or w32")->required()->expected(1);
  common_options(critical, cfg);

  auto* solve = cft->add_subcommand("solve-conventional", "g1, g2 that remove the quartic and higher terms");
  common_options(solve, cfg);

  auto* oracle = app.add_subcommand("oracle", "Free-field mode oracle")->require_subcommand(1);
  auto* cross = oracle->add_subcommand("crosscheck", "Compare engine OPEs with Fock-space mode matrices");
  cross->add_option("file", cfg.inputs, "Free ghost algebra file")->required()->expected(1);
  cross->add_option("--level", cfg.level, "Slice level L")->capture_default_str();
  binding_options(cross, cfg, sets);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  for (auto* top : app.get_subcommands())
    for (auto* sub : top->get_subcommands()) cfg.command = {top->get_name(), sub->get_name()};

  try {
    for (const auto& s : sets) {
      auto [name, value] = wbrst::cli::parse_binding(s);
      cfg.bindings[name] = value;
    }
    auto out = wbrst::cli::run(cfg);
    if (cfg.json)
      std::cout << out.report.dump(2) << "\n";
    else
      std::cout << out.text;
    return out.pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
