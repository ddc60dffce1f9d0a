#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <ltlfmc/compile.hpp>
#include <ltlfmc/error.hpp>
#include <ltlfmc/hardness.hpp>
#include <ltlfmc/modelcheck.hpp>
#include <ltlfmc/systems.hpp>

#include "fuzz.hpp"

namespace fs = std::filesystem;
using namespace ltlfmc;

namespace
{
  enum exit_code : int
  {
    exit_holds = 0,
    exit_violated = 1,
    exit_usage = 2,
    exit_internal = 3,
  };

  /// Raised for bad flag combinations detected after CLI11 parsing.
  struct usage_error : std::runtime_error
  {
    using std::runtime_error::runtime_error;
  };

  std::string read_file(const std::string& path)
  {
    std::ifstream in(path, std::ios::binary);
    if (!in)
      throw usage_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  void write_file(const fs::path& path, const std::string& text)
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text))
      throw usage_error("cannot write " + path.string());
  }

  struct formula_source
  {
    std::string text;
    std::string file;

    void attach(CLI::App* sub)
    {
      auto* a = sub->add_option("--formula,-f", text, "formula text");
      auto* b = sub->add_option("--formula-file", file, "file holding the formula")
                    ->check(CLI::ExistingFile);
      a->excludes(b);
      b->excludes(a);
    }

    /// A file may start with a `dialect ltlf|ltl` line.
    [[nodiscard]] formula load(dialect want = dialect::ltlf) const
    {
      if (file.empty())
        return parse_formula(text, want);
      std::string body = read_file(file);
      std::istringstream in(body);
      std::string first;
      std::getline(in, first);
      std::istringstream words(first);
      std::string kw, name;
      if (words >> kw && kw == "dialect")
        {
          words >> name;
          dialect d;
          if (name == "ltlf")
            d = dialect::ltlf;
          else if (name == "ltl")
            d = dialect::ltl;
          else
            throw usage_error(file + ": unknown dialect '" + name + "'");
          if (d != want)
            throw usage_error(file + ": expected dialect " +
                              (want == dialect::ltlf ? "ltlf" : "ltl") + ", file declares " + name);
          // Keep line numbers stable for parse errors.
          body.replace(0, first.size(), std::string(first.size(), ' '));
        }
      return parse_formula(body, want);
    }
  };

  struct system_source
  {
    std::string ts_file;
    std::string moore_file;
    bool terminal_continue = false;

    void attach(CLI::App* sub)
    {
      auto* a = sub->add_option("--system,-s", ts_file, "transition system (ts format)")
                    ->check(CLI::ExistingFile);
      auto* b = sub->add_option("--moore", moore_file, "Moore machine (moore format)")
                    ->check(CLI::ExistingFile);
      a->excludes(b);
      b->excludes(a);
      sub->add_flag("--terminal-continue", terminal_continue,
                    "keep outgoing edges of terminal states of a Moore machine");
    }

    [[nodiscard]] transition_system load() const
    {
      if (!ts_file.empty())
        {
          if (terminal_continue)
            throw usage_error("--terminal-continue applies to --moore only");
          return parse_ts(read_file(ts_file));
        }
      return moore_to_ts(parse_moore(read_file(moore_file)), {terminal_continue});
    }
  };

  // ---------------------------------------------------------------- check

  struct check_cmd
  {
    system_source sys;
    formula_source phi;
    std::string mode = "auto";
    std::string cex_out;
    bool stats = false;

    void attach(CLI::App* sub)
    {
      sys.attach(sub);
      phi.attach(sub);
      sub->add_option("--mode", mode, "auto reads the system header")
          ->check(CLI::IsMember({"auto", "terminating", "nonterminating"}));
      sub->add_option("--cex", cex_out, "write the counterexample here");
      sub->add_flag("--stats", stats, "print search statistics");
    }

    int run() const
    {
      transition_system m = sys.load();
      formula f = phi.load();
      if (mode != "auto" && mode != to_string(m.kind()))
        throw usage_error("--mode " + mode + " but the system is " + to_string(m.kind()));
      verdict v = check(m, f);
      for (const auto& w : v.warnings)
        std::cerr << "warning: " << w << '\n';
      std::cout << to_string(v.result) << '\n';
      if (stats)
        std::cout << "explored " << v.stats.explored_states << '\n'
                  << "peak-frontier " << v.stats.peak_frontier << '\n'
                  << "pruned " << v.stats.pruned_states << '\n'
                  << "rejecting-expansions " << v.stats.rejecting_expansions << '\n'
                  << "automaton-states " << v.stats.automaton_states << '\n'
                  << "seconds " << v.stats.seconds << '\n';
      if (v.result == outcome::holds)
        return exit_holds;
      if (!v.cex)
        {
          std::cerr << "internal: violated verdict without counterexample\n";
          return exit_internal;
        }
      const std::string text = render_cex(m, *v.cex);
      std::cout << text;
      if (!cex_out.empty())
        write_file(cex_out, text);
      certification c = certify_counterexample(m, f, parse_cex(m, text));
      if (!c.ok())
        {
          std::cerr << "internal: counterexample does not certify: " << c.message << '\n';
          return exit_internal;
        }
      return exit_violated;
    }
  };

  // -------------------------------------------------------------- certify

  struct certify_cmd
  {
    system_source sys;
    formula_source phi;
    std::string cex_file;

    void attach(CLI::App* sub)
    {
      sys.attach(sub);
      phi.attach(sub);
      sub->add_option("--cex", cex_file, "counterexample file")
          ->required()
          ->check(CLI::ExistingFile);
    }

    int run() const
    {
      transition_system m = sys.load();
      formula f = phi.load();
      certification c = certify_counterexample(m, f, parse_cex(m, read_file(cex_file)));
      switch (c.kind)
        {
        case certification::failure::none:
          std::cout << "certified (horizon " << c.horizon << ")\n";
          return 0;
        case certification::failure::structural:
          std::cout << "not certified: structural: " << c.message << '\n';
          return 1;
        case certification::failure::semantic:
          std::cout << "not certified: semantic: " << c.message << '\n';
          return 1;
        }
      return exit_internal;
    }
  };

  // -------------------------------------------------------------- compile

  struct compile_cmd
  {
    formula_source phi;
    std::string target;
    std::string emit = "aut";
    std::vector<std::string> extra_props;
    std::string out;

    void attach(CLI::App* sub)
    {
      phi.attach(sub);
      sub->add_option("--target", target)
          ->required()
          ->check(CLI::IsMember({"nfa", "dfa", "prefix-dba"}));
      sub->add_option("--emit", emit)->check(CLI::IsMember({"aut", "dot"}));
      sub->add_option("--props", extra_props, "alphabet beyond the formula's atoms")
          ->delimiter(',');
      sub->add_option("--out,-o", out, "output file (default stdout)");
    }

    int run() const
    {
      formula f = phi.load();
      for (const auto& p : extra_props)
        if (!is_identifier(p))
          throw usage_error("bad proposition name '" + p + "'");
      prop_set props = merge(f.atom_set(), prop_set(extra_props));
      automaton a = target == "nfa"   ? automaton(ltlf_to_nfa(f, props))
                    : target == "dfa" ? automaton(ltlf_to_dfa(f, props))
                                      : automaton(prefix_dba(f, props));
      std::string text =
          emit == "aut" ? write_aut(a) : std::visit([](const auto& x) { return to_dot(x); }, a);
      if (out.empty())
        std::cout << text;
      else
        write_file(out, text);
      return 0;
    }
  };

  // ------------------------------------------------------------ translate

  struct translate_cmd
  {
    formula_source phi;

    void attach(CLI::App* sub) { phi.attach(sub); }

    int run() const
    {
      formula f = phi.load();
      std::cout << render_formula(translate_fragment(f), dialect::ltl) << '\n';
      return 0;
    }
  };

  // ------------------------------------------------------------------ gen

  struct gen_tm_cmd
  {
    std::string machine;
    std::string input;
    std::string out;
    std::string variant = "corrected";

    void attach(CLI::App* sub)
    {
      sub->add_option("--machine", machine, "machine (tm format)")
          ->required()
          ->check(CLI::ExistingFile);
      sub->add_option("--input", input, "input word")->required();
      sub->add_option("--out", out, "output directory")->required();
      sub->add_option("--variant", variant)->check(CLI::IsMember({"corrected", "literal"}));
    }

    int run() const
    {
      turing_machine tm = parse_tm(read_file(machine));
      tm_instance inst = gen_tm_instance(
          tm, input, variant == "literal" ? reduction_variant::literal : reduction_variant::corrected);
      tm_run r = simulate_tm(tm, input);
      fs::create_directories(out);
      write_file(fs::path(out) / "instance.ts", render_ts(inst.system));
      write_file(fs::path(out) / "instance.ltlf",
                 "dialect ltlf\n" + render_formula(inst.property) + '\n');
      std::cout << "states " << inst.system.num_states() << '\n'
                << "props " << inst.props.size() << '\n'
                << "formula-size " << inst.property.size() << '\n'
                << "cn " << inst.cn << '\n'
                << "simulator " << to_string(r.outcome) << " after " << r.steps << " steps\n";
      return 0;
    }
  };

  struct gen_phin_cmd
  {
    std::size_t n = 1;
    std::string out;
    std::string variant = "corrected";

    void attach(CLI::App* sub)
    {
      sub->add_option("--n", n)->required();
      sub->add_option("--out", out, "output directory")->required();
      sub->add_option("--variant", variant)->check(CLI::IsMember({"corrected", "literal"}));
    }

    int run() const
    {
      formula f = gen_phi_n(n, variant == "literal" ? phi_variant::literal : phi_variant::corrected);
      fs::create_directories(out);
      const std::string name = "phi_" + std::to_string(n) + ".ltlf";
      write_file(fs::path(out) / name, "dialect ltlf\n" + render_formula(f) + '\n');
      std::cout << name << " size " << f.size() << '\n';
      return 0;
    }
  };

  // ----------------------------------------------------------------- fuzz

  struct fuzz_cmd
  {
    tool::fuzz_options opts;

    void attach(CLI::App* sub)
    {
      sub->add_option("--seed", opts.seed);
      sub->add_option("--max-size", opts.max_size)->check(CLI::Range(1, 12));
      sub->add_option("--props", opts.props, "number of atoms a, b, ...")->check(CLI::Range(1, 4));
      sub->add_option("--trials", opts.trials);
    }

    int run() const { return tool::run_fuzz(opts, std::cout) ? 0 : 1; }
  };
}

int main(int argc, char** argv)
{
  CLI::App app{"LTLf prefix-language model checker"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  check_cmd check_c;
  certify_cmd certify_c;
  compile_cmd compile_c;
  translate_cmd translate_c;
  gen_tm_cmd gen_tm_c;
  gen_phin_cmd gen_phin_c;
  fuzz_cmd fuzz_c;

  auto* check_s = app.add_subcommand("check", "model check a system against a formula");
  check_c.attach(check_s);
  auto* certify_s = app.add_subcommand("certify", "replay a counterexample");
  certify_c.attach(certify_s);
  auto* compile_s = app.add_subcommand("compile", "build an automaton for a formula");
  compile_c.attach(compile_s);
  auto* translate_s = app.add_subcommand("translate", "LTL formula with the same prefix language");
  translate_c.attach(translate_s);
  auto* gen_s = app.add_subcommand("gen", "instance generators");
  gen_s->require_subcommand(1);
  auto* gen_tm_s = gen_s->add_subcommand("tm", "model checking instance from a machine");
  gen_tm_c.attach(gen_tm_s);
  auto* gen_phin_s = gen_s->add_subcommand("phin", "the phi_n formula family");
  gen_phin_c.attach(gen_phin_s);
  auto* fuzz_s = app.add_subcommand("fuzz", "oracle agreement suites on random inputs");
  fuzz_c.attach(fuzz_s);

  try
    {
      app.parse(argc, argv);
    }
  catch (const CLI::CallForHelp& e)
    {
      return app.exit(e);
    }
  catch (const CLI::CallForAllHelp& e)
    {
      return app.exit(e);
    }
  catch (const CLI::ParseError& e)
    {
      app.exit(e);
      return exit_usage;
    }

  auto need = [](const CLI::App* s, const char* a, const char* b) {
    if (s->count(a) + s->count(b) == 0)
      throw usage_error(std::string(a) + " or " + b + " is required");
  };

  try
    {
      for (auto* s : {check_s, certify_s, compile_s, translate_s})
        if (*s)
          need(s, "--formula", "--formula-file");
      for (auto* s : {check_s, certify_s})
        if (*s)
          need(s, "--system", "--moore");
      if (*check_s)
        return check_c.run();
      if (*certify_s)
        return certify_c.run();
      if (*compile_s)
        return compile_c.run();
      if (*translate_s)
        return translate_c.run();
      if (*gen_tm_s)
        return gen_tm_c.run();
      if (*gen_phin_s)
        return gen_phin_c.run();
      if (*fuzz_s)
        return fuzz_c.run();
    }
  catch (const usage_error& e)
    {
      std::cerr << "error: " << e.what() << '\n';
      return exit_usage;
    }
  catch (const fragment_error& e)
    {
      std::cerr << "fragment error: " << e.what() << '\n';
      return exit_usage;
    }
  catch (const parse_error& e)
    {
      std::cerr << "parse error: " << e.what() << '\n';
      return exit_usage;
    }
  catch (const error& e)
    {
      std::cerr << "error: " << e.what() << '\n';
      return exit_usage;
    }
  catch (const std::exception& e)
    {
      std::cerr << "internal: " << e.what() << '\n';
      return exit_internal;
    }
  return exit_usage;
}
