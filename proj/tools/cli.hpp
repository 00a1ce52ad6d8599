#pragma once

// Command-line front end. run_cli() is the whole program; main() only forwards
// to it so the reports can be golden-tested in-process.

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cra/cra.hpp"

namespace cra::cli {

enum ExitCode : int { kReachable = 0, kNotReachable = 1, kInputError = 2, kResourceLimit = 3 };

struct CliConfig {
  std::string file;
  std::string dot_path;
  std::string target;
  std::string method;
  std::string output;
  std::string preset;
  std::string n_range = "3..8";
  bool random = false;
  bool full_divisor_scan = false;
  bool certificate = false;
  std::size_t n = 0;
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
  std::size_t jobs = 1;
  std::size_t limit_states = 22;
  std::size_t max_k = 64;
  std::size_t pair_cap = 50'000'000;
  std::size_t chain_max_n = 10;
  int verbosity = 0;
};

namespace detail {

inline BinaryDfa load(const std::string& path) {
  if (path == "-") return parse_dfa(std::cin);
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return parse_dfa(in);
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << text;
}

inline StateSet parse_target(const std::string& spec, std::size_t n) {
  StateSet s(n);
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &pos);
    } catch (const std::exception&) {
      throw ParseError(0, "bad target state '" + tok + "'");
    }
    if (pos != tok.size() || v >= n) throw ParseError(0, "bad target state '" + tok + "'");
    s.insert(static_cast<State>(v));
  }
  if (s.empty()) throw ParseError(0, "target must name at least one state");
  return s;
}

inline std::pair<std::size_t, std::size_t> parse_range(const std::string& spec) {
  const auto dots = spec.find("..");
  try {
    if (dots == std::string::npos) {
      const auto v = std::stoul(spec);
      return {v, v};
    }
    return {std::stoul(spec.substr(0, dots)), std::stoul(spec.substr(dots + 2))};
  } catch (const std::exception&) {
    throw ParseError(0, "bad range '" + spec + "', expected A..B");
  }
}

inline std::string verdict_line(const Verdict& v, std::size_t n) {
  if (v.completely_reachable) return "COMPLETELY_REACHABLE";
  if (v.reason == VerdictReason::InvariantSubgroup)
    return "NOT_COMPLETELY_REACHABLE: invariant subgroup " + std::to_string(*v.invariant_divisor) + "Z_" +
           std::to_string(n);
  return "NOT_COMPLETELY_REACHABLE: " + v.detail;
}

inline void print_levels(const ChainResult& chain, std::ostream& out) {
  for (std::size_t i = 0; i < chain.levels.size(); ++i) {
    const auto& l = chain.levels[i];
    out << "k=" << l.k << " D_" << l.k << " = " << l.dk.to_string() << " H_" << l.k << " = <" << l.hk_gen << ">";
    if (i + 1 == chain.levels.size())
      out << "; outcome: " << to_string(chain.outcome) << '(' << chain.ell << ')';
    out << '\n';
  }
}

inline int cmd_decide(const CliConfig& cfg, std::ostream& out) {
  const auto dfa = load(cfg.file);
  const auto v = decide(dfa, {.restrict_to_gcd = !cfg.full_divisor_scan});
  out << verdict_line(v, dfa.size()) << '\n';
  if (cfg.certificate && classify(dfa).verdict == ShapeVerdict::Standardizable) {
    ChainOptions opts{.pair_cap = cfg.pair_cap, .max_k = cfg.max_k};
    print_levels(compute_chain(standardize(dfa), opts), out);
  }
  return v.completely_reachable ? kReachable : kNotReachable;
}

inline int cmd_analyze(const CliConfig& cfg, std::ostream& out) {
  const auto dfa = load(cfg.file);
  const auto cls = classify(dfa);
  out << "states: " << dfa.size() << '\n';
  out << "classification: " << to_string(cls.verdict) << " (" << cls.detail << ")\n";
  const auto v = decide(dfa, {.restrict_to_gcd = !cfg.full_divisor_scan});
  if (cls.verdict == ShapeVerdict::Standardizable) {
    const auto sdfa = standardize(dfa);
    const auto ra = difference_set(sdfa);
    bool identity = true;
    for (State q = 0; q < sdfa.size(); ++q) identity = identity && sdfa.to_new()[q] == q;
    out << "standardized: " << (identity && sdfa.shift() == 0 && !sdfa.letters_swapped() ? "as given" : "relabeled")
        << '\n';
    out << "r = " << sdfa.r() << ", dupl(a) = " << sdfa.dupl_a() << '\n';
    out << "D_1 = " << ra.d1.to_string() << '\n';
    out << "H_1 = <" << ra.h1_gen << ">\n";
    out << "Rystsov graph: " << (ra.strongly_connected ? "strongly connected" : "not strongly connected") << '\n';
    out << "SCCs: " << ra.scc_count << '\n';
    out << "coset structure: " << (coset_structure_check(sdfa, ra) ? "ok" : "VIOLATED") << '\n';
    if (cfg.verbosity > 0)
      for (const auto& [d, w] : ra.witnesses()) out << "  witness " << d << ": " << w.to_compact() << '\n';
    if (!cfg.dot_path.empty()) export_dot(ra, cfg.dot_path);
  } else if (!cfg.dot_path.empty()) {
    throw NotStandardizable("--dot needs a standardizable automaton");
  }
  out << verdict_line(v, dfa.size()) << '\n';
  return v.completely_reachable ? kReachable : kNotReachable;
}

inline int cmd_chain(const CliConfig& cfg, std::ostream& out) {
  const auto dfa = load(cfg.file);
  const auto cls = classify(dfa);
  if (cls.verdict != ShapeVerdict::Standardizable) {
    const auto v = decide(dfa);
    out << "no subgroup chain: " << to_string(cls.verdict) << " (" << cls.detail << ")\n";
    out << verdict_line(v, dfa.size()) << '\n';
    return v.completely_reachable ? kReachable : kNotReachable;
  }
  ChainOptions opts{.pair_cap = cfg.pair_cap, .max_k = cfg.max_k};
  if (cfg.method == "pairs") opts.method = LevelSearch::Pairs;
  const auto chain = compute_chain(standardize(dfa), opts);
  print_levels(chain, out);
  return chain.completely_reachable() ? kReachable : kNotReachable;
}

inline int cmd_oracle(const CliConfig& cfg, std::ostream& out) {
  const auto dfa = load(cfg.file);
  const auto rep = enumerate_reachable(dfa, cfg.limit_states);
  const std::size_t total = (std::size_t{1} << dfa.size()) - 1;
  out << "reachable subsets: " << rep.reachable_count << " of " << total << '\n';
  out << "complete: " << (rep.complete ? "yes" : "no") << '\n';
  for (const auto& s : rep.unreachable_sample) out << "unreachable: " << s.to_string() << '\n';
  return rep.complete ? kReachable : kNotReachable;
}

inline int cmd_witness(const CliConfig& cfg, std::ostream& out) {
  const auto dfa = load(cfg.file);
  const auto target = parse_target(cfg.target, dfa.size());
  std::string method = cfg.method;
  if (method.empty()) method = dfa.size() <= cfg.limit_states ? "oracle" : "constructive";
  Word w;
  if (method == "oracle") {
    const auto rep = enumerate_reachable(dfa, cfg.limit_states);
    if (!rep.reachable(target)) {
      out << "UNREACHABLE: " << target.to_string() << '\n';
      return kNotReachable;
    }
    w = witness_word(rep, target);
  } else {
    const auto sdfa = standardize(dfa);
    ChainOptions opts{.pair_cap = cfg.pair_cap, .max_k = cfg.max_k};
    const auto chain = compute_chain(sdfa, opts);
    if (!chain.completely_reachable()) {
      out << "NOT_COMPLETELY_REACHABLE: subgroup chain stabilized at H_" << chain.ell << " = <"
          << chain.generator(chain.ell, dfa.size()) << ">\n";
      return kNotReachable;
    }
    w = sdfa.to_original_word(synthesize_witness_constructive(sdfa, chain, sdfa.from_original_states(target)));
    if (apply_word(dfa, StateSet::full(dfa.size()), w) != target)
      throw InternalError("translated witness failed replay");
  }
  out << "target: " << target.to_string() << '\n';
  out << "word: " << w.to_compact() << '\n';
  out << "length: " << w.size() << '\n';
  return kReachable;
}

inline int cmd_standardize(const CliConfig& cfg, std::ostream& out) {
  const auto dfa = load(cfg.file);
  const auto sdfa = standardize(dfa);
  std::ostringstream os;
  os << serialize_dfa(sdfa.dfa());
  const char cyc = sdfa.letters_swapped() ? 'a' : 'b';
  const char def = sdfa.letters_swapped() ? 'b' : 'a';
  os << "# r = " << sdfa.r() << ", dupl(a) = " << sdfa.dupl_a() << '\n';
  os << "# a = " << cyc << '^' << sdfa.shift() << ' ' << def << ", b = " << cyc << " in the input's letters\n";
  os << "# relabeling: <new> <old>\n";
  for (State q = 0; q < sdfa.size(); ++q) os << "# " << q << ' ' << sdfa.to_old()[q] << '\n';
  write_output(cfg.output, os.str(), out);
  return kReachable;
}

inline int cmd_gen(const CliConfig& cfg, std::ostream& out) {
  if (cfg.random == !cfg.preset.empty()) throw CLI::ValidationError("gen", "give exactly one of --preset or --random");
  const BinaryDfa dfa = cfg.random ? random_standardized(cfg.n, cfg.seed).dfa() : preset(cfg.preset).dfa;
  write_output(cfg.output, serialize_dfa(dfa), out);
  return kReachable;
}

struct SweepRow {
  std::size_t automata = 0;
  std::size_t reachable = 0;
  std::size_t disagreements = 0;
};

inline void check_one(const StandardizedDfa& s, const CliConfig& cfg, SweepRow& row) {
  const std::size_t n = s.size();
  const bool v1 = decide_standardized(s, {.restrict_to_gcd = true}).completely_reachable;
  bool agree = v1 == decide_standardized(s, {.restrict_to_gcd = false}).completely_reachable;
  if (n <= cfg.limit_states) agree = agree && v1 == enumerate_reachable(s.dfa(), cfg.limit_states).complete;
  if (n <= cfg.chain_max_n) {
    ChainOptions opts{.pair_cap = cfg.pair_cap, .max_k = cfg.max_k};
    agree = agree && v1 == compute_chain(s, opts).completely_reachable();
  }
  ++row.automata;
  row.reachable += v1 ? 1 : 0;
  row.disagreements += agree ? 0 : 1;
}

inline int cmd_selftest(const CliConfig& cfg, std::ostream& out) {
  const auto [lo, hi] = parse_range(cfg.n_range);
  if (lo < 3 || hi < lo) throw CLI::ValidationError("--n-range", "need 3 <= A <= B");
  const std::size_t jobs = std::max<std::size_t>(1, cfg.jobs);
  out << std::setw(4) << "n" << std::setw(10) << "mode" << std::setw(12) << "automata" << std::setw(12) << "reachable"
      << std::setw(15) << "disagreements" << '\n';
  std::size_t total_bad = 0;
  for (std::size_t n = lo; n <= hi; ++n) {
    const bool exhaustive = n <= 8;
    std::vector<SweepRow> rows(jobs);
    auto worker = [&](std::size_t w) {
      if (exhaustive) {
        std::size_t i = 0;
        for_each_standardized(n, [&](const StandardizedDfa& s) {
          if (i++ % jobs == w) check_one(s, cfg, rows[w]);
        });
      } else {
        for (std::size_t i = w; i < cfg.samples; i += jobs)
          check_one(random_standardized(n, sample_seed(cfg.seed, n, i)), cfg, rows[w]);
      }
    };
    if (jobs == 1) {
      worker(0);
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
    }
    SweepRow sum;
    for (const auto& r : rows) {
      sum.automata += r.automata;
      sum.reachable += r.reachable;
      sum.disagreements += r.disagreements;
    }
    total_bad += sum.disagreements;
    out << std::setw(4) << n << std::setw(10) << (exhaustive ? "all" : "sampled") << std::setw(12) << sum.automata
        << std::setw(12) << sum.reachable << std::setw(15) << sum.disagreements << '\n';
  }
  out << (total_bad == 0 ? "selftest: OK" : "selftest: FAILED") << '\n';
  return total_bad == 0 ? 0 : 1;
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Complete reachability of binary automata"};
  app.require_subcommand(1);
  app.fallthrough();
  CliConfig cfg;
  app.add_flag("-v,--verbose", cfg.verbosity, "More output");

  auto add_file = [&](CLI::App* sub) { sub->add_option("file", cfg.file, "BDF automaton file ('-' for stdin)")->required(); };
  auto add_caps = [&](CLI::App* sub) {
    sub->add_option("--max-k", cfg.max_k, "Maximum chain level")->check(CLI::PositiveNumber);
    sub->add_option("--pair-cap", cfg.pair_cap, "Maximum visited search keys per chain level")->check(CLI::PositiveNumber);
  };

  auto* decide_cmd = app.add_subcommand("decide", "Decide complete reachability");
  add_file(decide_cmd);
  decide_cmd->add_flag("--no-remark9", cfg.full_divisor_scan, "Test every nontrivial divisor of n");
  decide_cmd->add_flag("--certificate", cfg.certificate, "Also print the subgroup chain");
  add_caps(decide_cmd);

  auto* analyze_cmd = app.add_subcommand("analyze", "Difference set, H_1 and Rystsov graph");
  add_file(analyze_cmd);
  analyze_cmd->add_option("--dot", cfg.dot_path, "Write the Rystsov graph in DOT format");
  analyze_cmd->add_flag("--no-remark9", cfg.full_divisor_scan, "Test every nontrivial divisor of n");

  auto* chain_cmd = app.add_subcommand("chain", "Subgroup chain D_k / H_k");
  add_file(chain_cmd);
  add_caps(chain_cmd);
  chain_cmd->add_option("--method", cfg.method, "Level search: union (default) or pairs")
      ->check(CLI::IsMember({"union", "pairs"}));

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force subset reachability");
  add_file(oracle_cmd);
  oracle_cmd->add_option("--limit-states", cfg.limit_states, "Largest automaton accepted")
      ->check(CLI::Range(std::size_t{1}, kOracleHardMaxStates));

  auto* witness_cmd = app.add_subcommand("witness", "Word reaching a target subset");
  add_file(witness_cmd);
  witness_cmd->add_option("--target", cfg.target, "Comma-separated states")->required();
  witness_cmd->add_option("--method", cfg.method, "oracle or constructive")->check(CLI::IsMember({"oracle", "constructive"}));
  witness_cmd->add_option("--limit-states", cfg.limit_states, "Largest automaton for the oracle")
      ->check(CLI::Range(std::size_t{1}, kOracleHardMaxStates));
  add_caps(witness_cmd);

  auto* std_cmd = app.add_subcommand("standardize", "Write the standardized automaton");
  add_file(std_cmd);
  std_cmd->add_option("-o", cfg.output, "Output file (default stdout)");

  auto* gen_cmd = app.add_subcommand("gen", "Write a preset or random standardized automaton");
  gen_cmd->add_option("--preset", cfg.preset, "Preset name")->check(CLI::IsMember(preset_names()));
  gen_cmd->add_flag("--random", cfg.random, "Random standardized automaton");
  gen_cmd->add_option("--n", cfg.n, "State count for --random")->check(CLI::Range(std::size_t{3}, std::size_t{100'000'000}));
  gen_cmd->add_option("--seed", cfg.seed, "Seed for --random");
  gen_cmd->add_option("-o", cfg.output, "Output file (default stdout)");

  auto* self_cmd = app.add_subcommand("selftest", "Cross-check decider, chain and oracle on many automata");
  self_cmd->add_option("--n-range", cfg.n_range, "State counts A..B (exhaustive up to 8, sampled above)");
  self_cmd->add_option("--samples", cfg.samples, "Samples per n above 8")->check(CLI::PositiveNumber);
  self_cmd->add_option("--seed", cfg.seed, "Sampling seed");
  self_cmd->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
  self_cmd->add_option("--limit-states", cfg.limit_states, "Largest n checked against the oracle")
      ->check(CLI::Range(std::size_t{1}, kOracleHardMaxStates));
  self_cmd->add_option("--chain-max-n", cfg.chain_max_n, "Largest n checked against the subgroup chain");
  add_caps(self_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (decide_cmd->parsed()) return detail::cmd_decide(cfg, out);
    if (analyze_cmd->parsed()) return detail::cmd_analyze(cfg, out);
    if (chain_cmd->parsed()) return detail::cmd_chain(cfg, out);
    if (oracle_cmd->parsed()) return detail::cmd_oracle(cfg, out);
    if (witness_cmd->parsed()) return detail::cmd_witness(cfg, out);
    if (std_cmd->parsed()) return detail::cmd_standardize(cfg, out);
    if (gen_cmd->parsed()) return detail::cmd_gen(cfg, out);
    if (self_cmd->parsed()) return detail::cmd_selftest(cfg, out);
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << '\n';
    return kResourceLimit;
  } catch (const NotCompletelyReachable& e) {
    out << "NOT_COMPLETELY_REACHABLE: " << e.what() << '\n';
    return kNotReachable;
  } catch (const NotStandardizable& e) {
    err << "error: " << e.what() << '\n';
    return kNotReachable;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace cra::cli
