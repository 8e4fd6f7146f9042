#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "lftrans/lf_kernel.hpp"
#include "lftrans/pipeline.hpp"
#include "lftrans/strictness.hpp"
#include "lftrans/translator.hpp"

using namespace lftrans;

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Signature failed to parse or check; the message is already printed.
struct Rejected {};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw IoError("cannot write " + path);
}

lf::Signature load(const std::string& path) {
  std::string text = slurp(path);
  lf::Signature sig;
  try {
    sig = lf::parse_signature(text);
  } catch (const lf::ParseError& e) {
    std::cerr << path << ":" << e.what() << "\n";
    throw Rejected{};
  }
  lf::JudgmentResult r = lf::check_signature(sig);
  if (!r) {
    std::cerr << path << ":" << r.pos.line << ":" << r.pos.column << ": declaration `" << r.decl << "` fails rule "
              << r.rule << ": " << r.message << "\n";
    throw Rejected{};
  }
  return lf::checked_signature(sig);
}

std::string verdicts(const lf::Signature& sig, const std::string& prefix) {
  std::ostringstream out;
  for (const auto& d : sig.decls()) {
    if (lf::is_kind(d.classifier)) continue;
    out << prefix << d.name << " : " << lf::to_string(d.classifier) << "\n";
    for (const auto& v : strictness::explain_binders(d.classifier))
      out << prefix << "  " << v.name << (v.strict ? "  strict      " : "  non-strict  ") << v.why << "\n";
  }
  return out.str();
}

int cmd_check(const std::string& file) {
  lf::Signature sig = load(file);
  std::cout << "ok: " << sig.size() << " declarations\n";
  return 0;
}

int cmd_strictness(const std::string& file) {
  std::cout << verdicts(load(file), "");
  return 0;
}

struct TranslateArgs {
  std::string file, out;
  bool naive = false, optimized = false, no_simplify = false, split = false, explain = false;
};

int cmd_translate(const TranslateArgs& a) {
  lf::Signature sig = load(a.file);
  translate::Options opt;
  opt.mode = a.naive ? translate::Mode::Naive : translate::Mode::Optimized;
  opt.simplify = !a.no_simplify;
  hohh::Program p = translate::translate_signature(sig, opt);
  std::string head = a.explain ? verdicts(sig, "% ") + "\n" : "";
  if (a.split) {
    std::string base = a.out.empty() ? "out" : a.out;
    std::string name = base.substr(base.find_last_of('/') + 1);
    auto parts = translate::emit_split(p, name);
    write_file(base + ".sig", parts.sig);
    write_file(base + ".mod", head + parts.mod);
    return 0;
  }
  std::string text = head + translate::emit_lambdaprolog(p);
  if (a.out.empty())
    std::cout << text;
  else
    write_file(a.out, text);
  return 0;
}

struct SolveArgs {
  std::string file, query;
  int depth = 32, n = 1;
  bool naive = false;
};

int cmd_solve(const SolveArgs& a) {
  lf::Signature sig = load(a.file);
  lf::Query q;
  try {
    q = lf::parse_query(a.query, sig);
  } catch (const lf::ParseError& e) {
    std::cerr << "query:" << e.what() << "\n";
    return 2;
  }
  translate::Options opt;
  opt.mode = a.naive ? translate::Mode::Naive : translate::Mode::Optimized;
  hohh::Program p = translate::translate_signature(sig, opt);
  hohh::Limits lim;
  lim.max_depth = a.depth;
  lim.max_solutions = a.n;
  pipeline::Result r = pipeline::solve_query(sig, p, q, opt.mode, lim);
  auto print = [](const pipeline::Answer& ans) {
    if (ans.closed) {
      for (const auto& [x, v] : ans.values) std::cout << x << " = " << lf::to_string(v) << "\n";
      std::cout << "inhabitant = " << lf::to_string(ans.inhabitant) << "\n";
      return;
    }
    std::cout << "% " << ans.error << "\n";
    for (const auto& [x, v] : ans.raw_values) std::cout << x << " = " << hohh::to_string(v) << "\n";
    std::cout << "inhabitant = " << hohh::to_string(ans.raw_inhabitant) << "\n";
    for (const auto& c : ans.residuals) std::cout << "% constraint " << c << "\n";
  };
  if (r.status == hohh::SolveStatus::Solved) {
    for (std::size_t i = 0; i < r.answers.size(); ++i) {
      if (i) std::cout << "\n";
      std::cout << "% solution " << i + 1 << ", depth " << r.answers[i].cost << "\n";
      print(r.answers[i]);
    }
    return 0;
  }
  if (r.status == hohh::SolveStatus::Suspended) {
    std::cout << "suspended\n";
    for (const auto& s : r.suspended) print(s);
    return 1;
  }
  std::cout << (r.status == hohh::SolveStatus::NoSolution ? "no" : "no (depth " + std::to_string(a.depth) + " exhausted)")
            << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LF signatures to lambda Prolog, with an embedded solver"};
  app.require_subcommand(1);

  std::string check_file, strict_file;
  auto* check = app.add_subcommand("check", "type-check a signature");
  check->add_option("FILE", check_file)->required();

  auto* strict = app.add_subcommand("strictness", "per-constant strictness verdicts");
  strict->add_option("FILE", strict_file)->required();

  TranslateArgs ta;
  auto* tr = app.add_subcommand("translate", "emit lambda Prolog");
  tr->add_option("FILE", ta.file)->required();
  auto* naive_flag = tr->add_flag("--naive", ta.naive, "naive translation");
  tr->add_flag("--optimized", ta.optimized, "strictness-optimized translation (default)")->excludes(naive_flag);
  tr->add_flag("--no-simplify", ta.no_simplify, "keep `true =>` premises");
  tr->add_flag("--split-sig-mod", ta.split, "write OUT.sig and OUT.mod");
  tr->add_option("-o,--output", ta.out, "output file");
  tr->add_flag("--explain-strictness", ta.explain, "prefix the output with strictness verdicts");

  SolveArgs sa;
  auto* so = app.add_subcommand("solve", "find inhabitants of a query type");
  so->add_option("FILE", sa.file)->required();
  so->add_option("QUERY", sa.query)->required();
  so->add_option("--depth", sa.depth, "depth bound")->check(CLI::PositiveNumber);
  so->add_option("-n", sa.n, "number of solutions, 0 for all")->check(CLI::NonNegativeNumber);
  so->add_flag("--naive", sa.naive, "use the naive translation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*check) return cmd_check(check_file);
    if (*strict) return cmd_strictness(strict_file);
    if (*tr) return cmd_translate(ta);
    if (*so) return cmd_solve(sa);
  } catch (const Rejected&) {
    return 1;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
