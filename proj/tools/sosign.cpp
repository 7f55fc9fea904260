#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "sosign/expr_io.hpp"
#include "sosign/oracle.hpp"
#include "sosign/predicates.hpp"
#include "sosign/sign.hpp"

using namespace sosign;

namespace {

enum class Mode { quick, robust, hybrid };

struct Options {
  std::string input = "-";
  std::string output = "-";
  std::string mode = "hybrid";
  std::string format = "binary64";
  std::string backend = "emulated";
  std::string predicate;
  std::string family;
  bool stats = false;
  bool check = false;
  bool allow_decimal = false;
  std::uint64_t seed = 1;
  std::size_t count = 100;
  unsigned jobs = 1;
};

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kParse = 2;
constexpr int kEvaluation = 3;

Mode parse_mode(const std::string& s) {
  if (s == "quick") return Mode::quick;
  if (s == "robust") return Mode::robust;
  return Mode::hybrid;
}

/// Reads the whole input up front so parse errors abort before any output.
std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Outcome {
  std::optional<int> sign;  // empty: inconclusive
  Method method = Method::quick;
  std::string error;
};

template <class T>
Outcome evaluate(const SumOfProducts<T>& s, Mode mode, Backend backend) {
  Outcome o;
  try {
    switch (mode) {
      case Mode::quick: {
        const auto r = evaluate_quick(s, backend);
        if (r == SignResult::positive) o.sign = 1;
        if (r == SignResult::negative) o.sign = -1;
        o.method = Method::quick;
        break;
      }
      case Mode::robust:
        o.sign = evaluate_robust(s, backend);
        o.method = Method::robust;
        break;
      case Mode::hybrid: {
        const auto d = sign(s, backend);
        o.sign = d.sign;
        o.method = d.method;
        break;
      }
    }
  } catch (const CapacityError& e) {
    o.error = "capacity load " + std::to_string(e.load()) + " is not below 1/eps = " +
              std::to_string(e.limit());
  } catch (const Error& e) {
    o.error = e.what();
  }
  return o;
}

/// Evaluates items in parallel, keeping results in input order.
template <class Item, class F>
std::vector<Outcome> run_all(const std::vector<Item>& items, unsigned jobs, F f) {
  std::vector<Outcome> out(items.size());
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(items.size())));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < items.size(); ++i) out[i] = f(items[i]);
    return out;
  }
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      for (std::size_t i = w; i < items.size(); i += jobs) out[i] = f(items[i]);
    });
  }
  for (auto& t : workers) t.join();
  return out;
}

struct Stats {
  std::size_t total = 0;
  std::size_t quick = 0;
  std::size_t robust = 0;
  std::size_t inconclusive = 0;
  std::size_t errors = 0;
  std::size_t signs[3] = {};

  void add(const Outcome& o) {
    ++total;
    if (!o.error.empty()) {
      ++errors;
      return;
    }
    if (!o.sign) {
      ++inconclusive;
      return;
    }
    ++(o.method == Method::quick ? quick : robust);
    ++signs[*o.sign + 1];
  }

  std::string line() const {
    std::ostringstream ss;
    ss << "# stats: total=" << total << " quick=" << quick << " robust=" << robust
       << " inconclusive=" << inconclusive << " errors=" << errors << " negative=" << signs[0]
       << " zero=" << signs[1] << " positive=" << signs[2];
    return ss.str();
  }
};

std::string result_text(const Outcome& o, bool with_method) {
  if (!o.error.empty()) return "error";
  std::string s = o.sign ? std::string(sign_text(*o.sign)) : "?";
  if (with_method) s += std::string(" ") + std::string(to_string(o.method));
  return s;
}

template <class T>
int cmd_sign(const Options& opt) {
  const ParseOptions po{opt.allow_decimal};
  std::istringstream in(slurp(opt.input));
  std::size_t rounded = 0;
  const auto lines = parse_expressions<T>(in, po, &rounded);
  if (rounded > 0) {
    std::cerr << "warning: " << rounded << " decimal literal(s) rounded to nearest\n";
  }
  const Mode mode = parse_mode(opt.mode);
  const Backend backend = parse_backend(opt.backend);
  const auto results = run_all(lines, opt.jobs, [&](const ParsedExpression<T>& e) {
    return evaluate(e.expression, mode, backend);
  });

  Stats stats;
  int status = kOk;
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const Outcome& o = results[i];
    stats.add(o);
    out += result_text(o, true);
    out += '\n';
    if (!o.error.empty()) {
      std::cerr << "line " << lines[i].line << ": " << o.error << '\n';
      status = kEvaluation;
    } else if (opt.check && lines[i].expected && o.sign && *o.sign != *lines[i].expected) {
      std::cerr << "line " << lines[i].line << ": expected " << sign_text(*lines[i].expected)
                << ", got " << sign_text(*o.sign) << '\n';
      if (status == kOk) status = kMismatch;
    }
  }
  if (opt.stats) out += stats.line() + '\n';
  std::cout << out << std::flush;
  return status;
}

template <class T>
int cmd_predicate(const Options& opt) {
  const Predicate p = parse_predicate(opt.predicate);
  const ParseOptions po{opt.allow_decimal};
  std::istringstream in(slurp(opt.input));
  std::size_t rounded = 0;
  const auto points = parse_points<T>(in, po, &rounded);
  if (rounded > 0) {
    std::cerr << "warning: " << rounded << " decimal literal(s) rounded to nearest\n";
  }
  const auto expected = static_cast<std::size_t>(point_count(p) * dimension(p));
  for (const auto& pt : points) {
    if (pt.coordinates.size() != expected) {
      throw ParseError(pt.line, 1, std::string(to_string(p)) + " needs " + std::to_string(expected) +
                                       " coordinates, got " + std::to_string(pt.coordinates.size()));
    }
  }
  const Mode mode = parse_mode(opt.mode);
  const Backend backend = parse_backend(opt.backend);
  const auto results = run_all(points, opt.jobs, [&](const ParsedPoints<T>& pt) {
    return evaluate(predicate_expression<T>(p, pt.coordinates), mode, backend);
  });
  Stats stats;
  int status = kOk;
  std::string out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    stats.add(results[i]);
    out += result_text(results[i], false);
    out += '\n';
    if (!results[i].error.empty()) {
      std::cerr << "line " << points[i].line << ": " << results[i].error << '\n';
      status = kEvaluation;
    }
  }
  if (opt.stats) out += stats.line() + '\n';
  std::cout << out << std::flush;
  return status;
}

template <class T>
int cmd_generate(const Options& opt) {
  const auto family = oracle::parse_family(opt.family);
  const auto cases = oracle::generate<T>(family, opt.count, opt.seed);
  std::ostringstream ss;
  ss << "# family: " << oracle::to_string(family) << " format: " << to_string(FpFormat<T>::format)
     << " seed: " << opt.seed << " count: " << opt.count << '\n';
  for (const auto& c : cases) {
    ss << "# expected: " << sign_text(c.expected_sign) << '\n' << format_expression(c.expression) << '\n';
  }
  if (opt.output == "-") {
    std::cout << ss.str() << std::flush;
  } else {
    std::ofstream out(opt.output, std::ios::binary);
    if (!out) throw Error("cannot write '" + opt.output + "'");
    out << ss.str();
  }
  return kOk;
}

template <class T>
std::string constant_line(const char* name, T value) {
  char dec[32];
  std::snprintf(dec, sizeof dec, "%.1e", static_cast<double>(value));
  char buf[96];
  std::snprintf(buf, sizeof buf, "%-11s%-26s%s\n", name, format_number(value).c_str(), dec);
  return buf;
}

template <class T>
int cmd_constants(const Options&) {
  using F = FpFormat<T>;
  std::string out = "# " + std::string(to_string(F::format)) + "\n";
  out += constant_line("nu", F::nu);
  out += constant_line("eps", F::eps);
  out += constant_line("sigma", F::sigma);
  out += constant_line("tau", F::tau);
  out += constant_line("sigma_inv", F::sigma_inv);
  out += constant_line("min_sub", F::min_sub);
  out += "capacity   " + std::to_string(F::inv_eps) + "\n";
  std::cout << out << std::flush;
  return kOk;
}

template <template <class> class Cmd>
int dispatch(const Options& opt) {
  return parse_format(opt.format) == Format::binary32 ? Cmd<float>::run(opt) : Cmd<double>::run(opt);
}

template <class T>
struct SignCmd {
  static int run(const Options& o) { return cmd_sign<T>(o); }
};
template <class T>
struct PredicateCmd {
  static int run(const Options& o) { return cmd_predicate<T>(o); }
};
template <class T>
struct GenerateCmd {
  static int run(const Options& o) { return cmd_generate<T>(o); }
};
template <class T>
struct ConstantsCmd {
  static int run(const Options& o) { return cmd_constants<T>(o); }
};

void add_format(CLI::App* app, Options& opt) {
  app->add_option("--format", opt.format, "binary64 or binary32")
      ->check(CLI::IsMember({"binary64", "binary32", "double", "float"}));
}

void add_evaluation(CLI::App* app, Options& opt) {
  add_format(app, opt);
  app->add_option("--mode", opt.mode, "quick, robust or hybrid")
      ->check(CLI::IsMember({"quick", "robust", "hybrid"}));
  app->add_option("--backend", opt.backend, "emulated or hardware")
      ->check(CLI::IsMember({"emulated", "hardware"}));
  app->add_flag("--stats", opt.stats, "append a '# stats:' line");
  app->add_flag("--allow-decimal", opt.allow_decimal, "round inexact decimal literals to nearest");
  app->add_option("--jobs,-j", opt.jobs, "worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Exact sign of sums of products of floating-point numbers"};
  app.require_subcommand(0, 1);
  bool constants_flag = false;
  app.add_flag("--constants", constants_flag, "print the format constants and exit");
  add_format(&app, opt);

  auto* sign_cmd = app.add_subcommand("sign", "sign of each expression in a file");
  sign_cmd->add_option("input", opt.input, "expression file, '-' for stdin");
  add_evaluation(sign_cmd, opt);
  sign_cmd->add_flag("--check", opt.check, "compare against '# expected:' tags");

  auto* pred_cmd = app.add_subcommand("predicate", "orient2d, orient3d or incircle on a points file");
  pred_cmd->add_option("kind", opt.predicate, "predicate")
      ->required()
      ->check(CLI::IsMember({"orient2d", "orient3d", "incircle"}));
  pred_cmd->add_option("input", opt.input, "points file, '-' for stdin");
  add_evaluation(pred_cmd, opt);

  auto* gen_cmd = app.add_subcommand("generate", "write an adversarial corpus");
  gen_cmd->add_option("family", opt.family, "collinear, near-collinear, underflow, cancellation, random, separated")
      ->required();
  gen_cmd->add_option("--count,-n", opt.count, "number of cases");
  gen_cmd->add_option("--seed", opt.seed, "random seed");
  gen_cmd->add_option("--output,-o", opt.output, "output file, '-' for stdout");
  add_format(gen_cmd, opt);

  auto* const_cmd = app.add_subcommand("constants", "print the format constants");
  add_format(const_cmd, opt);

  CLI11_PARSE(app, argc, argv);

  try {
    if (constants_flag || const_cmd->parsed()) return dispatch<ConstantsCmd>(opt);
    if (sign_cmd->parsed()) return dispatch<SignCmd>(opt);
    if (pred_cmd->parsed()) return dispatch<PredicateCmd>(opt);
    if (gen_cmd->parsed()) return dispatch<GenerateCmd>(opt);
    std::cout << app.help();
    return kOk;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const CapacityError& e) {
    std::cerr << e.what() << '\n';
    return kEvaluation;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParse;
  }
}
