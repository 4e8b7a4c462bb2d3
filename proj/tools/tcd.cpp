#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tcd/engine.hpp"
#include "tcd/tables.hpp"
#include "tcd/utf8.hpp"

namespace {

using nlohmann::json;
using namespace tcd;

constexpr int kExitDead = 2;
constexpr int kExitUsage = 64;
constexpr int kExitDataErr = 65;
constexpr int kExitNoInput = 66;
constexpr int kExitSoftware = 70;

struct Failure {
  int code;
  std::string message;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitNoInput, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Failure{kExitNoInput, "cannot read " + path};
  return ss.str();
}

std::u32string decode_utf8(const std::string& text, const std::string& what) {
  try {
    return from_utf8(text);
  } catch (const Utf8Error& e) {
    throw Failure{kExitDataErr, what + ": " + e.what()};
  }
}

Config read_config(const std::string& path) {
  try {
    return parse_config_string(read_input(path));
  } catch (const ConfigError& e) {
    throw Failure{kExitDataErr, path + ": " + e.what()};
  }
}

struct Options {
  std::string tables_path;
  std::string globals_path;
  std::uint64_t seed = 0;
  std::size_t max_tokens = 4096;
  double time_budget = 0;
  std::string format = "human";

  bool structured() const { return format == "structured"; }

  Session session() const {
    Tables tables = default_tables();
    TypeEnv globals;
    auto add = [&](const TypeEnv& env) {
      for (const auto& [name, t] : env.bindings()) {
        if (globals.contains(name)) throw Failure{kExitDataErr, "duplicate global '" + name + "'"};
        globals = globals.extended(name, t);
      }
    };
    if (!tables_path.empty()) {
      Config cfg = read_config(tables_path);
      tables = tables_from_config(cfg);
      add(cfg.globals);
    }
    if (!globals_path.empty()) add(read_config(globals_path).globals);
    return Session(globals, std::move(tables));
  }
};

std::string escape_char(char32_t c) {
  switch (c) {
    case U'\n': return "\\n";
    case U'\t': return "\\t";
    case U'\r': return "\\r";
    case U' ': return "\\s";
    case U'\\': return "\\\\";
    default: return to_utf8(c);
  }
}

int cmd_check(const Options& opt, const std::string& path) {
  auto text = decode_utf8(read_input(path), path);
  auto v = classify(opt.session(), text);
  if (opt.structured()) {
    json j{{"status", status_name(v.status)}};
    if (v.status == PrefixVerdict::Status::Dead) j["offset"] = v.dead_offset;
    std::cout << j.dump() << "\n";
  } else if (v.status == PrefixVerdict::Status::Dead) {
    std::cout << "dead at offset " << v.dead_offset << "\n";
  } else {
    std::cout << status_name(v.status) << "\n";
  }
  switch (v.status) {
    case PrefixVerdict::Status::Complete: return 0;
    case PrefixVerdict::Status::LivePrefix: return 1;
    case PrefixVerdict::Status::Dead: return kExitDead;
  }
  return kExitDead;
}

int cmd_complete(const Options& opt, const std::string& path) {
  std::string input = read_input(path);
  auto text = decode_utf8(input, path);
  Session s = opt.session();
  auto v = classify(s, text);
  if (v.status == PrefixVerdict::Status::Dead) {
    std::cerr << "tcd: input is dead at offset " << v.dead_offset << "\n";
    return kExitDead;
  }
  s.feed(std::u32string_view(text));
  std::u32string suffix;
  try {
    suffix = s.force_complete();
  } catch (const BudgetExhausted&) {
    std::cerr << "tcd: completion budget exhausted\n";
    return kExitSoftware;
  }
  if (opt.structured()) {
    std::cout << json{{"program", input + to_utf8(suffix)}, {"suffix", to_utf8(suffix)}}.dump() << "\n";
  } else {
    std::cout << input << to_utf8(suffix);
  }
  return 0;
}

int cmd_decode(const Options& opt, const std::string& log_path, const std::string& prompt_path,
               const std::string& prefix_path, const std::string& stats_path) {
  ReplayLog log;
  {
    std::istringstream in(read_input(log_path));
    try {
      log = parse_replay_log(in);
    } catch (const ReplayLogError& e) {
      throw Failure{kExitDataErr, log_path + ": " + e.what()};
    }
  }
  std::string prompt = prompt_path.empty() ? "" : read_input(prompt_path);
  std::string prefix = prefix_path.empty() ? "" : read_input(prefix_path);
  DecodeLimits lim;
  lim.max_tokens = opt.max_tokens;
  if (opt.time_budget > 0) lim.time_budget = std::chrono::duration<double>(opt.time_budget);
  ReplaySource source(std::move(log));
  DecodeResult r;
  try {
    r = decode(source, prompt, prefix, opt.seed, lim, opt.session());
  } catch (const InvalidPrefix& e) {
    std::cerr << "tcd: " << e.what() << "\n";
    return kExitDead;
  } catch (const SourceExhausted& e) {
    throw Failure{kExitDataErr, log_path + ": " + e.what()};
  }
  if (opt.structured()) {
    std::cout << json{{"program", r.program}, {"complete", r.complete}}.dump() << "\n";
  } else {
    std::cout << r.program << "\n";
  }
  std::string stats = stats_to_json(r.stats);
  if (stats_path.empty()) {
    std::cerr << stats << "\n";
  } else {
    std::ofstream out(stats_path);
    if (!out) throw Failure{kExitNoInput, "cannot write " + stats_path};
    out << stats << "\n";
  }
  return 0;
}

int cmd_next(const Options& opt, const std::string& path, const std::string& alphabet_path) {
  auto text = decode_utf8(read_input(path), path);
  std::u32string alphabet;
  if (alphabet_path.empty()) {
    for (char32_t c = 0x20; c < 0x7f; ++c) alphabet.push_back(c);
    alphabet += U"\n\t";
  } else {
    alphabet = decode_utf8(read_input(alphabet_path), alphabet_path);
  }
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  Session s = opt.session();
  auto v = classify(s, text);
  if (v.status == PrefixVerdict::Status::Dead) {
    std::cerr << "tcd: input is dead at offset " << v.dead_offset << "\n";
    return kExitDead;
  }
  s.feed(std::u32string_view(text));
  auto next = s.admissible_next(alphabet);
  if (opt.structured()) {
    json arr = json::array();
    for (char32_t c : next) arr.push_back(to_utf8(c));
    std::cout << json{{"admissible", arr}}.dump() << "\n";
  } else {
    for (char32_t c : next) std::cout << escape_char(c) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Type-constrained prefix checking, completion and decoding"};
  app.require_subcommand(1, 1);
  Options opt;
  app.add_option("--tables", opt.tables_path, "Operator/member table file");
  app.add_option("--globals", opt.globals_path, "File of `global <name> : <type>` entries");
  app.add_option("--seed", opt.seed, "Sampling seed");
  app.add_option("--max-tokens", opt.max_tokens, "Decode step limit")->check(CLI::PositiveNumber);
  app.add_option("--time-budget", opt.time_budget, "Decode time limit in seconds")->check(CLI::NonNegativeNumber);
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"human", "structured"}));

  std::string input;
  auto* check = app.add_subcommand("check", "Classify a program as complete, live prefix or dead");
  check->add_option("input", input, "Program file or - for stdin")->required();
  auto* complete = app.add_subcommand("complete", "Append a completion that makes the program complete");
  complete->add_option("input", input, "Program file or - for stdin")->required();
  std::string log_path, prompt_path, prefix_path, stats_path;
  auto* decode_cmd = app.add_subcommand("decode", "Run constrained decoding over a replay log");
  decode_cmd->add_option("log", log_path, "Replay log (JSON lines) or -")->required();
  decode_cmd->add_option("--prompt", prompt_path, "Prompt file");
  decode_cmd->add_option("--prefix", prefix_path, "Program prefix file");
  decode_cmd->add_option("--stats", stats_path, "Write stats here instead of stderr");
  std::string alphabet_path;
  auto* next = app.add_subcommand("next", "List characters that keep the program live");
  next->add_option("input", input, "Program file or - for stdin")->required();
  next->add_option("--alphabet", alphabet_path, "File whose characters form the candidate set");
  for (auto* sub : {check, complete, decode_cmd, next}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*check) return cmd_check(opt, input);
    if (*complete) return cmd_complete(opt, input);
    if (*decode_cmd) return cmd_decode(opt, log_path, prompt_path, prefix_path, stats_path);
    return cmd_next(opt, input, alphabet_path);
  } catch (const Failure& f) {
    std::cerr << "tcd: " << f.message << "\n";
    return f.code;
  }
}
