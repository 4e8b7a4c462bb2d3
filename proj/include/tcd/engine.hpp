#pragma once

#include <chrono>
#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tcd/automaton.hpp"
#include "tcd/expr.hpp"

namespace tcd {

/// Incremental recognizer over the program automaton. The live set is never
/// empty: feeds that would kill it are rejected and leave it unchanged.
class Session {
 public:
  explicit Session(const TypeEnv& globals = {}, Tables tables = default_tables());
  explicit Session(Automaton automaton);

  /// All-or-nothing: true and committed if `text` keeps the session live.
  bool feed(std::string_view text);
  bool feed(std::u32string_view text);
  bool is_complete() const { return any_accepting(live_); }
  /// Characters of `alphabet` (in the given order) that would keep it live.
  std::u32string admissible_next(std::u32string_view alphabet) const;
  std::u32string force_complete(std::size_t budget = kDefaultCompletionBudget) const;

  const std::string& consumed() const { return consumed_; }
  const StateSet& live() const { return live_; }

 private:
  SessionPtr expr_session_;
  StateSet live_;
  std::string consumed_;
};

struct PrefixVerdict {
  enum class Status { Complete, LivePrefix, Dead };
  Status status;
  std::size_t dead_offset = 0;  // code point index of the rejecting character
};
std::string_view status_name(PrefixVerdict::Status s);

/// Feeds `text` to `session` one character at a time and classifies it.
PrefixVerdict classify(Session session, std::u32string_view text);

inline constexpr std::string_view kEosToken = "<eos>";

using Candidates = std::vector<std::pair<std::string, double>>;

class SourceExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class InvalidPrefix : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class ReplayLogError : public std::runtime_error {
 public:
  ReplayLogError(std::size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Next-token distributions. Implementations are used by one decode at a time.
class TokenSource {
 public:
  virtual ~TokenSource() = default;
  /// Candidates for the text generated so far (prompt included).
  virtual Candidates next(std::string_view context) = 0;
};

struct ReplayStep {
  long step = 0;
  Candidates candidates;
};
using ReplayLog = std::vector<ReplayStep>;

/// One JSON record per line: {"step": n, "candidates": [["tok", p], ...]}.
/// Blank lines are skipped. Throws ReplayLogError.
ReplayLog parse_replay_log(std::istream& in);
ReplayLog parse_replay_log_string(std::string_view text);
std::string replay_log_to_string(const ReplayLog& log);

/// Hands out the recorded steps in order, ignoring the context.
class ReplaySource final : public TokenSource {
 public:
  explicit ReplaySource(ReplayLog log) : log_(std::move(log)) {}
  Candidates next(std::string_view context) override;

 private:
  ReplayLog log_;
  std::size_t pos_ = 0;
};

struct DecodeLimits {
  std::size_t max_tokens = 4096;
  std::optional<std::chrono::duration<double>> time_budget;
};

struct Intervention {
  std::size_t step;
  std::vector<std::string> rejected_tokens;
};

struct DecodeStats {
  std::size_t steps = 0;
  std::size_t total_inner_iterations = 0;
  std::vector<std::size_t> iterations;  // per step
  std::vector<Intervention> interventions;
  bool complete = false;
};

struct DecodeResult {
  std::string program;  // prefix plus accepted tokens
  bool complete = false;
  DecodeStats stats;
};

/// Uniform double in [0, 1) from the top 53 bits of one generator output.
double unit_interval(std::uint64_t bits);

/// Sample-and-check loop: draw a token, keep it if the session stays live;
/// stop on EOS once the program is complete; otherwise zero the token out
/// and draw again. `session` should be fresh.
DecodeResult decode(TokenSource& source, std::string_view prompt, std::string_view prefix, std::uint64_t seed,
                    const DecodeLimits& limits, Session session = Session());

/// {"steps", "total_inner_iterations", "iterations", "interventions", "complete"}.
std::string stats_to_json(const DecodeStats& stats);

}  // namespace tcd
