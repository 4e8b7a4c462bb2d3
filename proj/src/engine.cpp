#include "tcd/engine.hpp"

#include <random>
#include <sstream>

#include "json.hpp"
#include "tcd/stmt.hpp"
#include "tcd/utf8.hpp"

namespace tcd {

Session::Session(const TypeEnv& globals, Tables tables) : expr_session_(make_session(std::move(tables))) {
  live_ = program_automaton(globals, expr_session_).initial;
}

Session::Session(Automaton automaton) : live_(std::move(automaton.initial)) {}

bool Session::feed(std::u32string_view text) {
  StateSet next = traverse(live_, text);
  if (next.empty()) return false;
  live_ = std::move(next);
  consumed_ += to_utf8(text);
  return true;
}

bool Session::feed(std::string_view text) {
  std::u32string u;
  try {
    u = from_utf8(text);
  } catch (const Utf8Error&) {
    return false;
  }
  return feed(std::u32string_view(u));
}

std::u32string Session::admissible_next(std::u32string_view alphabet) const {
  std::u32string out;
  for (char32_t c : alphabet) {
    if (!step_all(live_, c).empty()) out.push_back(c);
  }
  return out;
}

std::u32string Session::force_complete(std::size_t budget) const { return tcd::force_complete(live_, budget); }

std::string_view status_name(PrefixVerdict::Status s) {
  switch (s) {
    case PrefixVerdict::Status::Complete: return "complete";
    case PrefixVerdict::Status::LivePrefix: return "live-prefix";
    case PrefixVerdict::Status::Dead: return "dead";
  }
  return "dead";
}

PrefixVerdict classify(Session session, std::u32string_view text) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (!session.feed(text.substr(i, 1))) return {PrefixVerdict::Status::Dead, i};
  }
  return {session.is_complete() ? PrefixVerdict::Status::Complete : PrefixVerdict::Status::LivePrefix, 0};
}

namespace {

using nlohmann::json;

ReplayStep parse_step(const std::string& line, std::size_t lineno) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ReplayLogError(lineno, e.what());
  }
  if (!j.is_object() || !j.contains("step") || !j.contains("candidates")) {
    throw ReplayLogError(lineno, "expected {\"step\": n, \"candidates\": [...]}");
  }
  if (!j["step"].is_number_integer()) throw ReplayLogError(lineno, "step must be an integer");
  if (!j["candidates"].is_array() || j["candidates"].empty()) {
    throw ReplayLogError(lineno, "candidates must be a non-empty array");
  }
  ReplayStep step;
  step.step = j["step"].get<long>();
  double total = 0;
  for (const auto& c : j["candidates"]) {
    if (!c.is_array() || c.size() != 2 || !c[0].is_string() || !c[1].is_number()) {
      throw ReplayLogError(lineno, "candidate must be [\"token\", probability]");
    }
    double p = c[1].get<double>();
    if (!(p >= 0)) throw ReplayLogError(lineno, "negative probability");
    total += p;
    step.candidates.emplace_back(c[0].get<std::string>(), p);
  }
  if (total > 1 + 1e-9) throw ReplayLogError(lineno, "probabilities sum above 1");
  return step;
}

}  // namespace

ReplayLog parse_replay_log(std::istream& in) {
  ReplayLog log;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    log.push_back(parse_step(line, lineno));
    if (log.size() > 1 && log.back().step <= log[log.size() - 2].step) {
      throw ReplayLogError(lineno, "step numbers must increase");
    }
  }
  return log;
}

ReplayLog parse_replay_log_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_replay_log(in);
}

std::string replay_log_to_string(const ReplayLog& log) {
  std::string out;
  for (const auto& s : log) {
    json cands = json::array();
    for (const auto& [tok, p] : s.candidates) cands.push_back(json::array({tok, p}));
    out += json{{"step", s.step}, {"candidates", cands}}.dump() + "\n";
  }
  return out;
}

Candidates ReplaySource::next(std::string_view) {
  if (pos_ >= log_.size()) throw SourceExhausted("replay log ended after " + std::to_string(pos_) + " steps");
  return log_[pos_++].candidates;
}

double unit_interval(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

namespace {

std::size_t sample(const std::vector<double>& weights, double total, std::uint64_t bits) {
  double target = unit_interval(bits) * total;
  double acc = 0;
  std::size_t last = weights.size();
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0) continue;
    acc += weights[i];
    last = i;
    if (target < acc) return i;
  }
  return last;  // rounding at the top end
}

}  // namespace

DecodeResult decode(TokenSource& source, std::string_view prompt, std::string_view prefix, std::uint64_t seed,
                    const DecodeLimits& limits, Session session) {
  if (!session.feed(prefix)) throw InvalidPrefix("starting prefix is not live");
  std::mt19937_64 rng(seed);
  const auto start = std::chrono::steady_clock::now();
  DecodeResult res;
  auto out_of_time = [&] {
    return limits.time_budget && std::chrono::steady_clock::now() - start >= *limits.time_budget;
  };
  while (res.stats.steps < limits.max_tokens && !out_of_time()) {
    Candidates cands = source.next(std::string(prompt) + session.consumed());
    std::vector<double> weights;
    for (const auto& c : cands) weights.push_back(c.second);
    const std::size_t step = ++res.stats.steps;
    std::size_t iterations = 0;
    std::vector<std::string> rejected;
    bool stop = false;
    while (true) {
      double total = 0;
      for (double w : weights) total += w;
      if (total <= 0) {
        throw SourceExhausted("no admissible candidate at step " + std::to_string(step));
      }
      std::size_t i = sample(weights, total, rng());
      ++iterations;
      const std::string& tok = cands[i].first;
      if (tok == kEosToken) {
        if (session.is_complete()) {
          stop = true;
          break;
        }
      } else if (session.feed(tok)) {
        break;
      }
      rejected.push_back(tok);
      weights[i] = 0;
    }
    res.stats.iterations.push_back(iterations);
    res.stats.total_inner_iterations += iterations;
    if (!rejected.empty()) res.stats.interventions.push_back({step, std::move(rejected)});
    if (stop) {
      res.complete = true;
      break;
    }
  }
  res.stats.complete = res.complete;
  res.program = session.consumed();
  return res;
}

std::string stats_to_json(const DecodeStats& stats) {
  json iv = json::array();
  for (const auto& i : stats.interventions) iv.push_back({{"step", i.step}, {"rejected_tokens", i.rejected_tokens}});
  return json{{"steps", stats.steps},
              {"total_inner_iterations", stats.total_inner_iterations},
              {"iterations", stats.iterations},
              {"interventions", iv},
              {"complete", stats.complete}}
      .dump();
}

}  // namespace tcd
