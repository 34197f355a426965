#include "restart_reasoner/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "restart_reasoner/heuristics.hpp"
#include "restart_reasoner/random.hpp"

namespace rr {

std::string_view to_string(Prediction p) { return p == Prediction::solvable ? "solvable" : "unsolvable"; }

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::TP: return "TP";
    case Outcome::TN: return "TN";
    case Outcome::FP: return "FP";
    case Outcome::FN: return "FN";
  }
  return "?";
}

namespace {

bool predict(const LevelState& state, const GlobalConfig& cfg) {
  if (cfg.harness.predictor == PredictorKind::oracle)
    return oracle_solvable(state, cfg.oracle, cfg.trajectory);
  return solvable_one_shot(state, cfg.propagation, cfg.trajectory).solvable;
}

}  // namespace

PlayResult play(std::shared_ptr<const Level> level, PolicyKind policy, bool use_restarts,
                const GlobalConfig& cfg, std::uint64_t seed) {
  PlayResult r;
  LevelState state(std::move(level));
  if (admissible_shots(state.current(), cfg.trajectory).empty()) {
    r.degenerate = true;
    return r;
  }

  int attempt = 0;
  std::optional<ShotOutcome> last;
  while (true) {
    if (state.solved()) {
      r.solved = true;
      if (attempt == 0) {
        r.first_attempt_solved = true;
        // Cleared before the last bird: the verdict was never needed, and
        // would have been "solvable" had it been asked.
        if (!r.first_prediction) r.first_prediction = Prediction::solvable;
      }
      r.final_score = state.accumulated_score();
      return r;
    }

    bool give_up = state.birds_remaining() == 0;
    bool signalled = false;
    std::optional<Shot> shot;
    if (!give_up) {
      std::optional<bool> verdict;
      if (state.birds_remaining() == 1) {
        verdict = predict(state, cfg);
        if (attempt == 0 && !r.first_prediction)
          r.first_prediction = *verdict ? Prediction::solvable : Prediction::unsolvable;
      }
      if (use_restarts) {
        const RestartDecision d = decide_restart(last, verdict, cfg.restart);
        if (d.hard_rule) ++r.hard_rule_triggers;
        if (d.restart) {
          if (d.hard_rule) ++r.hard_rule_restarts;
          ++r.restart_signals;
          if (!r.first_signal) r.first_signal = r.shots.size();
          signalled = true;
        }
      }
      if (!signalled) {
        if (cfg.harness.finish_aware && state.birds_remaining() == 1)
          shot = find_clearing_shot(state, cfg.oracle, cfg.trajectory);
        if (!shot) {
          try {
            shot = next_shot(AgentPolicy{policy, mix_seed(seed, static_cast<std::uint64_t>(attempt))}, state,
                             cfg.oracle, cfg.trajectory);
          } catch (const NothingReachable&) {
            give_up = true;
          }
        }
      }
    }

    if (shot) {
      ShotResult res = apply_shot(state, *shot, cfg.oracle, cfg.trajectory, cfg.restart.delta_move);
      r.shots.push_back(ShotLog{attempt, shot->target_block, shot->target_point, shot->arc});
      r.time += cfg.oracle.t_shot;
      last = res.outcome;
      state = std::move(res.state);
      continue;
    }

    // Out of birds, stuck, or told to restart.
    if (attempt == 0 && !signalled) {
      r.first_attempt_solved = false;
      if (!r.first_prediction) r.first_prediction = Prediction::unsolvable;
    }
    if (r.restarts >= cfg.harness.restart_cap) {
      r.final_score = state.accumulated_score();
      return r;
    }
    ++r.restarts;
    ++attempt;
    r.time += cfg.oracle.t_restart;
    state = state.restart();
    last.reset();
  }
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t index, int trial) {
  return mix_seed(mix_seed(seed, index), static_cast<std::uint64_t>(trial));
}

TrialRecord run_trial(const std::string& level_id, std::shared_ptr<const Level> level, PolicyKind policy,
                      const GlobalConfig& cfg, std::uint64_t seed) {
  const PlayResult control = play(level, policy, false, cfg, seed);
  TrialRecord rec;
  rec.level_id = level_id;
  rec.seed = seed;
  if (control.degenerate) {
    rec.degenerate = true;
    return rec;
  }
  const PlayResult test = play(level, policy, true, cfg, seed);
  rec.prediction = control.first_prediction;
  rec.solved = control.first_attempt_solved.value_or(false);
  rec.final_score = control.final_score;
  rec.score_with = test.final_score;
  rec.time_without = control.time;
  rec.time_with = test.time;
  rec.solved_without = control.solved;
  rec.solved_with = test.solved;
  rec.restarts = test.restarts;
  rec.restart_signals = test.restart_signals;
  rec.hard_rule_triggers = test.hard_rule_triggers;
  rec.hard_rule_restarts = test.hard_rule_restarts;
  rec.first_signal = test.first_signal;
  rec.shots_without = control.shots;
  rec.shots_with = test.shots;
  return rec;
}

Outcome classify(const TrialRecord& record) {
  if (!record.prediction) throw ClassificationError("trial " + record.level_id + " has no prediction");
  const bool unsolvable = *record.prediction == Prediction::unsolvable;
  if (unsolvable) return record.solved ? Outcome::FP : Outcome::TP;
  return record.solved ? Outcome::TN : Outcome::FN;
}

namespace {

double mean(std::span<const double> v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

std::optional<double> time_ratio(std::span<const double> without, std::span<const double> with,
                                 bool restart_signalled) {
  if (!restart_signalled || without.empty() || with.empty()) return std::nullopt;
  const double denom = mean(with);
  if (denom == 0.0) return std::nullopt;
  return mean(without) / denom;
}

std::optional<double> time_ratio(std::span<const TrialRecord> records) {
  std::vector<double> without, with;
  bool signalled = false;
  for (const TrialRecord& r : records) {
    if (r.degenerate) continue;
    without.push_back(r.time_without);
    with.push_back(r.time_with);
    signalled = signalled || r.restart_signals > 0;
  }
  return time_ratio(without, with, signalled);
}

LevelRow summarize(const std::string& level, std::span<const TrialRecord> records) {
  LevelRow row;
  row.level = level;
  int counts[4] = {0, 0, 0, 0};
  for (const TrialRecord& r : records) {
    if (r.degenerate) continue;
    ++counts[static_cast<int>(classify(r))];
    ++row.n;
  }
  if (row.n > 0) {
    const double n = row.n;
    row.tp = counts[static_cast<int>(Outcome::TP)] / n;
    row.tn = counts[static_cast<int>(Outcome::TN)] / n;
    row.fp = counts[static_cast<int>(Outcome::FP)] / n;
    row.fn = counts[static_cast<int>(Outcome::FN)] / n;
  }
  row.tr = time_ratio(records);
  return row;
}

LevelRow aggregate(std::span<const LevelRow> rows) {
  if (rows.empty()) throw std::invalid_argument("aggregate needs at least one row");
  LevelRow avg;
  avg.level = "Average";
  double tr_sum = 0.0;
  int tr_count = 0;
  for (const LevelRow& r : rows) {
    avg.tp += r.tp;
    avg.tn += r.tn;
    avg.fp += r.fp;
    avg.fn += r.fn;
    avg.n += r.n;
    if (r.tr) {
      tr_sum += *r.tr;
      ++tr_count;
    }
  }
  const double n = static_cast<double>(rows.size());
  avg.tp /= n;
  avg.tn /= n;
  avg.fp /= n;
  avg.fn /= n;
  if (tr_count > 0) avg.tr = tr_sum / tr_count;
  return avg;
}

EvaluationReport evaluate(const std::vector<NamedLevel>& corpus, PolicyKind policy, const GlobalConfig& cfg,
                          int jobs) {
  if (corpus.empty()) throw std::invalid_argument("evaluate: empty corpus");
  const int trials = cfg.harness.trials;
  const std::size_t total = corpus.size() * static_cast<std::size_t>(trials);

  std::vector<TrialRecord> records(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      const std::size_t li = i / trials;
      const int t = static_cast<int>(i % trials);
      try {
        records[i] = run_trial(corpus[li].id, corpus[li].level, policy, cfg, trial_seed(cfg.harness.seed, li, t));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = total;
      }
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(total)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  EvaluationReport report;
  report.trials_per_level = trials;
  for (std::size_t li = 0; li < corpus.size(); ++li) {
    std::span<const TrialRecord> span(records.data() + li * trials, static_cast<std::size_t>(trials));
    const bool all_degenerate =
        std::all_of(span.begin(), span.end(), [](const TrialRecord& r) { return r.degenerate; });
    if (all_degenerate) {
      report.degenerate_levels.push_back(corpus[li].id);
      continue;
    }
    report.rows.push_back(summarize(corpus[li].id, span));

    std::vector<double> sw, sr, tw, tr;
    for (const TrialRecord& r : span) {
      if (r.degenerate) continue;
      sw.push_back(r.final_score);
      sr.push_back(r.score_with);
      tw.push_back(r.time_without);
      tr.push_back(r.time_with);
    }
    report.scores.push_back(ScoreRow{corpus[li].id, mean(sw), stddev(sw), mean(sr), stddev(sr), mean(tw),
                                     mean(tr), static_cast<int>(sw.size())});
  }
  if (!report.rows.empty()) report.average = aggregate(report.rows);
  report.records = std::move(records);
  return report;
}

}  // namespace rr
