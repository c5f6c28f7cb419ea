#include "rtplan/preprocess.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <functional>
#include <iomanip>
#include <ostream>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "rtplan/assumptions.hpp"
#include "rtplan/error.hpp"
#include "rtplan/random.hpp"

namespace rtplan {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Keyed {
  double key;
  DiscreteState state;
  bool operator>(const Keyed& o) const {
    if (key != o.key) return key > o.key;
    return o.state < state;
  }
};
using MinQueue = std::priority_queue<Keyed, std::vector<Keyed>, std::greater<>>;

// Dense per-goal-state flags.
class GoalMask {
 public:
  explicit GoalMask(const GoalRegion& g) : goal_(&g), bits_(g.index_space(), 0) {}

  bool get(const DiscreteState& s) const { return goal_->in_bounds(s) && bits_[goal_->index(s)] != 0; }
  void set(const DiscreteState& s) { bits_[goal_->index(s)] = 1; }

  // Marks every goal state strictly inside the ball.
  void add_ball(const DiscreteState& center, double radius, const LatticeDomain& d) {
    goal_->for_each([&](const DiscreteState& s) {
      if (d.heuristic(s, center) < radius) bits_[goal_->index(s)] = 1;
    });
  }

 private:
  const GoalRegion* goal_;
  std::vector<std::uint8_t> bits_;
};

class Preprocessor {
 public:
  Preprocessor(const LatticeDomain& d, const DiscreteState& start, const OfflinePlanner& planner,
               const PreprocessConfig& cfg)
      : d_(d), goal_(d.goal_region()), start_(start), planner_(planner), cfg_(cfg),
        valid_(goal_), covered_(goal_), inv_covered_(goal_) {}

  PreprocessArtifact run(PreprocessReport& report) {
    const auto t0 = Clock::now();
    art_.domain_fingerprint = d_.fingerprint();
    art_.start = start_;
    art_.epsilon = cfg_.epsilon;
    art_.depth_cap = cfg_.depth_cap;
    art_.stats.seed = cfg_.seed;
    art_.stats.planner_timeouts = cfg_.planner_timeouts;

    std::vector<DiscreteState> valid_states;
    goal_.for_each([&](const DiscreteState& s) {
      if (d_.is_valid(s)) {
        valid_.set(s);
        valid_states.push_back(s);
      }
    });
    art_.stats.valid_goal_states = static_cast<std::uint32_t>(valid_states.size());
    if (valid_states.empty()) {
      report.empty_goal = true;
      report.total_seconds = seconds_since(t0);
      return std::move(art_);
    }

    // Uniform over valid goal states; same distribution as rejection sampling.
    Rng rng(cfg_.seed);
    std::deque<DiscreteState> seeds{valid_states[rng.uniform(valid_states.size())]};

    std::vector<DiscreteState> pending;
    for (std::size_t tier = 0; tier < cfg_.planner_timeouts.size(); ++tier) {
      ++art_.stats.tiers_used;
      pending = covering_loop(std::move(seeds), cfg_.planner_timeouts[tier]);
      seeds.clear();
      for (const auto& s : pending) {
        if (!covered_.get(s)) seeds.push_back(s);
      }
      if (seeds.empty()) break;
    }
    std::vector<DiscreteState> orphans(seeds.begin(), seeds.end());

    if (cfg_.coverage_sweep) {
      const double last_timeout = cfg_.planner_timeouts.empty() ? 0.0 : cfg_.planner_timeouts.back();
      std::unordered_set<DiscreteState, DiscreteStateHash> given_up(orphans.begin(), orphans.end());
      for (const auto& s : valid_states) {
        if (covered_.get(s) || given_up.count(s) != 0) continue;
        ++art_.stats.coverage_reseeds;
        for (const auto& bad : covering_loop({s}, last_timeout)) {
          if (given_up.insert(bad).second) orphans.push_back(bad);
        }
      }
    }
    std::sort(orphans.begin(), orphans.end());
    orphans.erase(std::unique(orphans.begin(), orphans.end()), orphans.end());
    for (const auto& s : orphans) {
      if (!covered_.get(s)) art_.orphans.push_back(s);
    }

    finalize();
    report.planner_seconds = planner_seconds_;
    report.total_seconds = seconds_since(t0);
    return std::move(art_);
  }

 private:
  // One pass of the covering loop with a fixed planner timeout. Returns the
  // attractors the planner failed on.
  std::vector<DiscreteState> covering_loop(std::deque<DiscreteState> V, double timeout) {
    std::deque<DiscreteState> I;
    std::vector<DiscreteState> bad;
    std::unordered_set<DiscreteState, DiscreteStateHash> attempted;
    while (!V.empty() || !I.empty()) {
      while (!V.empty()) {
        const DiscreteState s = V.front();
        V.pop_front();
        if (covered_.get(s) || attempted.count(s) != 0) continue;
        attempted.insert(s);

        const auto tp = Clock::now();
        ++art_.stats.planner_calls;
        PlanResult plan = planner_.plan(d_, start_, s, timeout);
        const double planner_ms = 1e3 * seconds_since(tp);
        planner_seconds_ += planner_ms / 1e3;
        if (!plan.found()) {
          // Bad attractor: no subregion grows from it at this tier.
          ++art_.stats.bad_attractors;
          bad.push_back(s);
          continue;
        }

        const ReachabilityResult reach =
            compute_reachability(s, d_, ReachabilityOptions{cfg_.epsilon, cfg_.depth_cap});
        for (const auto& f : reach.frontier) {
          if (valid_.get(f)) {
            V.push_back(f);
          } else {
            I.push_back(f);
          }
        }
        Subregion r{s, reach.radius, reach.depth, static_cast<std::uint32_t>(art_.library.size())};
        art_.library.push_back(std::move(*plan.path));
        art_.subregions.push_back(r);
        covered_.add_ball(s, reach.radius, d_);
        if (cfg_.log != nullptr) {
          *cfg_.log << "subregion index=" << art_.subregions.size() - 1 << " radius=" << std::setprecision(17)
                    << reach.radius << " depth=" << reach.depth << " reachable=" << reach.reachable_size
                    << " planner_ms=" << std::setprecision(6) << planner_ms << '\n';
        }
      }
      while (!I.empty()) {
        const DiscreteState s = I.front();
        I.pop_front();
        if (covered_.get(s) || inv_covered_.get(s)) continue;
        UncoveredSearchResult x = find_valid_uncovered_state(s, art_.subregions, d_, cfg_.epsilon);
        art_.invalid_subregions.push_back({s, x.radius});
        inv_covered_.add_ball(s, x.radius, d_);
        if (x.found) {
          V.push_back(*x.found);
          break;
        }
      }
    }
    return bad;
  }

  void finalize() {
    art_.stats.subregions_before_prune = static_cast<std::uint32_t>(art_.subregions.size());
    std::vector<Subregion> kept = art_.subregions;
    if (cfg_.prune) {
      kept = prune_redundant(std::move(kept), d_);
    } else {
      sort_by_radius(kept);
    }
    std::vector<PlannedPath> library;
    library.reserve(kept.size());
    for (auto& r : kept) {
      library.push_back(std::move(art_.library[r.path_index]));
      r.path_index = static_cast<std::uint32_t>(library.size() - 1);
    }
    art_.subregions = std::move(kept);
    art_.library = std::move(library);
  }

  const LatticeDomain& d_;
  const GoalRegion& goal_;
  DiscreteState start_;
  const OfflinePlanner& planner_;
  const PreprocessConfig& cfg_;
  GoalMask valid_;
  GoalMask covered_;
  GoalMask inv_covered_;
  PreprocessArtifact art_;
  double planner_seconds_ = 0.0;
};

}  // namespace

std::uint32_t PreprocessArtifact::max_depth() const noexcept {
  std::uint32_t m = 0;
  for (const auto& r : subregions) m = std::max(m, r.depth);
  return m;
}

ReachabilityResult compute_reachability(const DiscreteState& attractor, const LatticeDomain& domain,
                                        const ReachabilityOptions& options, ReachabilityTrace* trace) {
  domain.check_dimension(attractor);
  if (!domain.in_goal(attractor) || !domain.is_valid(attractor)) {
    throw Error(ErrorCode::kInvalidAttractor, "attractor " + attractor.to_string() + " is invalid or outside the goal");
  }
  auto key = [&](const DiscreteState& s) { return domain.heuristic(s, attractor); };

  // Reachable states with their greedy depth.
  std::unordered_map<DiscreteState, std::uint32_t, DiscreteStateHash> reachable{{attractor, 0}};
  // The attractor starts closed so no successor can push it back into OPEN.
  std::unordered_set<DiscreteState, DiscreteStateHash> closed{attractor};
  std::vector<Keyed> popped;  // (key, state) of every expansion, pop order
  MinQueue open;
  domain.for_each_successor(attractor, [&](const DiscreteState& s) {
    if (domain.in_goal(s)) open.push({key(s), s});
  });
  if (trace != nullptr) {
    trace->reachable.push_back(attractor);
    trace->reachable_depths.push_back(0);
  }

  ReachabilityResult out;
  std::optional<Keyed> terminal;
  double last_key = 0.0;
  while (!open.empty()) {
    const Keyed top = open.top();
    open.pop();
    if (!closed.insert(top.state).second) continue;
    last_key = top.key;
    popped.push_back(top);
    if (trace != nullptr) trace->popped_keys.push_back(top.key);

    const DiscreteState g = greedy_predecessor(top.state, attractor, domain);
    const auto it = reachable.find(g);
    if (it != reachable.end() && domain.is_edge_valid(top.state, g)) {
      const std::uint32_t depth = it->second + 1;
      if (options.depth_cap != 0 && depth > options.depth_cap) {
        terminal = top;
        break;
      }
      reachable.emplace(top.state, depth);
      if (trace != nullptr) {
        trace->reachable.push_back(top.state);
        trace->reachable_depths.push_back(depth);
      }
    } else if (domain.is_valid(top.state)) {
      terminal = top;
      break;
    }
    domain.for_each_successor(top.state, [&](const DiscreteState& s) {
      if (domain.in_goal(s) && closed.count(s) == 0) open.push({key(s), s});
    });
  }

  if (terminal) {
    out.radius = terminal->key;
    // Remaining OPEN plus every popped state on or beyond the boundary,
    // which includes the terminating state and its exact ties.
    std::unordered_set<DiscreteState, DiscreteStateHash> frontier;
    while (!open.empty()) {
      if (closed.count(open.top().state) == 0) frontier.insert(open.top().state);
      open.pop();
    }
    for (const auto& p : popped) {
      if (p.key >= out.radius) frontier.insert(p.state);
    }
    out.frontier.assign(frontier.begin(), frontier.end());
    std::sort(out.frontier.begin(), out.frontier.end());
  } else {
    out.exhausted = true;
    out.radius = last_key + options.epsilon;
  }
  for (const auto& [s, depth] : reachable) {
    if (key(s) < out.radius) {
      ++out.reachable_size;
      out.depth = std::max(out.depth, depth);
    }
  }
  return out;
}

UncoveredSearchResult find_valid_uncovered_state(const DiscreteState& center,
                                                 const std::vector<Subregion>& subregions,
                                                 const LatticeDomain& domain, double epsilon) {
  domain.check_dimension(center);
  auto key = [&](const DiscreteState& s) { return domain.heuristic(s, center); };
  auto covered = [&](const DiscreteState& s) {
    return std::any_of(subregions.begin(), subregions.end(),
                       [&](const Subregion& r) { return r.covers(s, domain); });
  };
  std::unordered_set<DiscreteState, DiscreteStateHash> closed;
  MinQueue open;
  open.push({0.0, center});
  double last_key = 0.0;
  while (!open.empty()) {
    const Keyed top = open.top();
    open.pop();
    if (!closed.insert(top.state).second) continue;
    last_key = top.key;
    if (domain.is_valid(top.state) && !covered(top.state)) return {top.state, top.key};
    auto push = [&](const DiscreteState& s) {
      if (domain.in_goal(s) && closed.count(s) == 0) open.push({key(s), s});
    };
    domain.for_each_successor(top.state, push);
    domain.for_each_predecessor(top.state, push);
  }
  return {std::nullopt, last_key + epsilon};
}

void sort_by_radius(std::vector<Subregion>& subregions) {
  std::stable_sort(subregions.begin(), subregions.end(), [](const Subregion& a, const Subregion& b) {
    if (a.radius != b.radius) return a.radius > b.radius;
    return a.attractor < b.attractor;
  });
}

std::vector<Subregion> prune_redundant(std::vector<Subregion> subregions, const LatticeDomain& domain) {
  sort_by_radius(subregions);
  // Containment composes under the triangle inequality, so checking against
  // kept subregions only is enough; a later subregion can contain an earlier
  // one only if both are identical.
  std::vector<Subregion> kept;
  kept.reserve(subregions.size());
  for (const auto& r : subregions) {
    const bool contained = std::any_of(kept.begin(), kept.end(), [&](const Subregion& k) {
      return domain.heuristic(r.attractor, k.attractor) + r.radius <= k.radius;
    });
    if (!contained) kept.push_back(r);
  }
  return kept;
}

PreprocessArtifact preprocess_region(const LatticeDomain& domain, const DiscreteState& start,
                                     const OfflinePlanner& planner, const PreprocessConfig& config,
                                     PreprocessReport* report) {
  domain.check_dimension(start);
  if (!(config.epsilon > 0.0)) throw Error(ErrorCode::kInvalidArgument, "epsilon must be positive");
  if (config.planner_timeouts.empty()) throw Error(ErrorCode::kInvalidArgument, "no planner timeout tiers");
  if (!domain.is_valid(start)) throw Error(ErrorCode::kStartInvalid, "start " + start.to_string() + " is invalid");

  PreprocessReport local;
  PreprocessReport& rep = report != nullptr ? *report : local;
  rep = {};
  if (config.monotonicity_sample_pairs > 0 && domain.goal_region().size() > 1) {
    CheckerConfig cc;
    cc.pair_budget = 0;  // always sampled here
    cc.sample_pairs = config.monotonicity_sample_pairs;
    cc.seed = config.seed;
    cc.max_reported = 1;
    cc.exec = Exec::kSerial;
    const AssumptionReport mono = check_weak_monotonicity(domain, cc);
    rep.monotonicity_sample_ok = mono.holds();
    if (!mono.holds()) {
      throw Error(ErrorCode::kAssumptionViolated,
                  "goal region fails the sampled weak-monotonicity check, e.g. " +
                      mono.violations.front().first.to_string() + " -> " + mono.violations.front().second.to_string());
    }
  }
  Preprocessor p(domain, start, planner, config);
  return p.run(rep);
}

}  // namespace rtplan
