#include "rtplan/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "rtplan/error.hpp"

namespace rtplan {

namespace instrumentation {
namespace {
thread_local std::uint64_t g_validity_checks = 0;
}
std::uint64_t validity_checks() noexcept { return g_validity_checks; }
void count_validity_check() noexcept { ++g_validity_checks; }
}  // namespace instrumentation

std::vector<MotionPrimitive> axis_primitives(std::size_t dimension) {
  std::vector<MotionPrimitive> out;
  for (std::size_t k = 0; k < dimension; ++k) {
    for (int sign : {-1, 1}) {
      MotionPrimitive p = DiscreteState::zeros(dimension);
      p[k] = sign;
      out.push_back(p);
    }
  }
  return out;
}

std::vector<MotionPrimitive> full_primitives(std::size_t dimension) {
  std::vector<MotionPrimitive> out;
  const DiscreteState lo = [&] {
    DiscreteState s = DiscreteState::zeros(dimension);
    for (std::size_t k = 0; k < dimension; ++k) s[k] = -1;
    return s;
  }();
  DiscreteState hi = lo;
  for (std::size_t k = 0; k < dimension; ++k) hi[k] = 1;
  const DiscreteState zero = DiscreteState::zeros(dimension);
  for_each_in_box(lo, hi, [&](const DiscreteState& s) {
    if (s != zero) out.push_back(s);
  });
  return out;
}

LatticeDomain::LatticeDomain(LatticeSpec spec) : spec_(std::move(spec)) {
  const std::size_t n = spec_.dimension;
  if (n == 0 || n > kMaxDimension) {
    throw Error(ErrorCode::kDimensionMismatch, "unsupported lattice dimension " + std::to_string(n));
  }
  if (spec_.weights.empty()) spec_.weights.assign(n, 1.0);
  if (spec_.resolution.empty()) spec_.resolution.assign(n, 1.0);
  if (spec_.weights.size() != n || spec_.resolution.size() != n) {
    throw Error(ErrorCode::kInconsistentDims, "weights/resolution length differs from dimension");
  }
  for (double w : spec_.weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::kInvalidArgument, "heuristic weights must be positive and finite");
    }
  }
  if (spec_.goal.dimension() != n) {
    throw Error(ErrorCode::kInconsistentDims, "goal region dimension differs from lattice dimension");
  }
  const DiscreteState zero = DiscreteState::zeros(n);
  for (const auto& p : spec_.primitives) {
    if (p.size() != n) throw Error(ErrorCode::kInconsistentDims, "primitive dimension mismatch");
    if (p == zero) throw Error(ErrorCode::kInvalidArgument, "zero motion primitive");
  }
  for (const auto& p : spec_.primitives) {
    if (std::count(spec_.primitives.begin(), spec_.primitives.end(), p) != 1) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate motion primitive " + p.to_string());
    }
    if (std::find(spec_.primitives.begin(), spec_.primitives.end(), zero - p) ==
        spec_.primitives.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "primitive set is not closed under negation: missing -" + p.to_string());
    }
  }
}

std::vector<DiscreteState> LatticeDomain::successors(const DiscreteState& s) const {
  std::vector<DiscreteState> out;
  out.reserve(spec_.primitives.size());
  for_each_successor(s, [&](const DiscreteState& t) { out.push_back(t); });
  return out;
}

std::vector<DiscreteState> LatticeDomain::predecessors(const DiscreteState& s) const {
  std::vector<DiscreteState> out;
  out.reserve(spec_.primitives.size());
  for_each_predecessor(s, [&](const DiscreteState& t) { out.push_back(t); });
  return out;
}

bool LatticeDomain::is_neighbor(const DiscreteState& a, const DiscreteState& b) const noexcept {
  if (a.size() != spec_.dimension || b.size() != spec_.dimension) return false;
  const DiscreteState d = b - a;
  return std::find(spec_.primitives.begin(), spec_.primitives.end(), d) != spec_.primitives.end();
}

double LatticeDomain::heuristic(const DiscreteState& a, const DiscreteState& b) const {
  double sum = 0.0;
  for (std::size_t k = 0; k < spec_.dimension; ++k) {
    const double d = spec_.weights[k] * (static_cast<double>(a[k]) - static_cast<double>(b[k]));
    sum += d * d;
  }
  return std::sqrt(sum);
}

void LatticeDomain::check_dimension(const DiscreteState& s) const {
  if (s.size() != spec_.dimension) {
    throw Error(ErrorCode::kDimensionMismatch,
                "state " + s.to_string() + " has dimension " + std::to_string(s.size()) +
                    ", domain expects " + std::to_string(spec_.dimension));
  }
}

void LatticeDomain::fingerprint_lattice(Fnv1a& hasher) const {
  hasher.add_u64(spec_.dimension);
  hasher.add_u64(spec_.primitives.size());
  for (const auto& p : spec_.primitives) {
    for (std::int32_t c : p) hasher.add_i64(c);
  }
  for (double w : spec_.weights) hasher.add_double(w);
  for (double r : spec_.resolution) hasher.add_double(r);
  hasher.add_u64(spec_.goal.boxes().size());
  for (const Box& b : spec_.goal.boxes()) {
    for (std::int32_t c : b.lower) hasher.add_i64(c);
    for (std::int32_t c : b.upper) hasher.add_i64(c);
  }
}

DiscreteState greedy_predecessor(const DiscreteState& s, const DiscreteState& target,
                                 const LatticeDomain& domain) {
  if (domain.branching_factor() == 0) {
    throw Error(ErrorCode::kEmptyPredecessors, "state " + s.to_string() + " has no predecessors");
  }
  DiscreteState best;
  double best_h = 0.0;
  bool first = true;
  domain.for_each_predecessor(s, [&](const DiscreteState& p) {
    const double h = domain.heuristic(p, target);
    if (first || h < best_h - kHeuristicTieTolerance ||
        (std::abs(h - best_h) <= kHeuristicTieTolerance && p < best)) {
      best = p;
      best_h = h;
      first = false;
    }
  });
  return best;
}

std::vector<DiscreteState> greedy_descent(const LatticeDomain& domain, const DiscreteState& from,
                                          const DiscreteState& to, std::size_t max_steps) {
  std::vector<DiscreteState> out{from};
  DiscreteState cur = from;
  while (cur != to) {
    if (out.size() > max_steps) return {};
    cur = greedy_predecessor(cur, to, domain);
    out.push_back(cur);
  }
  return out;
}

double path_cost(const std::vector<DiscreteState>& states, const LatticeDomain& domain) {
  double cost = 0.0;
  for (std::size_t i = 1; i < states.size(); ++i) cost += domain.heuristic(states[i - 1], states[i]);
  return cost;
}

}  // namespace rtplan
