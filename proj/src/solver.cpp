#include "ccot/solver.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ccot/exchange.hpp"

namespace ccot {

namespace {

// ---------------------------------------------------------------------------
// Scalar plumbing shared by the exact and the float64 simplex instantiations.
// Rational comparisons are exact; the double instantiation tolerates roundoff
// in sign tests and is only used by the non-certifying rendering path.
// ---------------------------------------------------------------------------

template <class Num>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
  static Rational from_rational(const Rational& r) { return r; }
  static int sign(const Rational& x) { return x < 0 ? -1 : (x > 0 ? 1 : 0); }
};

template <>
struct ScalarOps<double> {
  static constexpr double kEps = 1e-12;
  static double from_rational(const Rational& r) { return to_double(r); }
  static int sign(double x) { return x < -kEps ? -1 : (x > kEps ? 1 : 0); }
};

// Costs and potentials carry a Big-M part so the all-artificial starting
// basis prices out exactly: value = big * M + small with M symbolic. The big
// part stays a small integer (artificial arcs cost (1, 0), real arcs (0, c)).
template <class Num>
struct BigM {
  long long big = 0;
  Num small{};
};

enum class ArcState : char { kBasic, kAtLower, kAtUpper };

enum class SimplexStatus { kOptimal, kInfeasible };

// Bounded-variable primal simplex on the transportation network
//   supplies 0..R-1, demands R..R+C-1, plus an artificial root node that the
//   starting spanning tree hangs off. Nonbasic arcs sit at flow 0 or at
//   their upper bound; pivots push flow around the unique tree cycle.
// Pricing is Dantzig with wrap-around block search; after a run of
// degenerate pivots it falls back to Bland's rule (least-index entering and
// leaving arcs) until the objective moves again, which precludes cycling.
template <class Num>
class BoundedTransportSimplex {
 public:
  BoundedTransportSimplex(int rows, int cols, std::vector<Num> cost,
                          std::vector<Num> upper, std::vector<Num> supply,
                          std::vector<Num> demand)
      : rows_(rows), cols_(cols), num_nodes_(rows + cols + 1) {
    const int real_arcs = rows * cols;
    const int total_arcs = real_arcs + rows + cols;
    tail_.resize(total_arcs);
    head_.resize(total_arcs);
    cost_big_.assign(total_arcs, 0);
    cost_small_.resize(total_arcs);
    upper_.resize(total_arcs);
    has_upper_.assign(total_arcs, true);
    flow_.assign(total_arcs, Num{});
    state_.assign(total_arcs, ArcState::kAtLower);

    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) {
        const int a = i * cols_ + j;
        tail_[a] = i;
        head_[a] = rows_ + j;
        cost_small_[a] = cost[a];
        upper_[a] = upper[a];
      }
    }
    // Artificial tree: every supply drains to the root, the root feeds every
    // demand. Cost (1, 0) each, no upper bound.
    for (int i = 0; i < rows; ++i) {
      const int a = real_arcs + i;
      tail_[a] = i;
      head_[a] = root();
      cost_big_[a] = 1;
      cost_small_[a] = Num{};
      has_upper_[a] = false;
      flow_[a] = supply[i];
      state_[a] = ArcState::kBasic;
    }
    for (int j = 0; j < cols; ++j) {
      const int a = real_arcs + rows + j;
      tail_[a] = root();
      head_[a] = rows_ + j;
      cost_big_[a] = 1;
      cost_small_[a] = Num{};
      has_upper_[a] = false;
      flow_[a] = demand[j];
      state_[a] = ArcState::kBasic;
    }

    parent_.resize(num_nodes_);
    parent_arc_.resize(num_nodes_);
    depth_.resize(num_nodes_);
    pot_big_.resize(num_nodes_);
    pot_small_.resize(num_nodes_);
    rebuild_tree();
  }

  SimplexStatus run() {
    const int num_arcs = static_cast<int>(tail_.size());
    const int block = std::max(64, num_arcs / 16);
    int cursor = 0;
    long long degenerate_run = 0;
    bool bland = false;

    for (;;) {
      int entering = -1;
      if (bland) {
        for (int a = 0; a < num_arcs; ++a) {
          if (eligible(a)) {
            entering = a;
            break;
          }
        }
      } else {
        // Dantzig pricing over wrap-around blocks: stop at the end of the
        // first block that produced a candidate, enter its worst violator.
        long long best_big = 0;
        Num best_small{};
        for (int k = 0; k < num_arcs; ++k) {
          const int a = (cursor + k) % num_arcs;
          long long vb;
          Num vs;
          if (violation(a, vb, vs)) {
            if (entering < 0 || vb > best_big ||
                (vb == best_big && vs > best_small)) {
              entering = a;
              best_big = vb;
              best_small = vs;
            }
          }
          if (entering >= 0 && (k + 1) % block == 0) break;
        }
        if (entering >= 0) cursor = (entering + 1) % num_arcs;
      }

      // Either scan visited every arc before giving up, so this is exact.
      if (entering < 0) return finish();

      const bool degenerate = pivot(entering);
      ++iterations_;
      if (iterations_ > kIterationCap) {
        throw std::logic_error("simplex iteration cap exceeded");
      }
      if (degenerate) {
        if (++degenerate_run > kStallThreshold) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
    }
  }

  // Exact dual-feasibility certificate: every nonbasic arc prices out with
  // the right sign against the final potentials. Only meaningful for the
  // exact instantiation.
  bool certify_optimal() const {
    const int num_arcs = static_cast<int>(tail_.size());
    for (int a = 0; a < num_arcs; ++a) {
      const int s = rc_sign(a);
      if (state_[a] == ArcState::kBasic && s != 0) return false;
      if (state_[a] == ArcState::kAtLower && s < 0) return false;
      if (state_[a] == ArcState::kAtUpper && s > 0) return false;
    }
    return true;
  }

  bool artificials_clear() const {
    const int real_arcs = rows_ * cols_;
    for (size_t a = real_arcs; a < tail_.size(); ++a) {
      if (ScalarOps<Num>::sign(flow_[a]) != 0) return false;
    }
    return true;
  }

  std::vector<Num> real_flows() const {
    return std::vector<Num>(flow_.begin(), flow_.begin() + rows_ * cols_);
  }

  // Cells strictly between bounds; bounded by rows+cols-1 for a basis.
  long long count_free_cells() const {
    long long count = 0;
    for (int a = 0; a < rows_ * cols_; ++a) {
      if (ScalarOps<Num>::sign(flow_[a]) > 0 &&
          ScalarOps<Num>::sign(upper_[a] - flow_[a]) > 0) {
        ++count;
      }
    }
    return count;
  }

  std::int64_t iterations() const { return iterations_; }

 private:
  static constexpr long long kStallThreshold = 100;
  static constexpr std::int64_t kIterationCap = 20000000;

  int root() const { return num_nodes_ - 1; }

  // Reduced cost sign of arc a: lexicographic on (big, small).
  int rc_sign(int a) const {
    const long long big =
        cost_big_[a] + pot_big_[tail_[a]] - pot_big_[head_[a]];
    if (big != 0) return big > 0 ? 1 : -1;
    return ScalarOps<Num>::sign(cost_small_[a] + pot_small_[tail_[a]] -
                                pot_small_[head_[a]]);
  }

  bool eligible(int a) const {
    if (state_[a] == ArcState::kBasic) return false;
    const int s = rc_sign(a);
    return state_[a] == ArcState::kAtLower ? s < 0 : s > 0;
  }

  // Sets (vb, vs) to the pricing violation when arc a is eligible.
  bool violation(int a, long long& vb, Num& vs) const {
    if (state_[a] == ArcState::kBasic) return false;
    const long long big =
        cost_big_[a] + pot_big_[tail_[a]] - pot_big_[head_[a]];
    Num small = cost_small_[a] + pot_small_[tail_[a]] - pot_small_[head_[a]];
    if (state_[a] == ArcState::kAtLower) {
      if (big > 0 || (big == 0 && ScalarOps<Num>::sign(small) >= 0)) return false;
      vb = -big;
      vs = -small;
    } else {
      if (big < 0 || (big == 0 && ScalarOps<Num>::sign(small) <= 0)) return false;
      vb = big;
      vs = small;
    }
    return true;
  }

  void rebuild_tree() {
    adjacency_.assign(num_nodes_, {});
    for (size_t a = 0; a < tail_.size(); ++a) {
      if (state_[a] == ArcState::kBasic) {
        adjacency_[tail_[a]].push_back(static_cast<int>(a));
        adjacency_[head_[a]].push_back(static_cast<int>(a));
      }
    }
    std::vector<bool> seen(num_nodes_, false);
    std::deque<int> queue{root()};
    seen[root()] = true;
    parent_[root()] = -1;
    parent_arc_[root()] = -1;
    depth_[root()] = 0;
    pot_big_[root()] = 0;
    pot_small_[root()] = Num{};
    int visited = 0;
    while (!queue.empty()) {
      const int node = queue.front();
      queue.pop_front();
      ++visited;
      for (const int a : adjacency_[node]) {
        const int other = tail_[a] == node ? head_[a] : tail_[a];
        if (seen[other]) continue;
        seen[other] = true;
        parent_[other] = node;
        parent_arc_[other] = a;
        depth_[other] = depth_[node] + 1;
        if (tail_[a] == node) {
          // node -> other: pot[other] = pot[node] + cost
          pot_big_[other] = pot_big_[node] + cost_big_[a];
          pot_small_[other] = pot_small_[node] + cost_small_[a];
        } else {
          pot_big_[other] = pot_big_[node] - cost_big_[a];
          pot_small_[other] = pot_small_[node] - cost_small_[a];
        }
        queue.push_back(other);
      }
    }
    if (visited != num_nodes_) {
      throw std::logic_error("simplex basis is not a spanning tree");
    }
  }

  // Pushes flow around the cycle the entering arc closes. Returns true when
  // the pivot was degenerate (zero flow change).
  bool pivot(int entering) {
    // Push direction through the entering arc: tail->head when it enters
    // from its lower bound, head->tail from its upper bound.
    const bool from_lower = state_[entering] == ArcState::kAtLower;
    const int push_from = from_lower ? head_[entering] : tail_[entering];
    const int push_to = from_lower ? tail_[entering] : head_[entering];
    // The tree path from push_from to push_to carries theta; a tree arc is
    // forward when its direction agrees with travel toward push_to.

    struct CycleArc {
      int arc;
      bool forward;
    };
    std::vector<CycleArc> cycle;
    int x = push_from, y = push_to;
    std::vector<CycleArc> from_side, to_side;
    while (x != y) {
      if (depth_[x] >= depth_[y]) {
        const int a = parent_arc_[x];
        // Travel x -> parent(x): forward if the arc points out of x.
        from_side.push_back({a, tail_[a] == x});
        x = parent_[x];
      } else {
        const int a = parent_arc_[y];
        // Travel parent(y) -> y on the final path: forward if the arc
        // points into y.
        to_side.push_back({a, head_[a] == y});
        y = parent_[y];
      }
    }
    cycle = std::move(from_side);
    cycle.insert(cycle.end(), to_side.rbegin(), to_side.rend());

    // Ratio test, least arc index among the blocking arcs.
    bool unbounded = true;
    Num theta{};
    int leaving = -1;
    bool leaving_to_upper = false;
    auto offer = [&](int arc, const Num& limit, bool to_upper) {
      if (unbounded || limit < theta ||
          (limit == theta && arc < leaving)) {
        theta = limit;
        leaving = arc;
        leaving_to_upper = to_upper;
        unbounded = false;
      }
    };
    if (has_upper_[entering]) {
      offer(entering, upper_[entering], !from_lower);
    }
    for (const auto& [arc, forward] : cycle) {
      if (forward) {
        if (has_upper_[arc]) offer(arc, upper_[arc] - flow_[arc], true);
      } else {
        offer(arc, flow_[arc], false);
      }
    }
    if (unbounded) {
      throw std::logic_error("unbounded pivot in transportation simplex");
    }

    const bool degenerate = ScalarOps<Num>::sign(theta) == 0;

    // Update flows.
    if (from_lower) {
      flow_[entering] = theta;
    } else {
      flow_[entering] = upper_[entering] - theta;
    }
    for (const auto& [arc, forward] : cycle) {
      if (forward) {
        flow_[arc] += theta;
      } else {
        flow_[arc] -= theta;
      }
    }

    // Update basis membership.
    if (leaving == entering) {
      state_[entering] = from_lower ? ArcState::kAtUpper : ArcState::kAtLower;
      if (!from_lower) flow_[entering] = Num{};
    } else {
      state_[entering] = ArcState::kBasic;
      state_[leaving] = leaving_to_upper ? ArcState::kAtUpper : ArcState::kAtLower;
      // Pin the leaving arc exactly onto its bound; with exact arithmetic
      // this is a no-op, with doubles it clears accumulated roundoff.
      flow_[leaving] = leaving_to_upper ? upper_[leaving] : Num{};
      rebuild_tree();
    }
    return degenerate;
  }

  SimplexStatus finish() const {
    return artificials_clear() ? SimplexStatus::kOptimal
                               : SimplexStatus::kInfeasible;
  }

  int rows_, cols_, num_nodes_;
  std::vector<int> tail_, head_;
  std::vector<long long> cost_big_;
  std::vector<Num> cost_small_;
  std::vector<Num> upper_;
  std::vector<bool> has_upper_;
  std::vector<Num> flow_;
  std::vector<ArcState> state_;

  std::vector<std::vector<int>> adjacency_;
  std::vector<int> parent_, parent_arc_, depth_;
  std::vector<long long> pot_big_;
  std::vector<Num> pot_small_;
  std::int64_t iterations_ = 0;
};

void check_problem_shapes(const DiscreteMarginal& f, const DiscreteMarginal& g,
                          const CostMatrix& cost,
                          const CapacityMatrix& capacity) {
  if (cost.rows() != f.size() || cost.cols() != g.size() ||
      capacity.rows() != f.size() || capacity.cols() != g.size()) {
    throw std::invalid_argument("problem shapes disagree");
  }
}

template <class Num>
BoundedTransportSimplex<Num> make_simplex(const DiscreteMarginal& f,
                                          const DiscreteMarginal& g,
                                          const CostMatrix& cost,
                                          const CapacityMatrix& capacity) {
  using Ops = ScalarOps<Num>;
  const int rows = f.size(), cols = g.size();
  std::vector<Num> c, u, supply, demand;
  c.reserve(rows * cols);
  u.reserve(rows * cols);
  for (int k = 0; k < rows * cols; ++k) {
    c.push_back(Ops::from_rational(cost.entries()[k]));
    u.push_back(Ops::from_rational(capacity.mass_bounds()[k]));
  }
  supply.reserve(rows);
  for (int i = 0; i < rows; ++i) supply.push_back(Ops::from_rational(f.mass(i)));
  demand.reserve(cols);
  for (int j = 0; j < cols; ++j) demand.push_back(Ops::from_rational(g.mass(j)));
  return BoundedTransportSimplex<Num>(rows, cols, std::move(c), std::move(u),
                                      std::move(supply), std::move(demand));
}

// ---------------------------------------------------------------------------
// Exact max-flow (Dinic) on source -> supplies -> demands -> sink. Used for
// the feasibility decision and for the oracle's starting plan, independently
// of the simplex machinery.
// ---------------------------------------------------------------------------

class ExactMaxFlow {
 public:
  explicit ExactMaxFlow(int num_nodes) : first_out_(num_nodes, -1) {}

  int add_edge(int from, int to, Rational capacity) {
    const int id = static_cast<int>(to_.size());
    to_.push_back(to);
    cap_.push_back(std::move(capacity));
    next_.push_back(first_out_[from]);
    first_out_[from] = id;
    to_.push_back(from);
    cap_.push_back(Rational(0));
    next_.push_back(first_out_[to]);
    first_out_[to] = id + 1;
    return id;
  }

  Rational run(int source, int sink) {
    Rational total = 0;
    while (bfs(source, sink)) {
      iter_ = first_out_;
      for (;;) {
        Rational pushed = dfs(source, sink, Rational(-1));
        if (pushed == 0) break;
        total += pushed;
      }
    }
    return total;
  }

  // Flow sent along a forward edge = residual on its reverse edge.
  Rational flow_on(int edge_id) const { return cap_[edge_id ^ 1]; }

 private:
  bool bfs(int source, int sink) {
    level_.assign(first_out_.size(), -1);
    std::deque<int> queue{source};
    level_[source] = 0;
    while (!queue.empty()) {
      const int node = queue.front();
      queue.pop_front();
      for (int e = first_out_[node]; e >= 0; e = next_[e]) {
        if (cap_[e] > 0 && level_[to_[e]] < 0) {
          level_[to_[e]] = level_[node] + 1;
          queue.push_back(to_[e]);
        }
      }
    }
    return level_[sink] >= 0;
  }

  // limit < 0 means unlimited.
  Rational dfs(int node, int sink, Rational limit) {
    if (node == sink) return limit;
    for (int& e = iter_[node]; e >= 0; e = next_[e]) {
      if (cap_[e] <= 0 || level_[to_[e]] != level_[node] + 1) continue;
      Rational pass = limit < 0 ? cap_[e] : std::min(limit, cap_[e]);
      Rational pushed = dfs(to_[e], sink, pass);
      if (pushed > 0) {
        cap_[e] -= pushed;
        cap_[e ^ 1] += pushed;
        return pushed;
      }
    }
    return Rational(0);
  }

  std::vector<int> first_out_, to_, next_, iter_, level_;
  std::vector<Rational> cap_;
};

struct BipartiteFlow {
  Rational value;
  std::vector<Rational> plan_mass;  // row-major
};

BipartiteFlow bipartite_max_flow(const DiscreteMarginal& f,
                                 const DiscreteMarginal& g,
                                 const CapacityMatrix& capacity) {
  const int rows = f.size(), cols = g.size();
  const int source = rows + cols, sink = rows + cols + 1;
  ExactMaxFlow net(rows + cols + 2);
  for (int i = 0; i < rows; ++i) net.add_edge(source, i, f.mass(i));
  std::vector<int> pair_edge(static_cast<size_t>(rows) * cols, -1);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (capacity.at(i, j) > 0) {
        pair_edge[i * cols + j] = net.add_edge(i, rows + j, capacity.at(i, j));
      }
    }
  }
  for (int j = 0; j < cols; ++j) net.add_edge(rows + j, sink, g.mass(j));

  BipartiteFlow result;
  result.value = net.run(source, sink);
  result.plan_mass.assign(static_cast<size_t>(rows) * cols, Rational(0));
  for (size_t k = 0; k < pair_edge.size(); ++k) {
    if (pair_edge[k] >= 0) result.plan_mass[k] = net.flow_on(pair_edge[k]);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Residual negative-cycle cancellation for the brute-force oracle.
// ---------------------------------------------------------------------------

// Cancels one negative-cost residual cycle if any exists (Bellman-Ford
// detection); returns false when the plan admits none.
bool cancel_negative_cycle(std::vector<Rational>& mass, const CostMatrix& cost,
                           const CapacityMatrix& capacity, int rows, int cols) {
  struct ResidualArc {
    int from, to;
    Rational cost;
    int cell;       // row-major cell index
    bool forward;   // true: room left below capacity; false: mass removable
  };
  std::vector<ResidualArc> arcs;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const int cell = i * cols + j;
      if (mass[cell] < capacity.at(i, j)) {
        arcs.push_back({i, rows + j, cost.at(i, j), cell, true});
      }
      if (mass[cell] > 0) {
        arcs.push_back({rows + j, i, -cost.at(i, j), cell, false});
      }
    }
  }

  const int num_nodes = rows + cols;
  std::vector<Rational> dist(num_nodes, Rational(0));
  std::vector<int> pred_arc(num_nodes, -1);
  int touched = -1;
  for (int round = 0; round <= num_nodes; ++round) {
    touched = -1;
    for (size_t a = 0; a < arcs.size(); ++a) {
      const auto& arc = arcs[a];
      if (dist[arc.from] + arc.cost < dist[arc.to]) {
        dist[arc.to] = dist[arc.from] + arc.cost;
        pred_arc[arc.to] = static_cast<int>(a);
        touched = arc.to;
      }
    }
    if (touched < 0) return false;
  }

  // A node relaxed in the extra round sits on or behind a negative cycle;
  // walking the predecessor chain num_nodes steps lands inside it.
  int node = touched;
  for (int k = 0; k < num_nodes; ++k) node = arcs[pred_arc[node]].from;
  std::vector<int> cycle;
  for (int x = node;;) {
    cycle.push_back(pred_arc[x]);
    x = arcs[pred_arc[x]].from;
    if (x == node) break;
  }

  Rational amount(-1);
  for (const int a : cycle) {
    const auto& arc = arcs[a];
    const Rational residual = arc.forward
                                  ? capacity.mass_bounds()[arc.cell] - mass[arc.cell]
                                  : mass[arc.cell];
    if (amount < 0 || residual < amount) amount = residual;
  }
  assert(amount > 0);
  for (const int a : cycle) {
    const auto& arc = arcs[a];
    if (arc.forward) {
      mass[arc.cell] += amount;
    } else {
      mass[arc.cell] -= amount;
    }
  }
  return true;
}

}  // namespace

bool feasibility_exists(const DiscreteMarginal& f, const DiscreteMarginal& g,
                        const CapacityMatrix& capacity) {
  if (capacity.rows() != f.size() || capacity.cols() != g.size()) {
    throw std::invalid_argument("problem shapes disagree");
  }
  if (f.total_mass() != g.total_mass()) {
    throw UnbalancedError("marginals carry different total mass");
  }
  return bipartite_max_flow(f, g, capacity).value == f.total_mass();
}

SolveResult solve(const DiscreteMarginal& f, const DiscreteMarginal& g,
                  const CostMatrix& cost, const CapacityMatrix& capacity) {
  check_problem_shapes(f, g, cost, capacity);
  if (f.total_mass() != g.total_mass()) {
    throw UnbalancedError("marginals carry different total mass");
  }

  auto simplex = make_simplex<Rational>(f, g, cost, capacity);
  if (simplex.run() == SimplexStatus::kInfeasible) {
    throw InfeasibleError("no plan satisfies the marginals under the capacity");
  }
  if (!simplex.certify_optimal()) {
    throw std::logic_error("simplex terminated without a dual certificate");
  }

  if (simplex.count_free_cells() > f.size() + g.size() - 1) {
    throw std::logic_error("simplex solution is not basic");
  }

  TransportPlan plan(f.grid(), g.grid(), simplex.real_flows());
  Rational value = total_cost(plan, cost);
  return SolveResult{std::move(plan), std::move(value), true,
                     simplex.iterations(), "simplex"};
}

SolveResult brute_force_solve(const DiscreteMarginal& f,
                              const DiscreteMarginal& g,
                              const CostMatrix& cost,
                              const CapacityMatrix& capacity) {
  check_problem_shapes(f, g, cost, capacity);
  if (f.total_mass() != g.total_mass()) {
    throw UnbalancedError("marginals carry different total mass");
  }
  const long long cells = static_cast<long long>(f.size()) * g.size();
  if (cells > 36) {
    throw InstanceTooLargeError("brute-force oracle is guarded to 36 cell pairs");
  }

  auto flow = bipartite_max_flow(f, g, capacity);
  if (flow.value != f.total_mass()) {
    throw InfeasibleError("no plan satisfies the marginals under the capacity");
  }

  TransportPlan plan(f.grid(), g.grid(), std::move(flow.plan_mass));
  std::int64_t operations = 0;
  for (;;) {
    // Drain improving four-cell exchanges first; they are the workhorse.
    for (;;) {
      const ExchangeScan scan = scan_exchanges(plan, cost, capacity);
      if (!scan.witness) break;
      plan = apply_exchange(plan, *scan.witness, capacity);
      ++operations;
      if (operations > 1000000) {
        throw std::logic_error("exchange oracle failed to terminate");
      }
    }
    // Capacity-blocked improvements need longer residual cycles.
    std::vector<Rational> mass = plan.mass();
    if (!cancel_negative_cycle(mass, cost, capacity, f.size(), g.size())) {
      break;
    }
    plan = TransportPlan(f.grid(), g.grid(), std::move(mass));
    ++operations;
  }

  Rational value = total_cost(plan, cost);
  return SolveResult{std::move(plan), std::move(value), false, operations,
                     "exchange_oracle"};
}

FloatSolveResult solve_float64(const DiscreteMarginal& f,
                               const DiscreteMarginal& g,
                               const CostMatrix& cost,
                               const CapacityMatrix& capacity) {
  check_problem_shapes(f, g, cost, capacity);
  if (f.total_mass() != g.total_mass()) {
    throw UnbalancedError("marginals carry different total mass");
  }

  auto simplex = make_simplex<double>(f, g, cost, capacity);
  if (simplex.run() == SimplexStatus::kInfeasible) {
    throw InfeasibleError("no plan satisfies the marginals under the capacity");
  }

  FloatSolveResult result;
  result.mass = simplex.real_flows();
  result.iterations = simplex.iterations();
  result.value = 0.0;
  for (int k = 0; k < cost.rows() * cost.cols(); ++k) {
    result.value += to_double(cost.entries()[k]) * result.mass[k];
  }
  return result;
}

}  // namespace ccot
