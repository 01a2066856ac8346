#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "qubopart/qubo.hpp"

namespace qubopart {

enum class ScheduleKind { geometric, linear };

struct Schedule {
    ScheduleKind kind = ScheduleKind::geometric;
    double t_start = 1.0;
    double t_end = 1e-3;
    std::int64_t steps = 1000;
};

/// Temperature at a given Monte Carlo step. Geometric schedules interpolate
/// t_start * (t_end/t_start)^(step/(steps-1)); linear schedules interpolate
/// affinely. A single-step schedule returns t_start.
double schedule_temperature(const Schedule& schedule, std::int64_t step);

/// Linear inequality sum(coeff_i * x_i) >= bound, enforced as a hinge kept
/// outside the quadratic model: violation cost is
/// lambda * max(0, bound - sum(coeff_i * x_i)).
struct InequalityConstraint {
    std::vector<std::pair<int, int>> terms;  // (variable index, coefficient)
    int bound = 1;
    double lambda = 1.0;
};

/// QUBO energy plus all hinge penalties, from scratch.
double evaluate_total(const QuboModel& model, std::span<const InequalityConstraint> constraints,
                      std::span<const std::uint8_t> bits);

/// One-hot block structure: variable (block, slot) lives at flat index
/// block * block_size + slot.
struct OneHotBlocks {
    int num_blocks = 0;
    int block_size = 1;

    int var(int block, int slot) const { return block * block_size + slot; }
    int num_vars() const { return num_blocks * block_size; }
};

/// BitState plus incrementally maintained hinge activities, tracking the
/// total energy (QUBO + hinges) the annealer optimizes. Single-owner mutable;
/// the shared model and constraints stay read-only.
class AnnealState {
  public:
    AnnealState(const QuboModel& model, std::span<const InequalityConstraint> constraints,
                std::span<const std::uint8_t> bits);

    const QuboModel& model() const { return *model_; }
    const BitState& bit_state() const { return state_; }
    std::span<const std::uint8_t> bits() const { return state_.bits(); }
    int num_vars() const { return state_.num_vars(); }
    double total_energy() const { return state_.energy() + hinge_total_; }
    double hinge_total() const { return hinge_total_; }

    /// Total energy change of flipping variable i (QUBO delta + hinge delta).
    double flip_total_delta(int i) const;

    /// Total energy change of the pair move that clears set bit u and sets
    /// clear bit v. Requires bits[u] == 1 and bits[v] == 0.
    double pair_move_delta(int u, int v) const;

    void apply(int i);
    void apply_pair(int u, int v);

  private:
    double hinge_delta(int i, bool setting) const;

    const QuboModel* model_;
    BitState state_;
    std::vector<int> bound_;
    std::vector<double> lambda_;
    std::vector<long long> activity_;
    std::vector<std::size_t> var_cons_start_;
    std::vector<std::pair<int, int>> var_cons_;  // (constraint index, coefficient)
    double hinge_total_ = 0.0;
};

struct StepOutcome {
    /// Flipped variable (flip steps) or applied candidate id (structured
    /// steps, id = block * block_size + target slot); empty if every
    /// candidate was rejected.
    std::optional<int> accepted;
    double new_offset = 0.0;
};

using Rng = std::mt19937_64;

/// Evaluates the flip of every variable, accepts each independently with
/// probability min(1, exp(-(delta_i - offset)/temperature)), applies one
/// accepted flip chosen uniformly at random and resets the offset to zero.
/// If nothing is accepted the offset grows by offset_increment.
StepOutcome parallel_trial_step(AnnealState& state, double temperature, double offset,
                                double offset_increment, Rng& rng);

/// Plain Metropolis baseline: one uniformly chosen variable, no offset.
StepOutcome sequential_sa_step(AnnealState& state, double temperature, Rng& rng);

/// Parallel-trial step over pair moves that reassign one block to another
/// slot, preserving exactly-one-hot feasibility by construction.
/// current_slot[b] must hold the set slot of block b and is updated in place.
StepOutcome structured_onehot_step(AnnealState& state, const OneHotBlocks& blocks,
                                   std::span<int> current_slot, double temperature, double offset,
                                   double offset_increment, Rng& rng);

enum class InitMode { shared, random_per_restart };
enum class OneHotMode { penalty, structured_moves };
enum class EngineKind { parallel_trial, sequential_sa };

struct AnnealParams {
    int restarts = 1;
    std::uint64_t seed = 0;
    InitMode initial_state_mode = InitMode::shared;
    /// Additive escape growth per fully rejected step; negative selects the
    /// automatic scale 0.1 * mean |nonzero quadratic coefficient|.
    double offset_increment = -1.0;
    /// Consulted only when a block structure is passed to anneal(): structured
    /// pair moves by default, single flips when set to penalty (the caller is
    /// then expected to have expanded the one-hot penalty into the model).
    OneHotMode one_hot_mode = OneHotMode::structured_moves;
    std::optional<double> time_limit_sec;
    EngineKind engine = EngineKind::parallel_trial;
    int threads = 1;
    /// Record per-step offset and best-energy traces for restart 0.
    bool record_traces = false;
};

struct RestartStats {
    double final_energy = 0.0;
    double best_energy = 0.0;
    std::int64_t accepted_flips = 0;
};

struct AnnealResult {
    std::vector<std::uint8_t> best_bits;
    double best_total_energy = 0.0;
    std::vector<RestartStats> per_restart;
    std::vector<double> offset_trace;
    std::vector<double> best_trace;
    bool time_limit_hit = false;
};

/// Runs `restarts` independent annealing runs over the given schedule and
/// returns the best state by total energy (ties broken toward the lower
/// restart index). Deterministic for a fixed seed: every restart derives its
/// own RNG stream from (seed, restart index), so the thread count does not
/// change the result. In shared mode all restarts start from one arbitrary
/// state drawn from the seed; otherwise each restart draws its own.
/// Structured one-hot mode requires `blocks` and a feasible initial state
/// (enforced by construction here).
AnnealResult anneal(const QuboModel& model, std::span<const InequalityConstraint> constraints,
                    const Schedule& schedule, const AnnealParams& params,
                    const OneHotBlocks* blocks = nullptr);

/// Scale-free schedule suggestion: t_start is the largest |total flip delta|
/// seen over 100 random flips on the probe state, t_end = 1e-3 * t_start.
Schedule suggest_schedule(const QuboModel& model, std::span<const InequalityConstraint> constraints,
                          std::span<const std::uint8_t> probe_bits, std::int64_t steps,
                          std::uint64_t seed);

double default_offset_increment(const QuboModel& model);

}  // namespace qubopart
