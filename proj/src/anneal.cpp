#include "qubopart/anneal.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

namespace qubopart {

namespace {

void check_schedule(const Schedule& s) {
    if (!(s.t_start >= s.t_end) || !(s.t_end > 0.0)) {
        throw std::invalid_argument("schedule requires t_start >= t_end > 0");
    }
    if (s.steps < 1) throw std::invalid_argument("schedule requires steps >= 1");
}

Rng make_restart_rng(std::uint64_t seed, std::uint32_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      stream};
    return Rng(seq);
}

constexpr std::uint32_t kInitStream = 0xFFFFFFFFu;

double hinge(double lambda, int bound, long long activity) {
    const double gap = static_cast<double>(bound) - static_cast<double>(activity);
    return gap > 0.0 ? lambda * gap : 0.0;
}

}  // namespace

double schedule_temperature(const Schedule& schedule, std::int64_t step) {
    check_schedule(schedule);
    if (step < 0 || step >= schedule.steps) {
        throw std::out_of_range("schedule step out of range");
    }
    if (schedule.steps == 1) return schedule.t_start;
    const double frac = static_cast<double>(step) / static_cast<double>(schedule.steps - 1);
    if (schedule.kind == ScheduleKind::geometric) {
        return schedule.t_start * std::pow(schedule.t_end / schedule.t_start, frac);
    }
    return schedule.t_start + (schedule.t_end - schedule.t_start) * frac;
}

double evaluate_total(const QuboModel& model, std::span<const InequalityConstraint> constraints,
                      std::span<const std::uint8_t> bits) {
    double total = energy(model, bits);
    for (const auto& c : constraints) {
        long long activity = 0;
        for (const auto& [var, coeff] : c.terms) {
            if (bits[static_cast<std::size_t>(var)]) activity += coeff;
        }
        total += hinge(c.lambda, c.bound, activity);
    }
    return total;
}

AnnealState::AnnealState(const QuboModel& model, std::span<const InequalityConstraint> constraints,
                         std::span<const std::uint8_t> bits)
    : model_(&model), state_(init_state(model, bits)) {
    const int n = model.num_vars();
    std::vector<std::vector<std::pair<int, int>>> per_var(static_cast<std::size_t>(n));
    bound_.reserve(constraints.size());
    lambda_.reserve(constraints.size());
    activity_.reserve(constraints.size());
    for (std::size_t c = 0; c < constraints.size(); ++c) {
        const auto& con = constraints[c];
        if (con.lambda < 0.0) throw std::invalid_argument("constraint lambda must be >= 0");
        long long activity = 0;
        for (const auto& [var, coeff] : con.terms) {
            if (var < 0 || var >= n) throw std::out_of_range("constraint variable out of range");
            per_var[static_cast<std::size_t>(var)].push_back({static_cast<int>(c), coeff});
            if (bits[static_cast<std::size_t>(var)]) activity += coeff;
        }
        bound_.push_back(con.bound);
        lambda_.push_back(con.lambda);
        activity_.push_back(activity);
        hinge_total_ += hinge(con.lambda, con.bound, activity);
    }
    var_cons_start_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 0; i < n; ++i) {
        var_cons_start_[static_cast<std::size_t>(i) + 1] =
            var_cons_start_[static_cast<std::size_t>(i)] + per_var[static_cast<std::size_t>(i)].size();
    }
    var_cons_.reserve(var_cons_start_.back());
    for (int i = 0; i < n; ++i) {
        for (const auto& e : per_var[static_cast<std::size_t>(i)]) var_cons_.push_back(e);
    }
}

double AnnealState::hinge_delta(int i, bool setting) const {
    double d = 0.0;
    const auto a = var_cons_start_[static_cast<std::size_t>(i)];
    const auto b = var_cons_start_[static_cast<std::size_t>(i) + 1];
    for (std::size_t k = a; k < b; ++k) {
        const auto [c, coeff] = var_cons_[k];
        const long long act = activity_[static_cast<std::size_t>(c)];
        const long long next = setting ? act + coeff : act - coeff;
        d += hinge(lambda_[static_cast<std::size_t>(c)], bound_[static_cast<std::size_t>(c)], next) -
             hinge(lambda_[static_cast<std::size_t>(c)], bound_[static_cast<std::size_t>(c)], act);
    }
    return d;
}

double AnnealState::flip_total_delta(int i) const {
    return flip_delta(state_, *model_, i) + hinge_delta(i, !state_.bit(i));
}

double AnnealState::pair_move_delta(int u, int v) const {
    // Clear u, then set v with u already cleared. The QUBO part reads from
    // the current fields; the cross coupling corrects the second flip.
    double d = -state_.field(u) + state_.field(v) - 2.0 * model_->pair_coeff(u, v);
    // Hinge part. u and v may share a constraint, so combine net changes.
    const auto au = var_cons_start_[static_cast<std::size_t>(u)];
    const auto bu = var_cons_start_[static_cast<std::size_t>(u) + 1];
    const auto av = var_cons_start_[static_cast<std::size_t>(v)];
    const auto bv = var_cons_start_[static_cast<std::size_t>(v) + 1];
    for (std::size_t k = au; k < bu; ++k) {
        const auto [c, coeff] = var_cons_[k];
        long long net = -static_cast<long long>(coeff);
        for (std::size_t l = av; l < bv; ++l) {
            if (var_cons_[l].first == c) net += var_cons_[l].second;
        }
        const long long act = activity_[static_cast<std::size_t>(c)];
        d += hinge(lambda_[static_cast<std::size_t>(c)], bound_[static_cast<std::size_t>(c)], act + net) -
             hinge(lambda_[static_cast<std::size_t>(c)], bound_[static_cast<std::size_t>(c)], act);
    }
    for (std::size_t l = av; l < bv; ++l) {
        const auto [c, coeff] = var_cons_[l];
        bool shared = false;
        for (std::size_t k = au; k < bu; ++k) {
            if (var_cons_[k].first == c) shared = true;
        }
        if (shared) continue;
        const long long act = activity_[static_cast<std::size_t>(c)];
        d += hinge(lambda_[static_cast<std::size_t>(c)], bound_[static_cast<std::size_t>(c)],
                   act + coeff) -
             hinge(lambda_[static_cast<std::size_t>(c)], bound_[static_cast<std::size_t>(c)], act);
    }
    return d;
}

void AnnealState::apply(int i) {
    const bool setting = !state_.bit(i);
    const auto a = var_cons_start_[static_cast<std::size_t>(i)];
    const auto b = var_cons_start_[static_cast<std::size_t>(i) + 1];
    for (std::size_t k = a; k < b; ++k) {
        const auto [c, coeff] = var_cons_[k];
        auto& act = activity_[static_cast<std::size_t>(c)];
        const long long next = setting ? act + coeff : act - coeff;
        hinge_total_ +=
            hinge(lambda_[static_cast<std::size_t>(c)], bound_[static_cast<std::size_t>(c)], next) -
            hinge(lambda_[static_cast<std::size_t>(c)], bound_[static_cast<std::size_t>(c)], act);
        act = next;
    }
    apply_flip(state_, *model_, i, flip_delta(state_, *model_, i));
}

void AnnealState::apply_pair(int u, int v) {
    apply(u);
    apply(v);
}

StepOutcome parallel_trial_step(AnnealState& state, double temperature, double offset,
                                double offset_increment, Rng& rng) {
    if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be > 0");
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const int n = state.num_vars();
    int chosen = -1;
    int accepted_count = 0;
    for (int i = 0; i < n; ++i) {
        const double shifted = state.flip_total_delta(i) - offset;
        const double p = shifted <= 0.0 ? 1.0 : std::exp(-shifted / temperature);
        if (unif(rng) < p) {
            ++accepted_count;
            if (accepted_count == 1 ||
                std::uniform_int_distribution<int>(0, accepted_count - 1)(rng) == 0) {
                chosen = i;
            }
        }
    }
    if (chosen < 0) return {std::nullopt, offset + offset_increment};
    state.apply(chosen);
    return {chosen, 0.0};
}

StepOutcome sequential_sa_step(AnnealState& state, double temperature, Rng& rng) {
    if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be > 0");
    const int i = std::uniform_int_distribution<int>(0, state.num_vars() - 1)(rng);
    const double delta = state.flip_total_delta(i);
    bool accept = delta <= 0.0;
    if (!accept) {
        accept = std::uniform_real_distribution<double>(0.0, 1.0)(rng) < std::exp(-delta / temperature);
    }
    if (!accept) return {std::nullopt, 0.0};
    state.apply(i);
    return {i, 0.0};
}

StepOutcome structured_onehot_step(AnnealState& state, const OneHotBlocks& blocks,
                                   std::span<int> current_slot, double temperature, double offset,
                                   double offset_increment, Rng& rng) {
    if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be > 0");
    const auto bits = state.bits();
    for (int b = 0; b < blocks.num_blocks; ++b) {
        int set_count = 0;
        for (int t = 0; t < blocks.block_size; ++t) {
            set_count += bits[static_cast<std::size_t>(blocks.var(b, t))];
        }
        if (set_count != 1 || !bits[static_cast<std::size_t>(blocks.var(b, current_slot[static_cast<std::size_t>(b)]))]) {
            throw std::invalid_argument("structured move requires an exactly one-hot state");
        }
    }
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int chosen_block = -1;
    int chosen_slot = -1;
    int accepted_count = 0;
    for (int b = 0; b < blocks.num_blocks; ++b) {
        const int cur = current_slot[static_cast<std::size_t>(b)];
        const int u = blocks.var(b, cur);
        for (int t = 0; t < blocks.block_size; ++t) {
            if (t == cur) continue;
            const double shifted = state.pair_move_delta(u, blocks.var(b, t)) - offset;
            const double p = shifted <= 0.0 ? 1.0 : std::exp(-shifted / temperature);
            if (unif(rng) < p) {
                ++accepted_count;
                if (accepted_count == 1 ||
                    std::uniform_int_distribution<int>(0, accepted_count - 1)(rng) == 0) {
                    chosen_block = b;
                    chosen_slot = t;
                }
            }
        }
    }
    if (chosen_block < 0) return {std::nullopt, offset + offset_increment};
    auto& cur = current_slot[static_cast<std::size_t>(chosen_block)];
    state.apply_pair(blocks.var(chosen_block, cur), blocks.var(chosen_block, chosen_slot));
    cur = chosen_slot;
    return {blocks.var(chosen_block, chosen_slot), 0.0};
}

namespace {

std::vector<std::uint8_t> random_bits(int n, Rng& rng) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
    std::uniform_int_distribution<int> coin(0, 1);
    for (auto& b : bits) b = static_cast<std::uint8_t>(coin(rng));
    return bits;
}

std::vector<std::uint8_t> random_onehot(const OneHotBlocks& blocks, Rng& rng) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(blocks.num_vars()), 0);
    std::uniform_int_distribution<int> slot(0, blocks.block_size - 1);
    for (int b = 0; b < blocks.num_blocks; ++b) {
        bits[static_cast<std::size_t>(blocks.var(b, slot(rng)))] = 1;
    }
    return bits;
}

struct RestartOutput {
    RestartStats stats;
    std::vector<std::uint8_t> best_bits;
    bool hit_time_limit = false;
};

}  // namespace

AnnealResult anneal(const QuboModel& model, std::span<const InequalityConstraint> constraints,
                    const Schedule& schedule, const AnnealParams& params,
                    const OneHotBlocks* blocks) {
    check_schedule(schedule);
    if (params.restarts < 1) throw std::invalid_argument("restarts must be >= 1");
    if (params.threads < 1) throw std::invalid_argument("threads must be >= 1");
    const bool structured = blocks != nullptr && params.one_hot_mode == OneHotMode::structured_moves;
    if (structured && blocks->num_vars() != model.num_vars()) {
        throw std::invalid_argument("block structure does not cover the model variables");
    }
    const double offset_inc = params.offset_increment >= 0.0 ? params.offset_increment
                                                             : default_offset_increment(model);

    std::optional<std::chrono::steady_clock::time_point> deadline;
    if (params.time_limit_sec) {
        deadline = std::chrono::steady_clock::now() +
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                       std::chrono::duration<double>(*params.time_limit_sec));
    }

    std::vector<std::uint8_t> shared_initial;
    if (params.initial_state_mode == InitMode::shared) {
        Rng init_rng = make_restart_rng(params.seed, kInitStream);
        shared_initial = structured ? random_onehot(*blocks, init_rng)
                                    : random_bits(model.num_vars(), init_rng);
    }

    AnnealResult result;
    std::vector<RestartOutput> outputs(static_cast<std::size_t>(params.restarts));

    auto run_restart = [&](int r) {
        Rng rng = make_restart_rng(params.seed, static_cast<std::uint32_t>(r));
        std::vector<std::uint8_t> bits =
            params.initial_state_mode == InitMode::shared
                ? shared_initial
                : (structured ? random_onehot(*blocks, rng) : random_bits(model.num_vars(), rng));
        AnnealState st(model, constraints, bits);
        std::vector<int> slots;
        if (structured) {
            slots.resize(static_cast<std::size_t>(blocks->num_blocks), -1);
            for (int b = 0; b < blocks->num_blocks; ++b) {
                for (int t = 0; t < blocks->block_size; ++t) {
                    if (bits[static_cast<std::size_t>(blocks->var(b, t))]) {
                        slots[static_cast<std::size_t>(b)] = t;
                    }
                }
            }
        }

        RestartOutput out;
        out.best_bits.assign(st.bits().begin(), st.bits().end());
        double best = st.total_energy();
        double offset = 0.0;
        std::int64_t accepted = 0;
        const bool tracing = params.record_traces && r == 0;

        for (std::int64_t step = 0; step < schedule.steps; ++step) {
            if (deadline && (step & 31) == 0 && std::chrono::steady_clock::now() >= *deadline) {
                out.hit_time_limit = true;
                break;
            }
            const double t = schedule_temperature(schedule, step);
            StepOutcome outcome;
            if (structured) {
                outcome = structured_onehot_step(st, *blocks, slots, t, offset, offset_inc, rng);
            } else if (params.engine == EngineKind::sequential_sa) {
                outcome = sequential_sa_step(st, t, rng);
            } else {
                outcome = parallel_trial_step(st, t, offset, offset_inc, rng);
            }
            offset = outcome.new_offset;
            if (outcome.accepted) {
                ++accepted;
                if (st.total_energy() < best) {
                    best = st.total_energy();
                    out.best_bits.assign(st.bits().begin(), st.bits().end());
                }
            }
            if (tracing) {
                result.offset_trace.push_back(offset);
                result.best_trace.push_back(best);
            }
        }
        out.stats = {st.total_energy(), best, accepted};
        outputs[static_cast<std::size_t>(r)] = std::move(out);
    };

    if (params.threads == 1 || params.restarts == 1) {
        for (int r = 0; r < params.restarts; ++r) run_restart(r);
    } else {
        // Only restart 0's worker touches the trace buffers, and the RNG
        // streams make the outcome independent of thread scheduling.
        const int workers = std::min(params.threads, params.restarts);
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        std::atomic<int> next{0};
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&]() {
                for (int r = next.fetch_add(1); r < params.restarts; r = next.fetch_add(1)) {
                    run_restart(r);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    result.best_total_energy = std::numeric_limits<double>::infinity();
    for (int r = 0; r < params.restarts; ++r) {
        const auto& out = outputs[static_cast<std::size_t>(r)];
        result.per_restart.push_back(out.stats);
        result.time_limit_hit = result.time_limit_hit || out.hit_time_limit;
        if (out.stats.best_energy < result.best_total_energy) {
            result.best_total_energy = out.stats.best_energy;
            result.best_bits = out.best_bits;
        }
    }
    return result;
}

Schedule suggest_schedule(const QuboModel& model, std::span<const InequalityConstraint> constraints,
                          std::span<const std::uint8_t> probe_bits, std::int64_t steps,
                          std::uint64_t seed) {
    AnnealState st(model, constraints, probe_bits);
    Rng rng = make_restart_rng(seed, 0xABCDEFu);
    std::uniform_int_distribution<int> pick(0, std::max(0, model.num_vars() - 1));
    double max_abs = 0.0;
    for (int k = 0; k < 100 && model.num_vars() > 0; ++k) {
        max_abs = std::max(max_abs, std::abs(st.flip_total_delta(pick(rng))));
    }
    Schedule s;
    s.kind = ScheduleKind::geometric;
    s.t_start = max_abs > 0.0 ? max_abs : 1.0;
    s.t_end = 1e-3 * s.t_start;
    s.steps = std::max<std::int64_t>(1, steps);
    return s;
}

double default_offset_increment(const QuboModel& model) {
    return 0.1 * model.coefficient_scale();
}

}  // namespace qubopart
