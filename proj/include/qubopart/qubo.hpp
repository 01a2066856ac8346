#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace qubopart {

struct QuadTerm {
    int i = 0;
    int j = 0;
    double coeff = 0.0;
};

struct LinTerm {
    int i = 0;
    double coeff = 0.0;
};

/// Quadratic binary model over n variables in {0,1}.
///
/// Energy convention:
///   E(x) = offset + sum_i lin[i]*x_i + sum_{i<j} 2*quad[i][j]*x_i*x_j
///
/// Quadratic coefficients are stored once per unordered pair and the bilinear
/// form counts each pair twice, so the stored matrix is the upper half of a
/// full symmetric matrix. Diagonal quadratic entries are folded into the
/// linear terms at build time (x*x == x for binary x). Immutable after
/// construction and safe to share across threads.
class QuboModel {
  public:
    QuboModel() = default;

    int num_vars() const { return n_; }
    double offset() const { return offset_; }
    double linear(int i) const { return lin_[static_cast<std::size_t>(i)]; }

    /// Unique quadratic terms with i < j, sorted lexicographically.
    const std::vector<QuadTerm>& pairs() const { return pairs_; }

    /// Neighbors of variable i as (j, coeff) sorted by j; both directions of
    /// every stored pair appear here.
    std::span<const std::pair<int, double>> neighbors(int i) const {
        const auto a = row_start_[static_cast<std::size_t>(i)];
        const auto b = row_start_[static_cast<std::size_t>(i) + 1];
        return {row_entries_.data() + a, b - a};
    }

    /// Stored coefficient for the unordered pair {i, j}; 0 if absent.
    double pair_coeff(int i, int j) const;

    /// Mean absolute value over nonzero quadratic coefficients; falls back to
    /// the linear terms (then 1.0) for models without quadratic structure.
    double coefficient_scale() const;

    friend QuboModel build_model(int n, std::span<const QuadTerm> quadratic_terms,
                                 std::span<const LinTerm> linear_terms, double offset);

  private:
    int n_ = 0;
    double offset_ = 0.0;
    std::vector<double> lin_;
    std::vector<QuadTerm> pairs_;
    std::vector<std::size_t> row_start_;
    std::vector<std::pair<int, double>> row_entries_;
};

/// Assembles a QuboModel. Duplicate (i, j) entries are summed, (i, i) entries
/// are folded into the linear terms. Throws std::out_of_range on a bad index
/// and std::invalid_argument on a non-finite coefficient.
QuboModel build_model(int n, std::span<const QuadTerm> quadratic_terms,
                      std::span<const LinTerm> linear_terms, double offset = 0.0);

/// Full energy evaluation from scratch.
double energy(const QuboModel& model, std::span<const std::uint8_t> bits);

/// Variable assignment with tracked energy and per-variable local fields.
///
/// fields[i] = lin[i] + sum_j 2*quad[i][j]*bits[j], i.e. the energy change of
/// setting bit i from 0 to 1 with the rest of the state held fixed. A flip of
/// bit i therefore costs (1 - 2*bits[i]) * fields[i].
class BitState {
  public:
    BitState() = default;

    std::span<const std::uint8_t> bits() const { return bits_; }
    bool bit(int i) const { return bits_[static_cast<std::size_t>(i)] != 0; }
    double energy() const { return energy_; }
    double field(int i) const { return fields_[static_cast<std::size_t>(i)]; }
    int num_vars() const { return static_cast<int>(bits_.size()); }

    friend BitState init_state(const QuboModel& model, std::span<const std::uint8_t> bits);
    friend void apply_flip(BitState& state, const QuboModel& model, int i, double delta);

  private:
    std::vector<std::uint8_t> bits_;
    std::vector<double> fields_;
    double energy_ = 0.0;
};

/// Computes fields and energy from scratch. Throws std::invalid_argument on a
/// length mismatch.
BitState init_state(const QuboModel& model, std::span<const std::uint8_t> bits);

/// Exact energy change of flipping bit i, read from the tracked fields.
double flip_delta(const BitState& state, const QuboModel& model, int i);

/// Applies a flip whose delta was previously obtained from flip_delta:
/// toggles the bit, updates neighbor fields incrementally and adds delta to
/// the tracked energy.
void apply_flip(BitState& state, const QuboModel& model, int i, double delta);

/// Spin model over {-1,+1} variables:
///   E(s) = -sum_{i<j} 2*coupling[i][j]*s_i*s_j - sum_i bias[i]*s_i
/// Couplings are stored once per unordered pair (zero diagonal).
struct IsingModel {
    int n = 0;
    std::vector<QuadTerm> couplings;
    std::vector<double> biases;

    double energy(std::span<const int> spins) const;
};

/// Converts via b_i = (s_i + 1) / 2 so that the QUBO energy of the binary
/// image equals the Ising energy of every spin configuration exactly.
QuboModel ising_to_qubo(const IsingModel& ising);

}  // namespace qubopart
