#include "qubopart/qubo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qubopart {

namespace {

void check_index(int i, int n, const char* what) {
    if (i < 0 || i >= n) {
        throw std::out_of_range(std::string(what) + " index " + std::to_string(i) +
                                " out of range [0, " + std::to_string(n) + ")");
    }
}

void check_finite(double c, const char* what) {
    if (!std::isfinite(c)) {
        throw std::invalid_argument(std::string("non-finite ") + what + " coefficient");
    }
}

}  // namespace

QuboModel build_model(int n, std::span<const QuadTerm> quadratic_terms,
                      std::span<const LinTerm> linear_terms, double offset) {
    if (n < 0) throw std::invalid_argument("negative variable count");
    check_finite(offset, "offset");

    QuboModel m;
    m.n_ = n;
    m.offset_ = offset;
    m.lin_.assign(static_cast<std::size_t>(n), 0.0);

    for (const auto& t : linear_terms) {
        check_index(t.i, n, "linear");
        check_finite(t.coeff, "linear");
        m.lin_[static_cast<std::size_t>(t.i)] += t.coeff;
    }

    std::vector<QuadTerm> normalized;
    normalized.reserve(quadratic_terms.size());
    for (const auto& t : quadratic_terms) {
        check_index(t.i, n, "quadratic");
        check_index(t.j, n, "quadratic");
        check_finite(t.coeff, "quadratic");
        if (t.i == t.j) {
            // x*x == x: diagonal entries live in the linear part.
            m.lin_[static_cast<std::size_t>(t.i)] += t.coeff;
        } else {
            normalized.push_back({std::min(t.i, t.j), std::max(t.i, t.j), t.coeff});
        }
    }
    std::sort(normalized.begin(), normalized.end(), [](const QuadTerm& a, const QuadTerm& b) {
        return std::pair(a.i, a.j) < std::pair(b.i, b.j);
    });
    for (const auto& t : normalized) {
        if (!m.pairs_.empty() && m.pairs_.back().i == t.i && m.pairs_.back().j == t.j) {
            m.pairs_.back().coeff += t.coeff;
        } else {
            m.pairs_.push_back(t);
        }
    }

    std::vector<std::size_t> degree(static_cast<std::size_t>(n), 0);
    for (const auto& t : m.pairs_) {
        ++degree[static_cast<std::size_t>(t.i)];
        ++degree[static_cast<std::size_t>(t.j)];
    }
    m.row_start_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 0; i < n; ++i) {
        m.row_start_[static_cast<std::size_t>(i) + 1] =
            m.row_start_[static_cast<std::size_t>(i)] + degree[static_cast<std::size_t>(i)];
    }
    m.row_entries_.resize(m.pairs_.size() * 2);
    std::vector<std::size_t> cursor(m.row_start_.begin(), m.row_start_.end() - 1);
    for (const auto& t : m.pairs_) {
        m.row_entries_[cursor[static_cast<std::size_t>(t.i)]++] = {t.j, t.coeff};
        m.row_entries_[cursor[static_cast<std::size_t>(t.j)]++] = {t.i, t.coeff};
    }
    // pair_coeff binary-searches rows, keep them sorted by neighbor index.
    for (int i = 0; i < n; ++i) {
        auto a = m.row_entries_.begin() + static_cast<std::ptrdiff_t>(m.row_start_[static_cast<std::size_t>(i)]);
        auto b = m.row_entries_.begin() + static_cast<std::ptrdiff_t>(m.row_start_[static_cast<std::size_t>(i) + 1]);
        std::sort(a, b);
    }
    return m;
}

double QuboModel::pair_coeff(int i, int j) const {
    check_index(i, n_, "pair");
    check_index(j, n_, "pair");
    if (i == j) return 0.0;
    auto row = neighbors(i);
    auto it = std::lower_bound(row.begin(), row.end(), j,
                               [](const std::pair<int, double>& e, int key) { return e.first < key; });
    if (it != row.end() && it->first == j) return it->second;
    return 0.0;
}

double QuboModel::coefficient_scale() const {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& t : pairs_) {
        if (t.coeff != 0.0) {
            sum += std::abs(t.coeff);
            ++count;
        }
    }
    if (count == 0) {
        for (double h : lin_) {
            if (h != 0.0) {
                sum += std::abs(h);
                ++count;
            }
        }
    }
    return count > 0 ? sum / static_cast<double>(count) : 1.0;
}

double energy(const QuboModel& model, std::span<const std::uint8_t> bits) {
    if (static_cast<int>(bits.size()) != model.num_vars()) {
        throw std::invalid_argument("bit vector length does not match variable count");
    }
    double e = model.offset();
    for (int i = 0; i < model.num_vars(); ++i) {
        if (bits[static_cast<std::size_t>(i)]) e += model.linear(i);
    }
    for (const auto& t : model.pairs()) {
        if (bits[static_cast<std::size_t>(t.i)] && bits[static_cast<std::size_t>(t.j)]) {
            e += 2.0 * t.coeff;
        }
    }
    return e;
}

BitState init_state(const QuboModel& model, std::span<const std::uint8_t> bits) {
    if (static_cast<int>(bits.size()) != model.num_vars()) {
        throw std::invalid_argument("bit vector length does not match variable count");
    }
    BitState s;
    s.bits_.assign(bits.begin(), bits.end());
    s.fields_.assign(bits.size(), 0.0);
    for (int i = 0; i < model.num_vars(); ++i) {
        double f = model.linear(i);
        for (const auto& [j, w] : model.neighbors(i)) {
            if (bits[static_cast<std::size_t>(j)]) f += 2.0 * w;
        }
        s.fields_[static_cast<std::size_t>(i)] = f;
    }
    s.energy_ = energy(model, bits);
    return s;
}

double flip_delta(const BitState& state, const QuboModel& model, int i) {
    check_index(i, model.num_vars(), "flip");
    return (state.bit(i) ? -1.0 : 1.0) * state.field(i);
}

void apply_flip(BitState& state, const QuboModel& model, int i, double delta) {
    check_index(i, model.num_vars(), "flip");
    auto& b = state.bits_[static_cast<std::size_t>(i)];
    b ^= 1u;
    const double sign = b ? 2.0 : -2.0;
    for (const auto& [j, w] : model.neighbors(i)) {
        state.fields_[static_cast<std::size_t>(j)] += sign * w;
    }
    state.energy_ += delta;
}

double IsingModel::energy(std::span<const int> spins) const {
    if (static_cast<int>(spins.size()) != n) {
        throw std::invalid_argument("spin vector length does not match spin count");
    }
    double e = 0.0;
    for (const auto& t : couplings) {
        e -= 2.0 * t.coeff * spins[static_cast<std::size_t>(t.i)] * spins[static_cast<std::size_t>(t.j)];
    }
    for (int i = 0; i < n; ++i) {
        e -= biases[static_cast<std::size_t>(i)] * spins[static_cast<std::size_t>(i)];
    }
    return e;
}

QuboModel ising_to_qubo(const IsingModel& ising) {
    // s = 2b - 1 applied to E(s) = -sum_{i<j} 2*w*s_i*s_j - sum h_i*s_i:
    //   pair (i,j): -8*w*b_i*b_j + 4*w*(b_i + b_j) - 2*w
    //   bias i:     -2*h_i*b_i + h_i
    std::vector<QuadTerm> quad;
    quad.reserve(ising.couplings.size());
    std::vector<double> lin(static_cast<std::size_t>(ising.n), 0.0);
    double offset = 0.0;
    for (const auto& t : ising.couplings) {
        quad.push_back({t.i, t.j, -4.0 * t.coeff});
        lin[static_cast<std::size_t>(t.i)] += 4.0 * t.coeff;
        lin[static_cast<std::size_t>(t.j)] += 4.0 * t.coeff;
        offset -= 2.0 * t.coeff;
    }
    for (int i = 0; i < ising.n; ++i) {
        lin[static_cast<std::size_t>(i)] -= 2.0 * ising.biases[static_cast<std::size_t>(i)];
        offset += ising.biases[static_cast<std::size_t>(i)];
    }
    std::vector<LinTerm> lin_terms;
    lin_terms.reserve(lin.size());
    for (int i = 0; i < ising.n; ++i) {
        if (lin[static_cast<std::size_t>(i)] != 0.0) {
            lin_terms.push_back({i, lin[static_cast<std::size_t>(i)]});
        }
    }
    return build_model(ising.n, quad, lin_terms, offset);
}

}  // namespace qubopart
