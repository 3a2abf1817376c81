#pragma once

#include "eprime/flat.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace eprime {

enum class SolveMode { First, All, Optimize };

struct SolverConfig {
    SolveMode mode = SolveMode::First;
    std::uint64_t solution_cap = 0; ///< All: stop after this many (0 = no cap)
    std::uint64_t node_limit = 0;   ///< 0 = unlimited
    double time_limit = 0;          ///< seconds, 0 = unlimited
};

enum class SolveStatus { Sat, Unsat, Optimal, Unknown };

[[nodiscard]] const char* to_string(SolveStatus s);

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t backtracks = 0;
    double seconds = 0;
    bool limit_reached = false;
};

using Assignment = std::vector<std::int64_t>;

struct SearchOutcome {
    SolveStatus status = SolveStatus::Unknown;
    Assignment assignment; ///< value per FlatCSP variable (last solution found)
    std::optional<std::int64_t> objective;
    std::vector<Assignment> solutions; ///< All mode, in search order
    SearchStats stats;
    std::vector<std::string> notes;
};

/// Current domains with a trail. Each domain is a sorted list of disjoint ranges.
class SearchState {
public:
    explicit SearchState(const FlatCSP& csp);

    [[nodiscard]] std::size_t size() const { return doms_.size(); }
    [[nodiscard]] std::int64_t min(int v) const { return doms_[idx(v)].front().lo; }
    [[nodiscard]] std::int64_t max(int v) const { return doms_[idx(v)].back().hi; }
    [[nodiscard]] bool fixed(int v) const { return min(v) == max(v); }
    [[nodiscard]] bool empty(int v) const { return doms_[idx(v)].empty(); }
    [[nodiscard]] bool contains(int v, std::int64_t x) const;
    /// Number of values, saturating at UINT64_MAX.
    [[nodiscard]] std::uint64_t count(int v) const;
    [[nodiscard]] const std::vector<Range>& ranges(int v) const { return doms_[idx(v)]; }
    [[nodiscard]] IntDomain domain(int v) const { return IntDomain::from_ranges(doms_[idx(v)]); }

    // Narrowing operations; false when the domain becomes empty.
    bool set_min(int v, std::int64_t x);
    bool set_max(int v, std::int64_t x);
    bool remove(int v, std::int64_t x);
    bool assign(int v, std::int64_t x);
    bool restrict(int v, const IntDomain& allowed);
    bool restrict_values(int v, std::vector<std::int64_t> sorted_values);

    void push_level();
    void pop_level();
    [[nodiscard]] std::size_t level() const { return marks_.size(); }

    /// Order-sensitive hash of every domain.
    [[nodiscard]] std::uint64_t checksum() const;

    /// Variables changed since the last call.
    std::vector<int> take_changed();

private:
    std::vector<std::vector<Range>> doms_;
    std::vector<std::pair<int, std::vector<Range>>> trail_;
    std::vector<std::pair<std::size_t, std::uint64_t>> marks_; ///< trail size and level stamp
    std::vector<std::uint64_t> saved_at_; ///< stamp of the level that last saved each var
    std::uint64_t stamp_ = 0;
    std::vector<int> changed_;
    std::vector<char> is_changed_;

    static std::size_t idx(int v) { return static_cast<std::size_t>(v); }
    bool update(int v, std::vector<Range> next);
};

/// Runs every constraint's propagator to a fixpoint. Returns false on conflict.
[[nodiscard]] bool propagate(SearchState& state, const FlatCSP& csp);

[[nodiscard]] SearchOutcome solve(const FlatCSP& csp, const SolverConfig& config);
[[nodiscard]] SearchOutcome optimize(const FlatCSP& csp, const SolverConfig& config);

/// True iff the total assignment satisfies every variable domain and constraint.
[[nodiscard]] bool verify_solution(const FlatCSP& csp, const Assignment& assignment);

} // namespace eprime
