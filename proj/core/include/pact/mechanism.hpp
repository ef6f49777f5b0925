#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pact/dist.hpp"
#include "pact/grids.hpp"

namespace pact {

/// Payment per output grid point. Values must be finite; on a finite grid
/// this also makes the wage bounded above.
class WageSchedule {
public:
    explicit WageSchedule(std::vector<double> pay);

    std::size_t size() const { return pay_.size(); }
    double operator[](std::size_t i) const { return pay_[i]; }
    std::span<const double> values() const { return pay_; }

    bool operator==(const WageSchedule&) const = default;

private:
    std::vector<double> pay_;
};

/// Direct-revelation menu: per type a wage schedule, a recommended output
/// distribution, and the promised utility level.
class Mechanism {
public:
    Mechanism(OutputGrid output_grid, TypeGrid type_grid, std::vector<WageSchedule> wages,
              std::vector<Dist> recommendations, std::vector<double> promised_utilities);

    const OutputGrid& output_grid() const { return output_grid_; }
    const TypeGrid& type_grid() const { return type_grid_; }
    std::size_t num_types() const { return type_grid_.size(); }

    const WageSchedule& wage(std::size_t type_index) const { return wages_[type_index]; }
    const Dist& recommendation(std::size_t type_index) const { return recommendations_[type_index]; }
    double promised_utility(std::size_t type_index) const { return promised_[type_index]; }
    std::span<const double> promised_utilities() const { return promised_; }

    // Copy-with-replacement helpers (mechanisms are immutable values).
    Mechanism with_wage(std::size_t type_index, WageSchedule w) const;
    Mechanism with_recommendation(std::size_t type_index, Dist rec) const;
    Mechanism with_promised_utilities(std::vector<double> promised) const;

private:
    OutputGrid output_grid_;
    TypeGrid type_grid_;
    std::vector<WageSchedule> wages_;
    std::vector<Dist> recommendations_;
    std::vector<double> promised_;
};

/// Recommended continuation distribution for every (true type, report) pair.
/// The diagonal always mirrors the mechanism's on-path recommendations;
/// off-diagonal cells may be left unset until populated.
class GenSchedule {
public:
    /// Diagonal-only schedule; off-diagonal cells unset.
    explicit GenSchedule(const Mechanism& mech);
    /// Full schedule; `cells[i][j]` is the recommendation for true type i
    /// reporting j. Diagonal must agree with the mechanism.
    GenSchedule(const Mechanism& mech, std::vector<std::vector<Dist>> cells);

    std::size_t num_types() const { return cells_.size(); }
    bool complete() const;

    /// Throws if the cell was never populated.
    const Dist& at(std::size_t true_type, std::size_t report) const;
    void set(std::size_t true_type, std::size_t report, Dist d);

private:
    std::vector<std::vector<std::optional<Dist>>> cells_;
};

}  // namespace pact
