#include "pact/mechanism.hpp"

#include <cmath>

namespace pact {

WageSchedule::WageSchedule(std::vector<double> pay) : pay_(std::move(pay)) {
    if (pay_.empty()) throw Error("WageSchedule: empty payment vector");
    for (double p : pay_)
        if (!std::isfinite(p)) throw Error("WageSchedule: non-finite payment");
}

Mechanism::Mechanism(OutputGrid output_grid, TypeGrid type_grid, std::vector<WageSchedule> wages,
                     std::vector<Dist> recommendations, std::vector<double> promised_utilities)
    : output_grid_(std::move(output_grid)),
      type_grid_(std::move(type_grid)),
      wages_(std::move(wages)),
      recommendations_(std::move(recommendations)),
      promised_(std::move(promised_utilities)) {
    const std::size_t m = type_grid_.size();
    if (wages_.size() != m || recommendations_.size() != m || promised_.size() != m)
        throw Error("Mechanism: one entry per type grid point required");
    for (const auto& w : wages_)
        if (w.size() != output_grid_.size()) throw Error("Mechanism: wage length does not match output grid");
    for (const auto& r : recommendations_)
        if (r.size() != output_grid_.size()) throw Error("Mechanism: recommendation length does not match output grid");
    for (double v : promised_)
        if (!std::isfinite(v)) throw Error("Mechanism: promised utility must be finite");
}

Mechanism Mechanism::with_wage(std::size_t type_index, WageSchedule w) const {
    Mechanism copy = *this;
    if (type_index >= copy.wages_.size()) throw Error("with_wage: type index out of range");
    if (w.size() != copy.output_grid_.size()) throw Error("with_wage: wage length mismatch");
    copy.wages_[type_index] = std::move(w);
    return copy;
}

Mechanism Mechanism::with_recommendation(std::size_t type_index, Dist rec) const {
    Mechanism copy = *this;
    if (type_index >= copy.recommendations_.size()) throw Error("with_recommendation: type index out of range");
    if (rec.size() != copy.output_grid_.size()) throw Error("with_recommendation: length mismatch");
    copy.recommendations_[type_index] = std::move(rec);
    return copy;
}

Mechanism Mechanism::with_promised_utilities(std::vector<double> promised) const {
    return Mechanism(output_grid_, type_grid_, wages_, recommendations_, std::move(promised));
}

GenSchedule::GenSchedule(const Mechanism& mech) {
    const std::size_t m = mech.num_types();
    cells_.assign(m, std::vector<std::optional<Dist>>(m));
    for (std::size_t i = 0; i < m; ++i) cells_[i][i] = mech.recommendation(i);
}

GenSchedule::GenSchedule(const Mechanism& mech, std::vector<std::vector<Dist>> cells) {
    const std::size_t m = mech.num_types();
    if (cells.size() != m) throw Error("GenSchedule: row count must equal type count");
    cells_.assign(m, std::vector<std::optional<Dist>>(m));
    for (std::size_t i = 0; i < m; ++i) {
        if (cells[i].size() != m) throw Error("GenSchedule: column count must equal type count");
        for (std::size_t j = 0; j < m; ++j) cells_[i][j] = std::move(cells[i][j]);
    }
    for (std::size_t i = 0; i < m; ++i) {
        const Dist& diag = *cells_[i][i];
        const Dist& rec = mech.recommendation(i);
        for (std::size_t k = 0; k < rec.size(); ++k)
            if (std::fabs(diag[k] - rec[k]) > kMassTolerance)
                throw Error("GenSchedule: diagonal must equal the mechanism recommendation");
    }
}

bool GenSchedule::complete() const {
    for (const auto& row : cells_)
        for (const auto& c : row)
            if (!c.has_value()) return false;
    return true;
}

const Dist& GenSchedule::at(std::size_t true_type, std::size_t report) const {
    if (true_type >= cells_.size() || report >= cells_.size())
        throw Error("GenSchedule::at: index out of range");
    const auto& cell = cells_[true_type][report];
    if (!cell.has_value())
        throw Error("GenSchedule: off-diagonal cell unset; populate via best responses (populate_schedule)");
    return *cell;
}

void GenSchedule::set(std::size_t true_type, std::size_t report, Dist d) {
    if (true_type >= cells_.size() || report >= cells_.size())
        throw Error("GenSchedule::set: index out of range");
    cells_[true_type][report] = std::move(d);
}

}  // namespace pact
