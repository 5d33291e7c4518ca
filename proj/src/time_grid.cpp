#include "dtpar/time_grid.hpp"

#include "dtpar/errors.hpp"

namespace dtpar {

TimeGrid::TimeGrid(double t_final, int coarse_intervals, int fine_per_coarse)
    : t_final_(t_final),
      coarse_intervals_(coarse_intervals),
      fine_per_coarse_(fine_per_coarse) {
    if (t_final <= 0.0)
        throw DomainError("TimeGrid: t_final must be positive");
    if (coarse_intervals < 1)
        throw DomainError("TimeGrid: need at least one coarse interval");
    if (fine_per_coarse < 1)
        throw DomainError("TimeGrid: need at least one fine step per coarse interval");
    n_fine_ = coarse_intervals_ * fine_per_coarse_;
    h_ = t_final_ / n_fine_;
    H_ = t_final_ / coarse_intervals_;
}

int TimeGrid::fine_index_of_coarse(int n) const {
    if (n < 0 || n > coarse_intervals_)
        throw DomainError("TimeGrid: coarse index out of range");
    return fine_per_coarse_ * n;
}

double TimeGrid::fine_time(int m) const {
    if (m < 0 || m > n_fine_)
        throw DomainError("TimeGrid: fine index out of range");
    return m * h_;
}

std::pair<int, int> TimeGrid::interval_fine_range(int n) const {
    if (n < 0 || n >= coarse_intervals_)
        throw DomainError("TimeGrid: interval index out of range");
    return {fine_per_coarse_ * n, fine_per_coarse_ * (n + 1)};
}

}  // namespace dtpar
