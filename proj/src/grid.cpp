#include "ustar/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace ustar {

namespace {
constexpr double kPi = 3.14159265358979323846;
// Forgives float residue when an extent is an exact multiple of the cell size.
constexpr double kCeilSlack = 1e-9;
}  // namespace

double GridSpec::meters_per_deg_lon() const {
    const double mid_lat = 0.5 * (lat_min + lat_max);
    return kMetersPerDegLat * std::cos(mid_lat * kPi / 180.0);
}

std::pair<double, double> GridSpec::cell_center(uint32_t cell) const {
    const int32_t row = static_cast<int32_t>(cell) / n_cols;
    const int32_t col = static_cast<int32_t>(cell) % n_cols;
    const double lat = lat_min + (row + 0.5) * cell_m / kMetersPerDegLat;
    const double lon = lon_min + (col + 0.5) * cell_m / meters_per_deg_lon();
    return {lat, lon};
}

GridSpec make_grid(double lat_min, double lat_max, double lon_min, double lon_max,
                   double cell_m, int32_t tz_offset_min) {
    if (!(lat_min < lat_max) || !(lon_min < lon_max))
        throw std::invalid_argument("make_grid: degenerate bbox");
    if (!(cell_m > 0)) throw std::invalid_argument("make_grid: cell size must be positive");

    GridSpec g;
    g.lat_min = lat_min;
    g.lat_max = lat_max;
    g.lon_min = lon_min;
    g.lon_max = lon_max;
    g.cell_m = cell_m;
    g.tz_offset_min = tz_offset_min;

    const double ns_m = (lat_max - lat_min) * kMetersPerDegLat;
    const double ew_m = (lon_max - lon_min) * g.meters_per_deg_lon();
    g.n_rows = static_cast<int32_t>(std::ceil(ns_m / cell_m - kCeilSlack));
    g.n_cols = static_cast<int32_t>(std::ceil(ew_m / cell_m - kCeilSlack));
    if (g.n_rows < 1) g.n_rows = 1;
    if (g.n_cols < 1) g.n_cols = 1;
    return g;
}

std::optional<uint32_t> locate(double lat, double lon, const GridSpec& grid) {
    if (lat < grid.lat_min || lat > grid.lat_max || lon < grid.lon_min || lon > grid.lon_max)
        return std::nullopt;
    int64_t row = static_cast<int64_t>(std::floor((lat - grid.lat_min) * kMetersPerDegLat /
                                                  grid.cell_m));
    int64_t col = static_cast<int64_t>(std::floor((lon - grid.lon_min) *
                                                  grid.meters_per_deg_lon() / grid.cell_m));
    if (row >= grid.n_rows) row = grid.n_rows - 1;  // max-edge clamp
    if (col >= grid.n_cols) col = grid.n_cols - 1;
    if (row < 0) row = 0;
    if (col < 0) col = 0;
    return static_cast<uint32_t>(row * grid.n_cols + col);
}

uint32_t hour_of(int64_t ts_utc, int32_t tz_offset_min) {
    int64_t local = ts_utc + int64_t(tz_offset_min) * 60;
    int64_t sec = local % 86400;
    if (sec < 0) sec += 86400;
    return static_cast<uint32_t>(sec / 3600);
}

}  // namespace ustar
