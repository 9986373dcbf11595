#pragma once

#include <cstdint>
#include <optional>
#include <utility>

namespace ustar {

// Equirectangular meters-per-degree of latitude. Longitude is scaled by
// cos(mid-latitude of the bounding box); exact geodesy is irrelevant at
// city-grid cell sizes.
constexpr double kMetersPerDegLat = 111320.0;

// A fixed equal-size cell grid over a bounding box. Cell ids are
// row * n_cols + col, row 0 at lat_min.
struct GridSpec {
    double lat_min = 0, lat_max = 0, lon_min = 0, lon_max = 0;
    double cell_m = 300.0;
    int32_t n_rows = 0, n_cols = 0;
    int32_t tz_offset_min = 0;

    int64_t cell_count() const { return int64_t(n_rows) * n_cols; }
    double meters_per_deg_lon() const;
    // Center of a cell, for diagnostics and inverse-consistency checks.
    std::pair<double, double> cell_center(uint32_t cell) const;
};

// Throws std::invalid_argument on a degenerate bbox or non-positive cell size.
GridSpec make_grid(double lat_min, double lat_max, double lon_min, double lon_max,
                   double cell_m, int32_t tz_offset_min = 0);

// Cell id for a point, or nullopt when outside the bbox. Points on the max
// edges clamp into the last row/column.
std::optional<uint32_t> locate(double lat, double lon, const GridSpec& grid);

// Hour-of-day bin (0-23) of a UTC timestamp shifted by the timezone offset.
uint32_t hour_of(int64_t ts_utc, int32_t tz_offset_min);

}  // namespace ustar
