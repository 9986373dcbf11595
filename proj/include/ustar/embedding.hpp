#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ustar/grid.hpp"
#include "ustar/rng.hpp"
#include "ustar/types.hpp"

namespace ustar {

// Fills a vector with components uniform in [-0.5/k, +0.5/k].
void init_vector(std::span<float> v, Rng& rng);

// Cosine similarity in [-1, 1]; defined as 0 when either norm is 0 so that
// never-trained units score neutrally.
float cosine(std::span<const float> a, std::span<const float> b);

// The four dense embedding tables sharing one dimension k. Rows are
// appended as the vocabulary grows; existing rows are never moved or
// reinitialized. Row initialization is keyed by (modality, row index), so a
// row's initial value does not depend on when it was added.
class EmbeddingStore {
public:
    EmbeddingStore(uint32_t k, uint64_t init_seed);

    uint32_t dim() const { return k_; }
    uint32_t count(Modality m) const { return counts_[modality_index(m)]; }

    std::span<float> row(Modality m, UnitIdx idx) {
        return {data_[modality_index(m)].data() + size_t(idx) * k_, k_};
    }
    std::span<const float> row(Modality m, UnitIdx idx) const {
        return {data_[modality_index(m)].data() + size_t(idx) * k_, k_};
    }
    std::span<const float> raw(Modality m) const { return data_[modality_index(m)]; }

    // Appends freshly initialized rows up to new_count. Throws on shrink.
    void grow(Modality m, uint32_t new_count);

    bool all_finite() const;

private:
    uint32_t k_;
    uint64_t init_seed_;
    std::array<std::vector<float>, 4> data_;
    std::array<uint32_t, 4> counts_{0, 0, 0, 0};
};

// A persistable model state: the tables plus the grid they were trained
// against. step_ts records the stream time the snapshot was taken at.
struct Snapshot {
    int64_t step_ts = 0;
    EmbeddingStore tables;
    GridSpec grid;
};

// Binary format, little-endian: magic "USTR", u32 version=1, u32 k, then per
// modality in order (region, hour, keyword, user) a u32 row count followed by
// count*k f32 values; then the grid as 4 f64 bbox values, f64 cell_m, i32 tz
// offset; then i64 step_ts. Refuses to write non-finite values.
void save_snapshot(const Snapshot& snap, const std::string& path);
// Throws std::runtime_error naming the byte offset on truncation or a bad
// magic/version.
Snapshot load_snapshot(const std::string& path);

}  // namespace ustar
