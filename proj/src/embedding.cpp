#include "ustar/embedding.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <stdexcept>

static_assert(std::endian::native == std::endian::little,
              "snapshot format assumes a little-endian host");

namespace ustar {

void init_vector(std::span<float> v, Rng& rng) {
    const double half = 0.5 / static_cast<double>(v.size());
    for (auto& x : v) x = static_cast<float>(rng.uniform01() * 2.0 * half - half);
}

float cosine(std::span<const float> a, std::span<const float> b) {
    float dot = 0, na = 0, nb = 0;
    const size_t n = a.size();
    for (size_t i = 0; i < n; ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0f || nb == 0.0f) return 0.0f;
    float c = dot / (std::sqrt(na) * std::sqrt(nb));
    if (c > 1.0f) c = 1.0f;
    if (c < -1.0f) c = -1.0f;
    return c;
}

EmbeddingStore::EmbeddingStore(uint32_t k, uint64_t init_seed) : k_(k), init_seed_(init_seed) {
    if (k < 1) throw std::invalid_argument("embedding dimension must be >= 1");
}

void EmbeddingStore::grow(Modality m, uint32_t new_count) {
    uint32_t& cur = counts_[modality_index(m)];
    if (new_count < cur) throw std::invalid_argument("embedding table cannot shrink");
    if (new_count == cur) return;
    auto& data = data_[modality_index(m)];
    data.resize(size_t(new_count) * k_);
    for (uint32_t i = cur; i < new_count; ++i) {
        // Per-row derived stream: the same (modality, row) always gets the
        // same initial vector regardless of growth batching.
        Rng row_rng(splitmix64(init_seed_ ^ (uint64_t(modality_index(m)) << 32 | i)));
        init_vector(row(m, i), row_rng);
    }
    cur = new_count;
}

bool EmbeddingStore::all_finite() const {
    for (Modality m : kModalities)
        for (float x : raw(m))
            if (!std::isfinite(x)) return false;
    return true;
}

namespace {

struct Writer {
    FILE* f;
    void put(const void* p, size_t n) {
        if (std::fwrite(p, 1, n, f) != n) throw std::runtime_error("snapshot: write failed");
    }
    template <class T>
    void put(T v) {
        put(&v, sizeof v);
    }
};

struct Reader {
    FILE* f;
    size_t offset = 0;
    void get(void* p, size_t n) {
        if (std::fread(p, 1, n, f) != n)
            throw std::runtime_error("snapshot: truncated at byte offset " +
                                     std::to_string(offset));
        offset += n;
    }
    template <class T>
    T get() {
        T v;
        get(&v, sizeof v);
        return v;
    }
};

constexpr char kMagic[4] = {'U', 'S', 'T', 'R'};
constexpr uint32_t kVersion = 1;

}  // namespace

void save_snapshot(const Snapshot& snap, const std::string& path) {
    if (!snap.tables.all_finite())
        throw std::runtime_error("snapshot: refusing to save non-finite embeddings");
    FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("snapshot: cannot write " + path);
    Writer w{f};
    try {
        w.put(kMagic, 4);
        w.put(kVersion);
        w.put(snap.tables.dim());
        for (Modality m : kModalities) {
            w.put(snap.tables.count(m));
            auto raw = snap.tables.raw(m);
            w.put(raw.data(), raw.size_bytes());
        }
        w.put(snap.grid.lat_min);
        w.put(snap.grid.lat_max);
        w.put(snap.grid.lon_min);
        w.put(snap.grid.lon_max);
        w.put(snap.grid.cell_m);
        w.put(snap.grid.tz_offset_min);
        w.put(snap.step_ts);
    } catch (...) {
        std::fclose(f);
        throw;
    }
    if (std::fclose(f) != 0) throw std::runtime_error("snapshot: close failed for " + path);
}

Snapshot load_snapshot(const std::string& path) {
    FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw std::runtime_error("snapshot: cannot open " + path);
    Reader r{f};
    try {
        char magic[4];
        r.get(magic, 4);
        if (std::memcmp(magic, kMagic, 4) != 0)
            throw std::runtime_error("snapshot: bad magic at byte offset 0");
        uint32_t version = r.get<uint32_t>();
        if (version != kVersion)
            throw std::runtime_error("snapshot: unsupported version " + std::to_string(version) +
                                     " at byte offset 4");
        uint32_t k = r.get<uint32_t>();
        Snapshot snap{0, EmbeddingStore(k, 0), GridSpec{}};
        for (Modality m : kModalities) {
            uint32_t count = r.get<uint32_t>();
            snap.tables.grow(m, count);
            if (count > 0)
                r.get(snap.tables.row(m, 0).data(), size_t(count) * k * sizeof(float));
        }
        snap.grid.lat_min = r.get<double>();
        snap.grid.lat_max = r.get<double>();
        snap.grid.lon_min = r.get<double>();
        snap.grid.lon_max = r.get<double>();
        snap.grid.cell_m = r.get<double>();
        snap.grid.tz_offset_min = r.get<int32_t>();
        snap.step_ts = r.get<int64_t>();
        const double ns = (snap.grid.lat_max - snap.grid.lat_min) * kMetersPerDegLat;
        const double ew = (snap.grid.lon_max - snap.grid.lon_min) * snap.grid.meters_per_deg_lon();
        if (snap.grid.cell_m > 0 && ns > 0) {
            snap.grid.n_rows = static_cast<int32_t>(std::ceil(ns / snap.grid.cell_m - 1e-9));
            snap.grid.n_cols = static_cast<int32_t>(std::ceil(ew / snap.grid.cell_m - 1e-9));
        }
        std::fclose(f);
        return snap;
    } catch (...) {
        std::fclose(f);
        throw;
    }
}

}  // namespace ustar
