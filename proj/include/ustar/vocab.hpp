#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ustar/types.hpp"

namespace ustar {

// Bidirectional string<->id map per modality plus occurrence counts.
// Ids are dense in [0, size(m)) and assigned in first-seen order.
//
// Keyword frequencies are also tracked for strings that have no id yet
// (min-frequency filtering needs counts before a token is admitted).
class Vocabulary {
public:
    UnitIdx intern(Modality m, std::string_view s);
    std::optional<UnitIdx> lookup(Modality m, std::string_view s) const;
    const std::string& name(Modality m, UnitIdx idx) const;
    size_t size(Modality m) const { return names_[modality_index(m)].size(); }

    // Raw occurrence count keyed by string; used for keyword frequency
    // filtering. Returns the new total.
    uint64_t bump_freq(Modality m, std::string_view s, uint64_t n = 1);
    uint64_t freq(Modality m, std::string_view s) const;
    uint64_t freq(Modality m, UnitIdx idx) const;

    // Sidecar format: one "modality<TAB>id<TAB>string<TAB>count" per line.
    void save(const std::string& path) const;
    static Vocabulary load(const std::string& path);

private:
    std::array<std::unordered_map<std::string, UnitIdx>, 4> ids_;
    std::array<std::vector<std::string>, 4> names_;
    std::array<std::unordered_map<std::string, uint64_t>, 4> freq_;
};

}  // namespace ustar
