#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ustar {

// The four unit modalities embedded in the shared space.
enum class Modality : uint8_t { Region = 0, Hour = 1, Keyword = 2, User = 3 };

constexpr std::array<Modality, 4> kModalities = {Modality::Region, Modality::Hour,
                                                 Modality::Keyword, Modality::User};

constexpr size_t modality_index(Modality m) { return static_cast<size_t>(m); }

inline const char* modality_name(Modality m) {
    switch (m) {
        case Modality::Region: return "region";
        case Modality::Hour: return "hour";
        case Modality::Keyword: return "keyword";
        case Modality::User: return "user";
    }
    return "?";
}

std::optional<Modality> modality_from_name(const std::string& s);

// Dense per-modality unit index, assigned by the vocabulary.
using UnitIdx = uint32_t;

struct UnitRef {
    Modality mod;
    UnitIdx idx;

    bool operator==(const UnitRef&) const = default;
};

// One parsed stream item, prior to discretization and id assignment.
// `keywords` is set when the input already carries a token list; otherwise
// `text` holds the raw message.
struct RawRecord {
    int64_t ts = 0;
    std::optional<double> lat;
    std::optional<double> lon;
    std::string user;
    std::string text;
    std::vector<std::string> keywords;

    bool has_geo() const { return lat.has_value(); }
};

// A fully ingested record: all attributes mapped to dense unit ids.
// `region` is absent exactly for records without a geolocation.
struct Record {
    int64_t ts = 0;
    UnitIdx hour = 0;
    std::optional<UnitIdx> region;
    std::vector<UnitIdx> keywords;  // sorted, unique, non-empty
    UnitIdx user = 0;
    uint64_t arrival_index = 0;
};

// Number of embedded units the record contributes pairs for. The location
// slot is always counted; for a non-geotagged record it participates as a
// virtual unit (see intra_agreement).
inline size_t unit_count(const Record& r) { return 3 + r.keywords.size(); }

}  // namespace ustar
