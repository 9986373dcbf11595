#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "ustar/grid.hpp"
#include "ustar/types.hpp"
#include "ustar/vocab.hpp"

namespace ustar {

enum class InputFormat { Jsonl, Csv };

// Thrown for malformed or out-of-range input lines; carries the 1-based
// line number.
struct ParseError : std::runtime_error {
    ParseError(size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_no(line) {}
    size_t line_no;
};

// Parses one serialized record. JSONL fields: ts, lat?, lon?, user,
// text|keywords. CSV columns: ts,lat,lon,user,text (lat/lon may be empty).
RawRecord parse_record(const std::string& line, InputFormat format, size_t line_no);

// Reads a whole stream file. Skips blank lines; the CSV header row is
// consumed when present.
std::vector<RawRecord> read_stream(const std::string& path, InputFormat format);
InputFormat detect_format(const std::string& path);

// Keyword frequency filtering mode. Batch assumes a prior counting pass over
// the corpus; Stream filters against counts observed so far.
enum class FreqMode { Batch, Stream };

struct IngestStats {
    uint64_t input = 0;
    uint64_t emitted = 0;
    uint64_t dropped_no_keywords = 0;
    uint64_t dropped_out_of_bbox = 0;
    uint64_t out_of_order = 0;
};

// Turns raw records into unit-id records, assigning vocabulary ids as new
// units appear. Hour ids 0..time_bins-1 are preregistered so |T| is fixed.
class Ingestor {
public:
    Ingestor(Vocabulary& vocab, const GridSpec& grid, uint64_t min_freq, FreqMode mode,
             uint32_t time_bins = 24);

    // Counting pass for FreqMode::Batch; records keyword occurrences only.
    void count_keywords(const RawRecord& raw);

    // Returns the ingested record, or nullopt when dropped (no surviving
    // keywords, or geotag outside the grid). Statistics are accumulated.
    std::optional<Record> preprocess(const RawRecord& raw);

    const IngestStats& stats() const { return stats_; }
    Vocabulary& vocab() { return vocab_; }
    const GridSpec& grid() const { return grid_; }

private:
    std::vector<std::string> keyword_tokens(const RawRecord& raw) const;

    Vocabulary& vocab_;
    GridSpec grid_;
    uint64_t min_freq_;
    FreqMode mode_;
    IngestStats stats_;
    uint64_t next_arrival_ = 0;
    int64_t last_ts_ = INT64_MIN;
};

}  // namespace ustar
