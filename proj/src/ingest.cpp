#include "ustar/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "ustar/tokenize.hpp"

namespace ustar {

namespace {

void validate(RawRecord& r, size_t line_no) {
    if (r.ts <= 0) throw ParseError(line_no, "timestamp must be positive");
    if (r.lat.has_value() != r.lon.has_value())
        throw ParseError(line_no, "lat and lon must both be present or both absent");
    if (r.lat) {
        if (*r.lat < -90.0 || *r.lat > 90.0)
            throw ParseError(line_no, "latitude out of range");
        if (*r.lon < -180.0 || *r.lon > 180.0)
            throw ParseError(line_no, "longitude out of range");
    }
    if (r.user.empty()) throw ParseError(line_no, "missing user id");
    if (r.text.empty() && r.keywords.empty())
        throw ParseError(line_no, "record has neither text nor keywords");
}

RawRecord parse_jsonl(const std::string& line, size_t line_no) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(line_no, std::string("bad json: ") + e.what());
    }
    RawRecord r;
    try {
        r.ts = j.at("ts").get<int64_t>();
        if (j.contains("lat") && !j["lat"].is_null()) r.lat = j["lat"].get<double>();
        if (j.contains("lon") && !j["lon"].is_null()) r.lon = j["lon"].get<double>();
        if (j.contains("user")) {
            if (j["user"].is_string())
                r.user = j["user"].get<std::string>();
            else
                r.user = j["user"].dump();
        }
        if (j.contains("text")) r.text = j["text"].get<std::string>();
        if (j.contains("keywords")) r.keywords = j["keywords"].get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(line_no, std::string("bad field: ") + e.what());
    }
    validate(r, line_no);
    return r;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cols;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (c == '"') {
            if (quoted && i + 1 < line.size() && line[i + 1] == '"') {
                cur.push_back('"');
                ++i;
            } else {
                quoted = !quoted;
            }
        } else if (c == ',' && !quoted) {
            cols.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    cols.push_back(std::move(cur));
    return cols;
}

RawRecord parse_csv(const std::string& line, size_t line_no) {
    auto cols = split_csv(line);
    if (cols.size() < 5) throw ParseError(line_no, "expected 5 csv columns (ts,lat,lon,user,text)");
    RawRecord r;
    try {
        r.ts = std::stoll(cols[0]);
    } catch (...) {
        throw ParseError(line_no, "bad timestamp '" + cols[0] + "'");
    }
    try {
        if (!cols[1].empty()) r.lat = std::stod(cols[1]);
        if (!cols[2].empty()) r.lon = std::stod(cols[2]);
    } catch (...) {
        throw ParseError(line_no, "bad coordinate");
    }
    r.user = cols[3];
    r.text = cols[4];
    validate(r, line_no);
    return r;
}

}  // namespace

RawRecord parse_record(const std::string& line, InputFormat format, size_t line_no) {
    return format == InputFormat::Jsonl ? parse_jsonl(line, line_no) : parse_csv(line, line_no);
}

InputFormat detect_format(const std::string& path) {
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return InputFormat::Csv;
    return InputFormat::Jsonl;
}

std::vector<RawRecord> read_stream(const std::string& path, InputFormat format) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open stream file " + path);
    std::vector<RawRecord> out;
    std::string line;
    size_t line_no = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first && format == InputFormat::Csv && line.rfind("ts,", 0) == 0) {
            first = false;
            continue;  // header row
        }
        first = false;
        out.push_back(parse_record(line, format, line_no));
    }
    return out;
}

Ingestor::Ingestor(Vocabulary& vocab, const GridSpec& grid, uint64_t min_freq, FreqMode mode,
                   uint32_t time_bins)
    : vocab_(vocab), grid_(grid), min_freq_(min_freq), mode_(mode) {
    for (uint32_t h = 0; h < time_bins; ++h) vocab_.intern(Modality::Hour, std::to_string(h));
}

std::vector<std::string> Ingestor::keyword_tokens(const RawRecord& raw) const {
    if (!raw.keywords.empty()) {
        std::vector<std::string> toks;
        toks.reserve(raw.keywords.size());
        for (const auto& k : raw.keywords)
            for (auto& t : tokenize(k)) toks.push_back(std::move(t));
        return toks;
    }
    return tokenize(raw.text);
}

void Ingestor::count_keywords(const RawRecord& raw) {
    for (const auto& t : keyword_tokens(raw)) vocab_.bump_freq(Modality::Keyword, t);
}

std::optional<Record> Ingestor::preprocess(const RawRecord& raw) {
    ++stats_.input;
    if (raw.ts < last_ts_) {
        if (++stats_.out_of_order <= 10)
            std::cerr << "warning: out-of-order timestamp " << raw.ts << " after " << last_ts_
                      << " (accepted)\n";
    } else {
        last_ts_ = raw.ts;
    }

    Record rec;
    rec.ts = raw.ts;
    rec.hour = hour_of(raw.ts, grid_.tz_offset_min);
    vocab_.bump_freq(Modality::Hour, std::to_string(rec.hour));

    if (raw.has_geo()) {
        auto cell = locate(*raw.lat, *raw.lon, grid_);
        if (!cell) {
            ++stats_.dropped_out_of_bbox;
            return std::nullopt;
        }
        std::string cell_s = std::to_string(*cell);
        rec.region = vocab_.intern(Modality::Region, cell_s);
        vocab_.bump_freq(Modality::Region, cell_s);
    }

    auto toks = keyword_tokens(raw);
    std::vector<UnitIdx> kws;
    for (const auto& t : toks) {
        uint64_t f = mode_ == FreqMode::Stream ? vocab_.bump_freq(Modality::Keyword, t)
                                               : vocab_.freq(Modality::Keyword, t);
        if (f < min_freq_) continue;
        kws.push_back(vocab_.intern(Modality::Keyword, t));
    }
    std::sort(kws.begin(), kws.end());
    kws.erase(std::unique(kws.begin(), kws.end()), kws.end());
    if (kws.empty()) {
        ++stats_.dropped_no_keywords;
        return std::nullopt;
    }
    rec.keywords = std::move(kws);

    rec.user = vocab_.intern(Modality::User, raw.user);
    vocab_.bump_freq(Modality::User, raw.user);
    rec.arrival_index = next_arrival_++;
    ++stats_.emitted;
    return rec;
}

}  // namespace ustar
