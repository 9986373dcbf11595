#include "ustar/vocab.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ustar {

std::optional<Modality> modality_from_name(const std::string& s) {
    for (Modality m : kModalities)
        if (s == modality_name(m)) return m;
    return std::nullopt;
}

UnitIdx Vocabulary::intern(Modality m, std::string_view s) {
    auto& map = ids_[modality_index(m)];
    auto it = map.find(std::string(s));
    if (it != map.end()) return it->second;
    UnitIdx idx = static_cast<UnitIdx>(names_[modality_index(m)].size());
    names_[modality_index(m)].emplace_back(s);
    map.emplace(std::string(s), idx);
    return idx;
}

std::optional<UnitIdx> Vocabulary::lookup(Modality m, std::string_view s) const {
    const auto& map = ids_[modality_index(m)];
    auto it = map.find(std::string(s));
    if (it == map.end()) return std::nullopt;
    return it->second;
}

const std::string& Vocabulary::name(Modality m, UnitIdx idx) const {
    const auto& v = names_[modality_index(m)];
    if (idx >= v.size()) throw std::out_of_range("vocabulary: id out of range");
    return v[idx];
}

uint64_t Vocabulary::bump_freq(Modality m, std::string_view s, uint64_t n) {
    return freq_[modality_index(m)][std::string(s)] += n;
}

uint64_t Vocabulary::freq(Modality m, std::string_view s) const {
    const auto& f = freq_[modality_index(m)];
    auto it = f.find(std::string(s));
    return it == f.end() ? 0 : it->second;
}

uint64_t Vocabulary::freq(Modality m, UnitIdx idx) const { return freq(m, name(m, idx)); }

void Vocabulary::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("vocabulary: cannot write " + path);
    for (Modality m : kModalities) {
        const auto& v = names_[modality_index(m)];
        for (UnitIdx i = 0; i < v.size(); ++i)
            out << modality_name(m) << '\t' << i << '\t' << v[i] << '\t' << freq(m, i) << '\n';
    }
    if (!out) throw std::runtime_error("vocabulary: write failed for " + path);
}

Vocabulary Vocabulary::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("vocabulary: cannot read " + path);
    Vocabulary vocab;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string mod_s, id_s, name_s, count_s;
        if (!std::getline(ss, mod_s, '\t') || !std::getline(ss, id_s, '\t') ||
            !std::getline(ss, name_s, '\t') || !std::getline(ss, count_s)) {
            throw std::runtime_error("vocabulary: malformed line " + std::to_string(lineno) +
                                     " in " + path);
        }
        auto m = modality_from_name(mod_s);
        if (!m) throw std::runtime_error("vocabulary: unknown modality at line " +
                                         std::to_string(lineno));
        UnitIdx idx = vocab.intern(*m, name_s);
        if (idx != std::stoul(id_s))
            throw std::runtime_error("vocabulary: non-dense id at line " + std::to_string(lineno));
        vocab.bump_freq(*m, name_s, std::stoull(count_s));
    }
    return vocab;
}

}  // namespace ustar
