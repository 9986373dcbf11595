#include "ustar/tokenize.hpp"

#include <cctype>
#include <unordered_set>

namespace ustar {

namespace {

// Fixed English stopword list (standard ~170-word list).
const std::unordered_set<std::string_view> kStopwords = {
    "a", "about", "above", "after", "again", "against", "all", "am", "an", "and",
    "any", "are", "aren", "arent", "as", "at", "be", "because", "been", "before",
    "being", "below", "between", "both", "but", "by", "can", "cannot", "could",
    "couldnt", "did", "didnt", "do", "does", "doesnt", "doing", "dont", "down",
    "during", "each", "few", "for", "from", "further", "had", "hadnt", "has",
    "hasnt", "have", "havent", "having", "he", "hed", "hell", "hes", "her",
    "here", "heres", "hers", "herself", "him", "himself", "his", "how", "hows",
    "i", "id", "ill", "im", "ive", "if", "in", "into", "is", "isnt", "it",
    "its", "itself", "lets", "me", "more", "most", "mustnt", "my", "myself",
    "no", "nor", "not", "of", "off", "on", "once", "only", "or", "other",
    "ought", "our", "ours", "ourselves", "out", "over", "own", "same", "shant",
    "she", "shed", "shell", "shes", "should", "shouldnt", "so", "some", "such",
    "than", "that", "thats", "the", "their", "theirs", "them", "themselves",
    "then", "there", "theres", "these", "they", "theyd", "theyll", "theyre",
    "theyve", "this", "those", "through", "to", "too", "under", "until", "up",
    "very", "was", "wasnt", "we", "wed", "well", "were", "weve", "werent",
    "what", "whats", "when", "whens", "where", "wheres", "which", "while",
    "who", "whos", "whom", "why", "whys", "with", "wont", "would", "wouldnt",
    "you", "youd", "youll", "youre", "youve", "your", "yours", "yourself",
    "yourselves",
};

bool is_mention(std::string_view chunk) { return !chunk.empty() && chunk.front() == '@'; }

bool is_url(std::string_view chunk) {
    return chunk.find("://") != std::string_view::npos || chunk.substr(0, 4) == "www.";
}

}  // namespace

bool is_stopword(std::string_view token) { return kStopwords.count(token) > 0; }

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    size_t i = 0;
    const size_t n = text.size();
    while (i < n) {
        while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        size_t start = i;
        while (i < n && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) continue;
        std::string_view chunk = text.substr(start, i - start);
        if (is_mention(chunk) || is_url(chunk)) continue;

        std::string tok;
        for (char c : chunk) {
            unsigned char u = static_cast<unsigned char>(c);
            if (u < 0x80 && std::isalnum(u)) {
                tok.push_back(static_cast<char>(std::tolower(u)));
            } else if (!tok.empty()) {
                if (!is_stopword(tok)) out.push_back(tok);
                tok.clear();
            }
        }
        if (!tok.empty() && !is_stopword(tok)) out.push_back(std::move(tok));
    }
    return out;
}

}  // namespace ustar
