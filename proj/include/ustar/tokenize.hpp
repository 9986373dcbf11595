#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ustar {

// Tokenization rules applied to raw message text:
//   - whitespace-delimited chunks starting with '@' (mentions) are dropped
//   - chunks containing "://" or starting with "www." (URLs) are dropped
//   - remaining text is lowercased and split on non-alphanumeric bytes
//     (so "#melbourne" yields "melbourne"); non-ASCII bytes act as separators
std::vector<std::string> tokenize(std::string_view text);

bool is_stopword(std::string_view token);

}  // namespace ustar
