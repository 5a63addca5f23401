#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "o2osim/cognition/question.hpp"
#include "o2osim/core/error.hpp"

namespace o2o {

struct ParsedResponse {
    Answer answer = Answer::Reject;
    std::string reason; // may be empty when the backend gave none
};

namespace parse_detail {

inline std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline std::optional<Answer> answer_token(const std::string& word) {
    if (word == "accept" || word == "yes" || word == "take") {
        return Answer::Accept;
    }
    if (word == "reject" || word == "no" || word == "decline") {
        return Answer::Reject;
    }
    return std::nullopt;
}

} // namespace parse_detail

// Extracts {answer, reason} from free-form backend text. The answer comes
// from the first line carrying an "answer:" marker (case-insensitive),
// scanning that line's words for an accept/reject synonym. The reason is
// everything after the first "reason:" marker. Throws ResponseParseError
// when no answer token can be found; never aborts.
inline ParsedResponse parse_response(const std::string& raw) {
    using namespace parse_detail;
    const std::string lowered = lower(raw);

    ParsedResponse out;
    bool found = false;
    std::size_t line_start = 0;
    while (line_start <= lowered.size() && !found) {
        std::size_t line_end = lowered.find('\n', line_start);
        if (line_end == std::string::npos) line_end = lowered.size();
        const std::string line = lowered.substr(line_start, line_end - line_start);
        const std::size_t marker = line.find("answer");
        if (marker != std::string::npos) {
            const std::size_t colon = line.find(':', marker);
            if (colon != std::string::npos) {
                // Scan words after the colon for a recognizable token.
                std::string word;
                for (std::size_t i = colon + 1; i <= line.size(); ++i) {
                    const bool boundary =
                        i == line.size() ||
                        !std::isalpha(static_cast<unsigned char>(line[i]));
                    if (!boundary) {
                        word.push_back(line[i]);
                        continue;
                    }
                    if (!word.empty()) {
                        if (auto a = answer_token(word)) {
                            out.answer = *a;
                            found = true;
                            break;
                        }
                        word.clear();
                    }
                }
            }
        }
        line_start = line_end + 1;
    }
    if (!found) {
        throw ResponseParseError("no recognizable ANSWER token in backend text");
    }

    const std::size_t reason_at = lowered.find("reason");
    if (reason_at != std::string::npos) {
        const std::size_t colon = raw.find(':', reason_at);
        if (colon != std::string::npos) {
            out.reason = trim(raw.substr(colon + 1));
        }
    }
    return out;
}

} // namespace o2o
