#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "o2osim/core/error.hpp"
#include "o2osim/core/types.hpp"

namespace o2o {

// One ingested corpus row. Only rows that pair an emotion with a behavior
// survive ingestion, so has_behavior_causality is true for every kept
// record; the flag is retained for artifact inspection.
struct CorpusRecord {
    std::string id;
    std::string text;
    std::string context; // optional; embedded and averaged with text
    EmotionLabel emotion = EmotionLabel::Neutral;
    bool has_behavior_causality = false;
};

struct CorpusLoadResult {
    std::vector<CorpusRecord> records;
    std::size_t dropped = 0; // rows filtered out (missing emotion/behavior,
                             // or emotion Neutral)
    std::vector<std::string> warnings;
};

// Reads a JSONL corpus: one object per line with fields
//   id (string), text (string), emotion (string), behavior (string),
//   context (optional string).
// Rows lacking emotion or behavior are dropped (the emotion-behavior
// causality filter); Neutral rows are dropped because the ingested corpus
// covers the six non-neutral emotions. Structural problems are hard errors
// with line numbers.
inline CorpusLoadResult load_corpus(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open corpus file: " + path);

    CorpusLoadResult result;
    std::string line;
    int line_no = 0;
    auto fail = [&](const std::string& what) {
        throw DataError(path + " line " + std::to_string(line_no) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        nlohmann::json row;
        try {
            row = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            fail(std::string("malformed JSON (") + e.what() + ")");
        }
        if (!row.is_object()) fail("expected a JSON object");
        if (!row.contains("id") || !row["id"].is_string()) {
            fail("missing string field 'id'");
        }
        if (!row.contains("text") || !row["text"].is_string() ||
            row["text"].get<std::string>().empty()) {
            fail("missing or empty field 'text'");
        }

        CorpusRecord rec;
        rec.id = row["id"].get<std::string>();
        rec.text = row["text"].get<std::string>();
        if (row.contains("context") && row["context"].is_string()) {
            rec.context = row["context"].get<std::string>();
        }

        const bool has_emotion =
            row.contains("emotion") && row["emotion"].is_string() &&
            !row["emotion"].get<std::string>().empty();
        const bool has_behavior =
            row.contains("behavior") && row["behavior"].is_string() &&
            !row["behavior"].get<std::string>().empty();
        if (!has_emotion || !has_behavior) {
            ++result.dropped;
            continue;
        }
        const std::string label = row["emotion"].get<std::string>();
        auto emotion = parse_emotion(label);
        if (!emotion) fail("unknown emotion label '" + label + "'");
        if (*emotion == EmotionLabel::Neutral) {
            ++result.dropped;
            result.warnings.push_back("line " + std::to_string(line_no) +
                                      ": Neutral row dropped (corpus covers "
                                      "the six non-neutral emotions)");
            continue;
        }
        rec.emotion = *emotion;
        rec.has_behavior_causality = true;
        result.records.push_back(std::move(rec));
    }
    if (line_no == 0 || (result.records.empty() && result.dropped == 0)) {
        result.warnings.push_back("corpus file is empty: " + path);
    }
    return result;
}

} // namespace o2o
