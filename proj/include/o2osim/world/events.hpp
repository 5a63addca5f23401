#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "o2osim/core/error.hpp"
#include "o2osim/core/types.hpp"

namespace o2o {

inline constexpr int kEventSchemaVersion = 1;

enum class EventType : std::uint8_t {
    OrderSpawned = 0,
    OrderAssigned,
    OrderAccepted,
    OrderRejected,
    OrderPickedUp,
    OrderDelivered,
    OrderExpired,
    RiderMoved,
    RiderEmotion,
    RiderRest,
    Incident,
};

inline constexpr std::array<std::string_view, 11> kEventTypeNames = {
    "OrderSpawned", "OrderAssigned", "OrderAccepted",  "OrderRejected",
    "OrderPickedUp", "OrderDelivered", "OrderExpired", "RiderMoved",
    "RiderEmotion", "RiderRest",     "Incident",
};

inline std::string event_type_name(EventType t) {
    return std::string(kEventTypeNames[static_cast<std::size_t>(t)]);
}

inline std::optional<EventType> parse_event_type(std::string_view s) {
    for (std::size_t i = 0; i < kEventTypeNames.size(); ++i) {
        if (kEventTypeNames[i] == s) return static_cast<EventType>(i);
    }
    return std::nullopt;
}

// One event-log line. A single flat struct covers every event type; the
// serializer writes only the fields that type carries.
struct Event {
    EventType type = EventType::RiderMoved;
    int step = 0;
    std::int64_t order = -1;
    std::int64_t rider = -1;
    GridPos pos{};            // RiderMoved
    GridPos maker{}, booker{}; // OrderSpawned
    double value = 0.0;       // OrderSpawned, OrderDelivered
    int expiry = 0;           // OrderSpawned
    int cells = 0;            // RiderMoved
    EmotionLabel emotion = EmotionLabel::Neutral; // decisions, RiderEmotion
    PadState pad{};           // RiderEmotion
    bool incident = false;    // OrderRejected (fallback decisions)
    std::string note;         // RiderRest action / Incident kind
};

inline nlohmann::json event_to_json(const Event& e) {
    nlohmann::json j;
    j["type"] = event_type_name(e.type);
    j["step"] = e.step;
    switch (e.type) {
        case EventType::OrderSpawned:
            j["order"] = e.order;
            j["maker"] = {e.maker.x, e.maker.y};
            j["booker"] = {e.booker.x, e.booker.y};
            j["value"] = e.value;
            j["expiry"] = e.expiry;
            break;
        case EventType::OrderAssigned:
        case EventType::OrderPickedUp:
            j["order"] = e.order;
            j["rider"] = e.rider;
            break;
        case EventType::OrderAccepted:
            j["order"] = e.order;
            j["rider"] = e.rider;
            j["emotion"] = emotion_name(e.emotion);
            break;
        case EventType::OrderRejected:
            j["order"] = e.order;
            j["rider"] = e.rider;
            j["emotion"] = emotion_name(e.emotion);
            j["incident"] = e.incident;
            break;
        case EventType::OrderDelivered:
            j["order"] = e.order;
            j["rider"] = e.rider;
            j["value"] = e.value;
            break;
        case EventType::OrderExpired:
            j["order"] = e.order;
            break;
        case EventType::RiderMoved:
            j["rider"] = e.rider;
            j["pos"] = {e.pos.x, e.pos.y};
            j["cells"] = e.cells;
            break;
        case EventType::RiderEmotion:
            j["rider"] = e.rider;
            j["emotion"] = emotion_name(e.emotion);
            j["pad"] = {e.pad.pleasure, e.pad.arousal, e.pad.dominance};
            break;
        case EventType::RiderRest:
            j["rider"] = e.rider;
            j["action"] = e.note;
            break;
        case EventType::Incident:
            j["rider"] = e.rider;
            j["order"] = e.order;
            j["kind"] = e.note;
            break;
    }
    return j;
}

inline Event event_from_json(const nlohmann::json& j) {
    Event e;
    const std::string type = j.at("type").get<std::string>();
    auto parsed = parse_event_type(type);
    if (!parsed) throw DataError("unknown event type '" + type + "'");
    e.type = *parsed;
    e.step = j.at("step").get<int>();
    auto get_pos = [&](const char* key) {
        const auto& arr = j.at(key);
        return GridPos{arr.at(0).get<int>(), arr.at(1).get<int>()};
    };
    switch (e.type) {
        case EventType::OrderSpawned:
            e.order = j.at("order").get<std::int64_t>();
            e.maker = get_pos("maker");
            e.booker = get_pos("booker");
            e.value = j.at("value").get<double>();
            e.expiry = j.at("expiry").get<int>();
            break;
        case EventType::OrderAssigned:
        case EventType::OrderPickedUp:
            e.order = j.at("order").get<std::int64_t>();
            e.rider = j.at("rider").get<std::int64_t>();
            break;
        case EventType::OrderAccepted:
        case EventType::OrderRejected: {
            e.order = j.at("order").get<std::int64_t>();
            e.rider = j.at("rider").get<std::int64_t>();
            auto em = parse_emotion(j.at("emotion").get<std::string>());
            if (!em) throw DataError("unknown emotion in event");
            e.emotion = *em;
            if (e.type == EventType::OrderRejected) {
                e.incident = j.at("incident").get<bool>();
            }
            break;
        }
        case EventType::OrderDelivered:
            e.order = j.at("order").get<std::int64_t>();
            e.rider = j.at("rider").get<std::int64_t>();
            e.value = j.at("value").get<double>();
            break;
        case EventType::OrderExpired:
            e.order = j.at("order").get<std::int64_t>();
            break;
        case EventType::RiderMoved:
            e.rider = j.at("rider").get<std::int64_t>();
            e.pos = get_pos("pos");
            e.cells = j.at("cells").get<int>();
            break;
        case EventType::RiderEmotion: {
            e.rider = j.at("rider").get<std::int64_t>();
            auto em = parse_emotion(j.at("emotion").get<std::string>());
            if (!em) throw DataError("unknown emotion in event");
            e.emotion = *em;
            const auto& pad = j.at("pad");
            e.pad = PadState{pad.at(0).get<double>(), pad.at(1).get<double>(),
                             pad.at(2).get<double>()};
            break;
        }
        case EventType::RiderRest:
            e.rider = j.at("rider").get<std::int64_t>();
            e.note = j.at("action").get<std::string>();
            break;
        case EventType::Incident:
            e.rider = j.at("rider").get<std::int64_t>();
            e.order = j.at("order").get<std::int64_t>();
            e.note = j.at("kind").get<std::string>();
            break;
    }
    return e;
}

class EventSink {
public:
    virtual ~EventSink() = default;
    virtual void on_event(const Event& e) = 0;
    virtual void on_tick_end(int /*step*/) {}
};

class JsonlEventSink final : public EventSink {
public:
    explicit JsonlEventSink(const std::string& path)
        : out_(path, std::ios::binary) {
        if (!out_) throw IoError("cannot open event log: " + path);
    }

    void on_event(const Event& e) override {
        out_ << event_to_json(e).dump() << "\n";
    }

    void flush() { out_.flush(); }

private:
    std::ofstream out_;
};

class VectorEventSink final : public EventSink {
public:
    void on_event(const Event& e) override { events.push_back(e); }
    std::vector<Event> events;
};

// Streams an event log back, one parsed event per line. Parse problems
// carry the offending line number.
template <typename Fn>
inline void for_each_event(const std::string& path, Fn&& fn) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open event log: " + path);
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            fn(event_from_json(nlohmann::json::parse(line)));
        } catch (const nlohmann::json::exception& e) {
            throw DataError(path + " line " + std::to_string(line_no) + ": " +
                            e.what());
        }
    }
}

inline std::vector<Event> read_event_log(const std::string& path) {
    std::vector<Event> events;
    for_each_event(path, [&](const Event& e) { events.push_back(e); });
    return events;
}

} // namespace o2o
