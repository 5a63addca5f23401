#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "o2osim/cognition/decide.hpp"
#include "o2osim/core/config.hpp"
#include "o2osim/core/geometry.hpp"
#include "o2osim/core/rng.hpp"
#include "o2osim/emotion/anchors.hpp"
#include "o2osim/emotion/evolution.hpp"
#include "o2osim/world/events.hpp"
#include "o2osim/world/order.hpp"
#include "o2osim/world/rider.hpp"

namespace o2o {

// Dispatch side of the platform: the income leaderboard (recomputed every
// tick) and the pool of orders awaiting assignment.
struct Platform {
    std::vector<std::uint64_t> leaderboard; // rider ids, income desc
    std::vector<std::uint64_t> pending;     // order ids, ascending
    std::vector<std::array<std::uint64_t, 3>> assignment_log; // step, order, rider
};

// Expected order count for one simulated day under the configured peak
// mixture (the oracle for spawn-rate tests).
inline double daily_order_rate(const SimConfig& cfg) {
    double total = 0.0;
    for (int sod = 0; sod < cfg.steps_per_day; ++sod) {
        for (const auto& peak : cfg.order_peaks) {
            const double z = (sod - peak.step_of_day) / cfg.peak_sigma_steps;
            total += peak.intensity * std::exp(-0.5 * z * z);
        }
    }
    return total;
}

// Dispatch scoring: rank preference plus proximity to the maker, both
// normalized to [0, 1]. Higher is better; ties go to the lower rider id.
inline double assignment_score(const RiderAgent& rider, const Order& order,
                               const SimConfig& cfg) {
    const double rank_score =
        cfg.n_riders > 1
            ? static_cast<double>(cfg.n_riders - rider.rank) / (cfg.n_riders - 1)
            : 1.0;
    const int diag = std::max(1, cfg.map_width + cfg.map_height - 2);
    const double dist_norm =
        static_cast<double>(manhattan_distance(rider.position, order.maker)) /
        diag;
    return cfg.assign_rank_weight * rank_score -
           cfg.assign_distance_weight * dist_norm;
}

inline bool rider_eligible(const RiderAgent& rider, const SimConfig& cfg,
                           int step_of_day) {
    return (rider.phase == RiderPhase::Waiting ||
            rider.phase == RiderPhase::Wandering) &&
           static_cast<int>(rider.held.size()) < cfg.max_held_orders &&
           step_of_day < cfg.rest_start_step;
}

// Picks the best eligible rider for a pending order, or nobody.
inline std::optional<std::uint64_t> assign_order(
    const std::vector<RiderAgent>& riders, const Order& order,
    const SimConfig& cfg, int step_of_day) {
    std::optional<std::uint64_t> best;
    double best_score = 0.0;
    for (const auto& rider : riders) {
        if (!rider_eligible(rider, cfg, step_of_day)) continue;
        const double score = assignment_score(rider, order, cfg);
        if (!best || score > best_score) {
            best = rider.id;
            best_score = score;
        }
    }
    return best;
}

struct WorldHooks {
    const CorpusIndex* index = nullptr;
    EmbeddingBackend* embedder = nullptr;
    TraceSink* trace = nullptr;
};

// The O2O delivery world. tick() advances one step through a fixed
// pipeline: expiry+spawn, leaderboard, assignment+decisions, movement and
// order resolution, rest scheduling, PAD update, invariant sweep. All
// mutation happens on this single logical loop; events flush to sinks at
// tick end in program order.
class World {
public:
    World(SimConfig cfg, DecisionBackend& backend, WorldHooks hooks = {})
        : cfg_(validate_config(std::move(cfg))),
          backend_(&backend),
          hooks_(hooks),
          orders_rng_(derive_stream(cfg_.rng_seed, "orders")),
          movement_rng_(derive_stream(cfg_.rng_seed, "movement")) {
        Rng init_rng = derive_stream(cfg_.rng_seed, "riders");
        riders_.resize(static_cast<std::size_t>(cfg_.n_riders));
        memories_.resize(riders_.size());
        for (std::size_t i = 0; i < riders_.size(); ++i) {
            RiderAgent& r = riders_[i];
            r.id = i;
            r.birth_point = random_pos(init_rng);
            r.workplace = random_pos(init_rng);
            r.position = r.birth_point;
            r.speed = cfg_.initial_speed;
            r.diligence = cfg_.diligence_mix[i % cfg_.diligence_mix.size()];
            r.phase = RiderPhase::Resting;
        }
        platform_.leaderboard.resize(riders_.size());
    }

    void add_sink(EventSink* sink) { sinks_.push_back(sink); }

    const SimConfig& config() const { return cfg_; }
    int step() const { return step_; }
    const std::vector<RiderAgent>& riders() const { return riders_; }
    const std::vector<Order>& orders() const { return orders_; }
    const Platform& platform() const { return platform_; }
    MemoryStore& memory_store(std::uint64_t rider_id) {
        return memories_.at(rider_id);
    }

    bool finished() const { return step_ >= cfg_.total_steps; }

    void run_to_end() {
        while (!finished()) tick();
    }

    void tick() {
        if (finished()) {
            throw InvariantViolation("tick() past total_steps");
        }
        events_.clear();
        const int sod = step_ % cfg_.steps_per_day;

        if (sod == 0) begin_day();
        expire_pending();
        spawn_orders(sod);
        recompute_leaderboard();
        assign_and_decide(sod);
        move_riders();
        rest_logic(sod);
        apply_emotions();
        check_invariants();

        for (EventSink* sink : sinks_) {
            for (const Event& e : events_) sink->on_event(e);
            sink->on_tick_end(step_);
        }
        ++step_;
    }

    // Post-run audit: delivered value must equal rider income, no order may
    // be held twice, and held/pending bookkeeping must match order states.
    void verify_conservation() const {
        std::vector<double> delivered(riders_.size(), 0.0);
        for (const auto& order : orders_) {
            if (order.state == OrderState::Delivered) {
                if (!order.assigned_rider) {
                    throw InvariantViolation("delivered order " +
                                             std::to_string(order.id) +
                                             " has no rider");
                }
                delivered[static_cast<std::size_t>(*order.assigned_rider)] +=
                    order.value;
            }
        }
        for (const auto& rider : riders_) {
            if (std::abs(delivered[static_cast<std::size_t>(rider.id)] -
                         rider.income) > 1e-6) {
                throw InvariantViolation(
                    "rider " + std::to_string(rider.id) + ": income " +
                    fmt_double(rider.income) + " != delivered value " +
                    fmt_double(delivered[static_cast<std::size_t>(rider.id)]));
            }
        }
        std::map<std::uint64_t, std::uint64_t> holder;
        for (const auto& rider : riders_) {
            for (std::uint64_t oid : rider.held) {
                if (holder.count(oid)) {
                    throw InvariantViolation("order " + std::to_string(oid) +
                                             " held by two riders");
                }
                holder[oid] = rider.id;
                const Order& order = orders_.at(oid);
                if (order.state != OrderState::Accepted &&
                    order.state != OrderState::PickedUp) {
                    throw InvariantViolation(
                        "held order " + std::to_string(oid) + " in state " +
                        order_state_name(order.state));
                }
            }
        }
    }

    nlohmann::json snapshot() const {
        nlohmann::json j;
        j["schema_version"] = 1;
        j["config_hash"] = hex64(config_hash(cfg_));
        j["step"] = step_;
        j["orders_rng"] = orders_rng_.state();
        j["movement_rng"] = movement_rng_.state();
        nlohmann::json riders = nlohmann::json::array();
        for (const auto& r : riders_) {
            nlohmann::json jr;
            jr["id"] = r.id;
            jr["pos"] = {r.position.x, r.position.y};
            jr["birth"] = {r.birth_point.x, r.birth_point.y};
            jr["workplace"] = {r.workplace.x, r.workplace.y};
            jr["speed"] = r.speed;
            jr["stamina"] = r.stamina;
            jr["income"] = r.income;
            jr["diligence"] = diligence_name(r.diligence);
            jr["held"] = r.held;
            jr["phase"] = rider_phase_name(r.phase);
            jr["pad"] = {r.pad.pleasure, r.pad.arousal, r.pad.dominance};
            jr["emotion"] = emotion_name(r.emotion);
            if (r.wander_target) {
                jr["wander_target"] = {r.wander_target->x, r.wander_target->y};
            }
            jr["move_credit"] = r.move_credit;
            jr["rank"] = r.rank;
            riders.push_back(std::move(jr));
        }
        j["riders"] = std::move(riders);
        nlohmann::json orders = nlohmann::json::array();
        for (const auto& o : orders_) {
            nlohmann::json jo;
            jo["id"] = o.id;
            jo["maker"] = {o.maker.x, o.maker.y};
            jo["booker"] = {o.booker.x, o.booker.y};
            jo["value"] = o.value;
            jo["created"] = o.created_step;
            jo["expiry"] = o.expiry_step;
            jo["state"] = order_state_name(o.state);
            if (o.assigned_rider) jo["rider"] = *o.assigned_rider;
            orders.push_back(std::move(jo));
        }
        j["orders"] = std::move(orders);
        j["pending"] = platform_.pending;
        nlohmann::json mems = nlohmann::json::array();
        for (const auto& store : memories_) {
            nlohmann::json js = nlohmann::json::array();
            for (const auto& rec : store.records()) {
                js.push_back({{"digest", rec.question_digest},
                              {"answer", answer_name(rec.answer)},
                              {"reason", rec.reason},
                              {"created_at", rec.created_at},
                              {"emotion", emotion_name(rec.emotion_at_decision)},
                              {"seq", rec.seq}});
            }
            mems.push_back(
                {{"records", std::move(js)}, {"next_seq", store.next_seq()}});
        }
        j["memories"] = std::move(mems);
        return j;
    }

    void restore(const nlohmann::json& j) {
        if (j.at("config_hash").get<std::string>() != hex64(config_hash(cfg_))) {
            throw ConfigError("snapshot was taken under a different config");
        }
        step_ = j.at("step").get<int>();
        orders_rng_.restore(j.at("orders_rng").get<std::array<std::uint64_t, 4>>());
        movement_rng_.restore(
            j.at("movement_rng").get<std::array<std::uint64_t, 4>>());
        const auto& riders = j.at("riders");
        if (riders.size() != riders_.size()) {
            throw ConfigError("snapshot rider count mismatch");
        }
        for (std::size_t i = 0; i < riders_.size(); ++i) {
            const auto& jr = riders[i];
            RiderAgent& r = riders_[i];
            r.position = {jr.at("pos").at(0).get<int>(),
                          jr.at("pos").at(1).get<int>()};
            r.birth_point = {jr.at("birth").at(0).get<int>(),
                             jr.at("birth").at(1).get<int>()};
            r.workplace = {jr.at("workplace").at(0).get<int>(),
                           jr.at("workplace").at(1).get<int>()};
            r.speed = jr.at("speed").get<double>();
            r.stamina = jr.at("stamina").get<double>();
            r.income = jr.at("income").get<double>();
            r.diligence = *parse_diligence(jr.at("diligence").get<std::string>());
            r.held = jr.at("held").get<std::vector<std::uint64_t>>();
            const std::string phase = jr.at("phase").get<std::string>();
            bool found = false;
            for (std::size_t p = 0; p < kRiderPhaseNames.size(); ++p) {
                if (kRiderPhaseNames[p] == phase) {
                    r.phase = static_cast<RiderPhase>(p);
                    found = true;
                }
            }
            if (!found) throw DataError("snapshot: unknown phase " + phase);
            r.pad = {jr.at("pad").at(0).get<double>(),
                     jr.at("pad").at(1).get<double>(),
                     jr.at("pad").at(2).get<double>()};
            r.emotion = *parse_emotion(jr.at("emotion").get<std::string>());
            if (jr.contains("wander_target")) {
                r.wander_target = GridPos{jr.at("wander_target").at(0).get<int>(),
                                          jr.at("wander_target").at(1).get<int>()};
            } else {
                r.wander_target.reset();
            }
            r.move_credit = jr.at("move_credit").get<double>();
            r.rank = jr.at("rank").get<int>();
        }
        orders_.clear();
        for (const auto& jo : j.at("orders")) {
            Order o;
            o.id = jo.at("id").get<std::uint64_t>();
            o.maker = {jo.at("maker").at(0).get<int>(),
                       jo.at("maker").at(1).get<int>()};
            o.booker = {jo.at("booker").at(0).get<int>(),
                        jo.at("booker").at(1).get<int>()};
            o.value = jo.at("value").get<double>();
            o.created_step = jo.at("created").get<int>();
            o.expiry_step = jo.at("expiry").get<int>();
            const std::string state = jo.at("state").get<std::string>();
            bool found = false;
            for (std::size_t s = 0; s < kOrderStateNames.size(); ++s) {
                if (kOrderStateNames[s] == state) {
                    o.state = static_cast<OrderState>(s);
                    found = true;
                }
            }
            if (!found) throw DataError("snapshot: unknown order state " + state);
            if (jo.contains("rider")) {
                o.assigned_rider = jo.at("rider").get<std::uint64_t>();
            }
            orders_.push_back(std::move(o));
        }
        platform_.pending = j.at("pending").get<std::vector<std::uint64_t>>();
        const auto& mems = j.at("memories");
        for (std::size_t i = 0; i < memories_.size(); ++i) {
            std::vector<MemoryRecord> records;
            for (const auto& jr : mems.at(i).at("records")) {
                MemoryRecord rec;
                rec.question_digest = jr.at("digest").get<std::string>();
                rec.answer = jr.at("answer").get<std::string>() == "Accept"
                                 ? Answer::Accept
                                 : Answer::Reject;
                rec.reason = jr.at("reason").get<std::string>();
                rec.created_at = jr.at("created_at").get<int>();
                rec.emotion_at_decision =
                    *parse_emotion(jr.at("emotion").get<std::string>());
                rec.seq = jr.at("seq").get<std::uint64_t>();
                records.push_back(std::move(rec));
            }
            memories_[i].restore(std::move(records),
                                 mems.at(i).at("next_seq").get<std::uint64_t>());
        }
        recompute_leaderboard();
    }

private:
    GridPos random_pos(Rng& rng) {
        return GridPos{
            static_cast<int>(rng.bounded(static_cast<std::uint64_t>(cfg_.map_width))),
            static_cast<int>(rng.bounded(static_cast<std::uint64_t>(cfg_.map_height)))};
    }

    void emit(Event e) {
        e.step = step_;
        events_.push_back(std::move(e));
    }

    void begin_day() {
        for (auto& rider : riders_) {
            if (rider.phase == RiderPhase::Resting) {
                if (step_ > 0) {
                    Event e;
                    e.type = EventType::RiderRest;
                    e.rider = static_cast<std::int64_t>(rider.id);
                    e.note = "end";
                    emit(std::move(e));
                }
                rider.phase = RiderPhase::ToWork;
            } else if (rider.phase == RiderPhase::ReturningHome) {
                // Never made it home before dawn; head straight to work.
                rider.phase = RiderPhase::ToWork;
            }
            rider.wander_target.reset();
        }
    }

    void expire_pending() {
        std::vector<std::uint64_t> survivors;
        survivors.reserve(platform_.pending.size());
        for (std::uint64_t oid : platform_.pending) {
            Order& order = orders_[oid];
            if (step_ >= order.expiry_step) {
                order_transition(order, OrderState::Expired);
                Event e;
                e.type = EventType::OrderExpired;
                e.order = static_cast<std::int64_t>(oid);
                emit(std::move(e));
            } else {
                survivors.push_back(oid);
            }
        }
        platform_.pending = std::move(survivors);
    }

    void spawn_orders(int sod) {
        double lambda = 0.0;
        for (const auto& peak : cfg_.order_peaks) {
            const double z = (sod - peak.step_of_day) / cfg_.peak_sigma_steps;
            lambda += peak.intensity * std::exp(-0.5 * z * z);
        }
        const int count = orders_rng_.poisson(lambda);
        for (int i = 0; i < count; ++i) {
            Order order;
            order.id = orders_.size();
            order.maker = random_pos(orders_rng_);
            order.booker = random_pos(orders_rng_);
            const double jitter =
                cfg_.order_value_jitter * orders_rng_.uniform_real(-1.0, 1.0);
            order.value = std::max(
                1.0, cfg_.order_value_base +
                         cfg_.order_value_per_cell *
                             manhattan_distance(order.maker, order.booker) +
                         jitter);
            order.created_step = step_;
            order.expiry_step = step_ + cfg_.order_timeout_steps;
            Event e;
            e.type = EventType::OrderSpawned;
            e.order = static_cast<std::int64_t>(order.id);
            e.maker = order.maker;
            e.booker = order.booker;
            e.value = order.value;
            e.expiry = order.expiry_step;
            emit(std::move(e));
            platform_.pending.push_back(order.id);
            orders_.push_back(std::move(order));
        }
    }

    void recompute_leaderboard() {
        auto& board = platform_.leaderboard;
        for (std::size_t i = 0; i < riders_.size(); ++i) board[i] = i;
        std::sort(board.begin(), board.end(),
                  [&](std::uint64_t a, std::uint64_t b) {
                      if (riders_[a].income != riders_[b].income) {
                          return riders_[a].income > riders_[b].income;
                      }
                      return a < b;
                  });
        for (std::size_t pos = 0; pos < board.size(); ++pos) {
            riders_[board[pos]].rank = static_cast<int>(pos) + 1;
        }
    }

    void assign_and_decide(int sod) {
        // Offer each order pending at the start of the tick to at most one
        // rider; rejected orders return to the pool for the next tick.
        const std::vector<std::uint64_t> offers = platform_.pending;
        for (std::uint64_t oid : offers) {
            Order& order = orders_[oid];
            if (order.state != OrderState::Pending) continue;
            const auto chosen = assign_order(riders_, order, cfg_, sod);
            if (!chosen) continue;
            RiderAgent& rider = riders_[static_cast<std::size_t>(*chosen)];

            order_transition(order, OrderState::Assigned);
            platform_.assignment_log.push_back({static_cast<std::uint64_t>(step_),
                                                oid, rider.id});
            Event assigned;
            assigned.type = EventType::OrderAssigned;
            assigned.order = static_cast<std::int64_t>(oid);
            assigned.rider = static_cast<std::int64_t>(rider.id);
            emit(std::move(assigned));

            offer_and_decide(rider, order);
        }
    }

    void offer_and_decide(RiderAgent& rider, Order& order) {
        OrderSummary summary;
        summary.order_id = order.id;
        summary.value = order.value;
        summary.pickup_distance = manhattan_distance(rider.position, order.maker);
        summary.delivery_distance = manhattan_distance(order.maker, order.booker);
        summary.deadline_steps = order.expiry_step - step_;

        AgentSnapshot snapshot;
        snapshot.stamina = rider.stamina;
        snapshot.income = rider.income;
        snapshot.held = static_cast<int>(rider.held.size());
        snapshot.max_held = cfg_.max_held_orders;
        snapshot.emotion = rider.emotion;
        snapshot.pad = rider.pad;
        snapshot.diligence = rider.diligence;
        snapshot.rank = rider.rank;
        snapshot.n_riders = cfg_.n_riders;

        const DecisionQuestion question = make_decision_question(summary, snapshot);
        DecisionContext ctx;
        ctx.variant = cfg_.framework_variant;
        ctx.backend = backend_;
        ctx.index = hooks_.index;
        ctx.embedder = hooks_.embedder;
        ctx.memory = &memories_[static_cast<std::size_t>(rider.id)];
        ctx.now = step_;
        ctx.memory_ttl = cfg_.memory_ttl;
        ctx.rider_id = rider.id;
        ctx.order_id = order.id;
        ctx.trace = hooks_.trace;

        const DecisionResponse resp = decide(question, ctx);
        const bool incident = ctx.out_incident;

        if (resp.answer == Answer::Accept) {
            order_transition(order, OrderState::Accepted);
            order.assigned_rider = rider.id;
            rider.held.push_back(order.id);
            std::erase(platform_.pending, order.id);
            Event e;
            e.type = EventType::OrderAccepted;
            e.order = static_cast<std::int64_t>(order.id);
            e.rider = static_cast<std::int64_t>(rider.id);
            e.emotion = rider.emotion;
            emit(std::move(e));
        } else {
            order_transition(order, OrderState::Rejected);
            Event e;
            e.type = EventType::OrderRejected;
            e.order = static_cast<std::int64_t>(order.id);
            e.rider = static_cast<std::int64_t>(rider.id);
            e.emotion = rider.emotion;
            e.incident = incident;
            emit(std::move(e));
            if (incident) {
                Event inc;
                inc.type = EventType::Incident;
                inc.rider = static_cast<std::int64_t>(rider.id);
                inc.order = static_cast<std::int64_t>(order.id);
                inc.note = resp.reason;
                emit(std::move(inc));
            }
            order_transition(order, OrderState::Pending); // back to the pool
            if (!rider.carrying()) {
                // Rejected with empty hands: wander to a new waiting spot.
                rider.phase = RiderPhase::Wandering;
                rider.wander_target = wander_target_near(rider.position);
            }
        }
    }

    GridPos wander_target_near(const GridPos& from) {
        const int r = cfg_.wander_radius;
        GridPos target;
        target.x = std::clamp(from.x + movement_rng_.uniform_int(-r, r), 0,
                              cfg_.map_width - 1);
        target.y = std::clamp(from.y + movement_rng_.uniform_int(-r, r), 0,
                              cfg_.map_height - 1);
        return target;
    }

    std::optional<GridPos> current_target(const RiderAgent& rider) const {
        switch (rider.phase) {
            case RiderPhase::ToWork: return rider.workplace;
            case RiderPhase::Wandering:
                return rider.wander_target ? rider.wander_target : std::nullopt;
            case RiderPhase::PickingUp:
                return orders_[rider.held.front()].maker;
            case RiderPhase::Delivering:
                return orders_[rider.held.front()].booker;
            case RiderPhase::ReturningHome: return rider.birth_point;
            case RiderPhase::Waiting:
            case RiderPhase::Resting: return std::nullopt;
        }
        return std::nullopt;
    }

    // Arrival side effects; called only when the rider stands on its
    // current target. Returns false when the rider has nothing further to
    // do this tick.
    bool handle_arrival(RiderAgent& rider) {
        switch (rider.phase) {
            case RiderPhase::ToWork:
            case RiderPhase::Wandering:
                rider.phase = RiderPhase::Waiting;
                rider.wander_target.reset();
                return false;
            case RiderPhase::PickingUp: {
                Order& order = orders_[rider.held.front()];
                order_transition(order, OrderState::PickedUp);
                Event e;
                e.type = EventType::OrderPickedUp;
                e.order = static_cast<std::int64_t>(order.id);
                e.rider = static_cast<std::int64_t>(rider.id);
                emit(std::move(e));
                rider.phase = RiderPhase::Delivering;
                return true;
            }
            case RiderPhase::Delivering: {
                Order& order = orders_[rider.held.front()];
                order_transition(order, OrderState::Delivered);
                rider.income += order.value;
                rider.tick_income_delta += order.value;
                rider.held.erase(rider.held.begin());
                Event e;
                e.type = EventType::OrderDelivered;
                e.order = static_cast<std::int64_t>(order.id);
                e.rider = static_cast<std::int64_t>(rider.id);
                e.value = order.value;
                emit(std::move(e));
                rider.phase = rider.carrying() ? RiderPhase::PickingUp
                                               : RiderPhase::Waiting;
                return rider.carrying();
            }
            case RiderPhase::ReturningHome: {
                rider.phase = RiderPhase::Resting;
                Event e;
                e.type = EventType::RiderRest;
                e.rider = static_cast<std::int64_t>(rider.id);
                e.note = "begin";
                emit(std::move(e));
                return false;
            }
            case RiderPhase::Waiting:
            case RiderPhase::Resting: return false;
        }
        return false;
    }

    void move_riders() {
        for (auto& rider : riders_) {
            // A rider that accepted while waiting starts its pickup run now.
            if ((rider.phase == RiderPhase::Waiting ||
                 rider.phase == RiderPhase::Wandering) &&
                rider.carrying()) {
                rider.phase = RiderPhase::PickingUp;
            }

            update_speed(rider, cfg_);
            const double ratio = rider.speed / cfg_.initial_speed;
            const double budget =
                rider.move_credit + cfg_.move_units_per_step * ratio;
            int cells_avail = static_cast<int>(budget);
            int moved_total = 0;

            for (;;) {
                const auto target = current_target(rider);
                if (!target) {
                    rider.move_credit = 0.0;
                    break;
                }
                if (rider.position == *target) {
                    if (!handle_arrival(rider)) {
                        // No further target this tick (Waiting/Resting).
                        continue;
                    }
                    continue;
                }
                if (cells_avail == 0) {
                    rider.move_credit = budget - static_cast<int>(budget);
                    break;
                }
                const int moved =
                    advance_toward(rider.position, *target, cells_avail);
                cells_avail -= moved;
                moved_total += moved;
            }

            if (moved_total > 0) {
                const double before = rider.stamina;
                const double cost =
                    cfg_.stamina_per_cell * moved_total *
                    (1.0 + cfg_.stamina_speed_factor * ratio);
                rider.stamina = before - cost < 0.0 ? 0.0 : before - cost;
                rider.tick_stamina_delta += rider.stamina - before;
            }

            if (moved_total > cfg_.move_units_per_step) {
                throw InvariantViolation(
                    "rider " + std::to_string(rider.id) + " moved " +
                    std::to_string(moved_total) + " cells in one tick");
            }

            Event e;
            e.type = EventType::RiderMoved;
            e.rider = static_cast<std::int64_t>(rider.id);
            e.pos = rider.position;
            e.cells = moved_total;
            emit(std::move(e));
        }
    }

    void rest_logic(int sod) {
        for (auto& rider : riders_) {
            if (rider.phase == RiderPhase::Resting) {
                rider.stamina =
                    std::min(100.0, rider.stamina + cfg_.rest_regen_per_step);
                continue;
            }
            if (sod >= cfg_.rest_start_step && !rider.carrying() &&
                (rider.phase == RiderPhase::ToWork ||
                 rider.phase == RiderPhase::Waiting ||
                 rider.phase == RiderPhase::Wandering)) {
                rider.phase = RiderPhase::ReturningHome;
                rider.wander_target.reset();
            }
        }
    }

    void apply_emotions() {
        for (auto& rider : riders_) {
            if (cfg_.framework_variant != FrameworkVariant::Traditional) {
                EmotionStimulus stim;
                stim.delta_income = rider.tick_income_delta;
                stim.delta_stamina = rider.tick_stamina_delta;
                stim.rank = rider.rank;
                stim.n_riders = cfg_.n_riders;
                rider.pad = apply_stimulus(rider.pad, stim, cfg_);
                rider.emotion = classify_emotion(rider.pad);
            }
            rider.tick_income_delta = 0.0;
            rider.tick_stamina_delta = 0.0;
            Event e;
            e.type = EventType::RiderEmotion;
            e.rider = static_cast<std::int64_t>(rider.id);
            e.emotion = rider.emotion;
            e.pad = rider.pad;
            emit(std::move(e));
        }
    }

    void check_invariants() const {
        for (const auto& rider : riders_) {
            if (static_cast<int>(rider.held.size()) > cfg_.max_held_orders) {
                throw InvariantViolation("rider " + std::to_string(rider.id) +
                                         " holds " +
                                         std::to_string(rider.held.size()) +
                                         " orders");
            }
            if (rider.stamina < 0.0 || rider.stamina > 100.0) {
                throw InvariantViolation("rider " + std::to_string(rider.id) +
                                         " stamina " + fmt_double(rider.stamina));
            }
            if (!in_bounds(rider.position, cfg_.map_width, cfg_.map_height)) {
                throw InvariantViolation("rider " + std::to_string(rider.id) +
                                         " out of bounds");
            }
            if (rider.emotion != classify_emotion(rider.pad)) {
                throw InvariantViolation("rider " + std::to_string(rider.id) +
                                         " emotion out of sync with PAD");
            }
        }
        if (platform_.leaderboard.size() != riders_.size()) {
            throw InvariantViolation("leaderboard is not a permutation");
        }
    }

    SimConfig cfg_;
    DecisionBackend* backend_;
    WorldHooks hooks_;
    Rng orders_rng_;
    Rng movement_rng_;
    int step_ = 0;
    std::vector<RiderAgent> riders_;
    std::vector<Order> orders_;
    Platform platform_;
    std::vector<MemoryStore> memories_;
    std::vector<Event> events_;
    std::vector<EventSink*> sinks_;
};

} // namespace o2o
