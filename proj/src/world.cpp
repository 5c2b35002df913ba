#include "neatbird/world.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace neatbird {

const char* to_string(CollisionKind kind) {
    switch (kind) {
        case CollisionKind::None: return "None";
        case CollisionKind::PipeHit: return "PipeHit";
        case CollisionKind::RoofHit: return "RoofHit";
        case CollisionKind::GroundHit: return "GroundHit";
        case CollisionKind::ScoreCapReached: return "ScoreCapReached";
    }
    return "?";
}

void WorldConfig::validate() const {
    auto fail = [](const std::string& field, const std::string& why) {
        throw std::invalid_argument("WorldConfig." + field + ": " + why);
    };
    if (pipe_gap <= 0.0) fail("pipe_gap", "must be positive");
    if (pipe_gap > screen_height) fail("pipe_gap", "exceeds screen_height");
    if (gap_center_min < pipe_gap / 2.0)
        fail("gap_center_min", "gap would cross the roof");
    if (gap_center_max > screen_height - pipe_gap / 2.0)
        fail("gap_center_max", "gap would cross the ground");
    if (gap_center_min > gap_center_max)
        fail("gap_center_min", "exceeds gap_center_max");
    if (scroll_velocity <= 0.0) fail("scroll_velocity", "must be positive");
    if (pipe_spacing <= pipe_width) fail("pipe_spacing", "must exceed pipe_width");
    if (pipe_width <= 0.0) fail("pipe_width", "must be positive");
    if (screen_height <= 0.0) fail("screen_height", "must be positive");
    if (screen_width <= 0.0) fail("screen_width", "must be positive");
    if (bird_x < 0.0 || bird_x > screen_width) fail("bird_x", "outside the screen");
    if (bird_radius <= 0.0) fail("bird_radius", "must be positive");
    if (max_score_cap < 1) fail("max_score_cap", "must be at least 1");
}

WorldConfig parse_world_config(const std::string& text, const std::string& origin) {
    WorldConfig cfg;
    std::map<std::string, double*> fields = {
        {"gravity_accel", &cfg.gravity_accel},
        {"jump_velocity", &cfg.jump_velocity},
        {"scroll_velocity", &cfg.scroll_velocity},
        {"pipe_gap", &cfg.pipe_gap},
        {"pipe_spacing", &cfg.pipe_spacing},
        {"screen_height", &cfg.screen_height},
        {"screen_width", &cfg.screen_width},
        {"bird_x", &cfg.bird_x},
        {"bird_radius", &cfg.bird_radius},
        {"pipe_width", &cfg.pipe_width},
        {"gap_center_min", &cfg.gap_center_min},
        {"gap_center_max", &cfg.gap_center_max},
    };
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto is_blank = [](const std::string& s) {
            for (char c : s)
                if (!std::isspace(static_cast<unsigned char>(c))) return false;
            return true;
        };
        if (is_blank(line)) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                        ": expected `name = value`");
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r");
            size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        double parsed;
        try {
            size_t used = 0;
            parsed = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
        } catch (const std::exception&) {
            throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                        ": bad number `" + value + "` for " + key);
        }
        if (key == "max_score_cap") {
            cfg.max_score_cap = static_cast<std::int64_t>(parsed);
            continue;
        }
        auto it = fields.find(key);
        if (it == fields.end())
            throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                        ": unknown key `" + key + "`");
        *it->second = parsed;
    }
    cfg.validate();
    return cfg;
}

WorldConfig load_world_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read world config: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_world_config(buf.str(), path);
}

WorldState::WorldState(const WorldConfig& config, std::uint64_t seed)
    : config_(config), pipe_rng_(seed) {
    config_.validate();
    bird_.y = config_.screen_height / 2.0;
    bird_.velocity_y = 0.0;
    pipes_.push_back(make_pipe(config_.screen_width));
    spawn_pipes();
}

PipePair WorldState::make_pipe(double x) {
    // Whole-pixel gap centers: with dyadic physics constants every
    // observation distance is then exact in double arithmetic.
    double center = std::floor(
        pipe_rng_.uniform(config_.gap_center_min, config_.gap_center_max + 1.0));
    center = std::clamp(center, config_.gap_center_min, config_.gap_center_max);
    PipePair p;
    p.x = x;
    p.gap_top_y = center - config_.pipe_gap / 2.0;
    p.gap_bottom_y = p.gap_top_y + config_.pipe_gap;
    return p;
}

void WorldState::spawn_pipes() {
    while (pipes_.back().x < config_.screen_width)
        pipes_.push_back(make_pipe(pipes_.back().x + config_.pipe_spacing));
}

CollisionKind WorldState::step(Action action) {
    if (terminal())
        throw std::logic_error("step on a terminal world");

    if (action == Action::Flap) bird_.velocity_y = config_.jump_velocity;

    // Position first with the half-acceleration term, velocity after:
    // cumulative flap-free displacement over t frames is then exactly
    // v0*t + a*t^2/2 at every integer frame.
    bird_.y += bird_.velocity_y + 0.5 * config_.gravity_accel;
    bird_.velocity_y += config_.gravity_accel;

    for (auto& p : pipes_) p.x -= config_.scroll_velocity;
    while (pipes_.front().x + config_.pipe_width < 0.0 && pipes_.front().passed)
        pipes_.pop_front();
    spawn_pipes();

    for (auto& p : pipes_) {
        if (!p.passed && p.x + config_.pipe_width < config_.bird_x) {
            p.passed = true;
            ++score_;
        }
    }

    ++tick_;

    if (bird_.y < 0.0) {
        terminal_ = CollisionKind::RoofHit;
    } else if (bird_.y > config_.screen_height) {
        terminal_ = CollisionKind::GroundHit;
    } else {
        double r = config_.bird_radius;
        for (const auto& p : pipes_) {
            bool overlap_x = config_.bird_x + r >= p.x &&
                             config_.bird_x - r <= p.x + config_.pipe_width;
            if (!overlap_x) continue;
            if (bird_.y - r < p.gap_top_y || bird_.y + r > p.gap_bottom_y) {
                terminal_ = CollisionKind::PipeHit;
                break;
            }
        }
    }
    if (terminal_ == CollisionKind::None && score_ >= config_.max_score_cap)
        terminal_ = CollisionKind::ScoreCapReached;
    return terminal_;
}

Observation WorldState::observe() const {
    for (const auto& p : pipes_) {
        if (!p.passed && p.x + config_.pipe_width >= config_.bird_x) {
            return Observation{bird_.y, bird_.y - p.gap_top_y, p.gap_bottom_y - bird_.y};
        }
    }
    // Unreachable: spawn_pipes keeps an unpassed pipe ahead of the bird.
    throw std::logic_error("no unpassed pipe ahead of the bird");
}

EpisodeResult run_episode(const WorldConfig& config, std::uint64_t seed,
                          const Policy& policy) {
    WorldState world(config, seed);
    EpisodeResult result;
    while (!world.terminal()) {
        Action action = policy(world.observe());
        result.end = world.step(action);
        ++result.frames;
    }
    result.score = world.score();
    return result;
}

}  // namespace neatbird
