#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>

#include "neatbird/rng.hpp"

namespace neatbird {

enum class Action { NoFlap, Flap };

enum class CollisionKind { None, PipeHit, RoofHit, GroundHit, ScoreCapReached };

const char* to_string(CollisionKind kind);

// Screen coordinates, y grows downward; the roof is y = 0.
struct WorldConfig {
    double gravity_accel = 1.25;   // px/frame^2, dyadic so positions stay exact
    double jump_velocity = -10.5;  // px/frame, negative is up
    double scroll_velocity = 5.0;  // px/frame, pipes and floor move left
    double pipe_gap = 320.0;
    double pipe_spacing = 300.0;
    double screen_height = 800.0;
    double screen_width = 576.0;
    double bird_x = 100.0;
    double bird_radius = 12.0;
    double pipe_width = 80.0;
    double gap_center_min = 160.0;
    double gap_center_max = 640.0;
    std::int64_t max_score_cap = 10000;

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

// Parses a flat `name = number` file, `#` starts a comment. Unknown keys
// are errors.
WorldConfig load_world_config(const std::string& path);
WorldConfig parse_world_config(const std::string& text, const std::string& origin);

struct PipePair {
    double x = 0.0;  // left edge
    double gap_top_y = 0.0;
    double gap_bottom_y = 0.0;
    bool passed = false;
};

struct BirdState {
    double y = 0.0;
    double velocity_y = 0.0;
};

struct Observation {
    double bird_y = 0.0;
    double dist_to_top = 0.0;     // bird_y - gap_top_y of nearest unpassed pipe
    double dist_to_bottom = 0.0;  // gap_bottom_y - bird_y
};

class WorldState {
public:
    WorldState(const WorldConfig& config, std::uint64_t seed);

    const WorldConfig& config() const { return config_; }
    const BirdState& bird() const { return bird_; }
    const std::deque<PipePair>& pipes() const { return pipes_; }
    std::int64_t tick() const { return tick_; }
    std::int64_t score() const { return score_; }
    bool terminal() const { return terminal_ != CollisionKind::None; }
    CollisionKind terminal_kind() const { return terminal_; }

    // Advances one frame. Throws std::logic_error on a terminal world.
    CollisionKind step(Action action);

    Observation observe() const;

private:
    void spawn_pipes();
    PipePair make_pipe(double x);

    WorldConfig config_;
    BirdState bird_;
    std::deque<PipePair> pipes_;
    std::int64_t tick_ = 0;
    std::int64_t score_ = 0;
    Rng pipe_rng_;
    CollisionKind terminal_ = CollisionKind::None;
};

struct EpisodeResult {
    std::int64_t score = 0;
    std::int64_t frames = 0;
    CollisionKind end = CollisionKind::None;
};

using Policy = std::function<Action(const Observation&)>;

EpisodeResult run_episode(const WorldConfig& config, std::uint64_t seed,
                          const Policy& policy);

}  // namespace neatbird
