#pragma once

#include <memory>
#include <optional>

#include "ccnsim/rng.hpp"
#include "ccnsim/time.hpp"

namespace ccnsim {

struct Position {
  double x = 0;
  double y = 0;
};

inline double distance_sq(Position a, Position b) {
  double dx = a.x - b.x;
  double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

/// Rectangular arena [0, width] x [0, height], meters.
struct Arena {
  double width = 1000;
  double height = 1000;
};

struct WaypointParams {
  double v_min = 1;      // m/s, > 0
  double v_max = 2;      // m/s, >= v_min
  double pause_min = 0;  // s
  double pause_max = 60; // s
};

/// Node position over time. Positions are computed in closed form from the
/// current leg; state advances only at leg transitions.
class MobilityModel {
public:
  virtual ~MobilityModel() = default;

  virtual Position position_at(SimTime t) const = 0;

  /// Time at which advance() must next be called, or nullopt if static.
  virtual std::optional<SimTime> next_transition() const = 0;
  virtual void advance(SimTime now, RngStream& rng) = 0;
};

class StaticMobility final : public MobilityModel {
public:
  explicit StaticMobility(Position p) : position_(p) {}

  Position position_at(SimTime) const override { return position_; }
  std::optional<SimTime> next_transition() const override { return std::nullopt; }
  void advance(SimTime, RngStream&) override {}

private:
  Position position_;
};

/// Random waypoint: pick a uniform target in the arena, move to it at a
/// uniform speed in [v_min, v_max], pause for a uniform time in
/// [pause_min, pause_max], repeat. Per-leg draw order: target x, target y,
/// speed, pause.
class RandomWaypointMobility final : public MobilityModel {
public:
  RandomWaypointMobility(Arena arena, WaypointParams params, Position initial,
                         SimTime start, RngStream& rng);

  Position position_at(SimTime t) const override;
  std::optional<SimTime> next_transition() const override { return pause_until_; }
  void advance(SimTime now, RngStream& rng) override;

  Position current_target() const { return target_; }
  double current_speed() const { return speed_; }

private:
  void start_leg(SimTime now, RngStream& rng);

  Arena arena_;
  WaypointParams params_;
  SimTime leg_start_;
  Position start_;
  Position target_;
  double speed_ = 1;
  double travel_seconds_ = 0;
  SimTime pause_until_;
};

/// Uniform position inside the arena (used for unconfigured initial placement).
Position draw_position(const Arena& arena, RngStream& rng);

}  // namespace ccnsim
