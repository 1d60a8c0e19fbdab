#include "ccnsim/mobility.hpp"

#include <algorithm>
#include <cmath>

namespace ccnsim {

Position draw_position(const Arena& arena, RngStream& rng) {
  double x = rng.uniform(0, arena.width);
  double y = rng.uniform(0, arena.height);
  return Position{x, y};
}

RandomWaypointMobility::RandomWaypointMobility(Arena arena, WaypointParams params,
                                               Position initial, SimTime start,
                                               RngStream& rng)
    : arena_(arena), params_(params), start_(initial), target_(initial) {
  leg_start_ = start;
  start_leg(start, rng);
}

void RandomWaypointMobility::start_leg(SimTime now, RngStream& rng) {
  start_ = target_;
  leg_start_ = now;
  target_ = draw_position(arena_, rng);
  speed_ = rng.uniform(params_.v_min, params_.v_max);
  double pause = rng.uniform(params_.pause_min, params_.pause_max);
  travel_seconds_ = std::sqrt(distance_sq(start_, target_)) / speed_;
  pause_until_ = now + duration_from_seconds(travel_seconds_ + pause);
}

void RandomWaypointMobility::advance(SimTime now, RngStream& rng) {
  start_leg(now, rng);
}

Position RandomWaypointMobility::position_at(SimTime t) const {
  double dt = duration_seconds(t - leg_start_);
  if (dt <= 0 || travel_seconds_ <= 0) {
    return dt >= travel_seconds_ ? target_ : start_;
  }
  if (dt >= travel_seconds_) {
    return target_;  // paused at the waypoint
  }
  double frac = dt / travel_seconds_;
  return Position{start_.x + (target_.x - start_.x) * frac,
                  start_.y + (target_.y - start_.y) * frac};
}

}  // namespace ccnsim
